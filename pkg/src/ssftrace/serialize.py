"""File formats: matrix JSON, coefficient-table JSON, CSV reports.

Matrix JSON: {"rows": int, "cols": int, "data": [[re, im], ...]} in
row-major order; readers reject length mismatches.  Shift-function
JSON: {"n_max": int, "coeffs": [[n, re, im], ...]}.  Series JSON:
{"coeffs": [[k, re, im], ...]} (negative k allowed for two-sided
tables).
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .calculus import CoefficientSeries, LaurentSeries
from .ssf import SpectralShift


def matrix_to_dict(M) -> dict:
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim {A.ndim}")
    data = [[float(v.real), float(v.imag)] for v in A.ravel()]
    return {"rows": A.shape[0], "cols": A.shape[1], "data": data}


def matrix_from_dict(d: dict) -> np.ndarray:
    rows, cols = int(d["rows"]), int(d["cols"])
    data = d["data"]
    if len(data) != rows * cols:
        raise ValueError(
            f"data length {len(data)} does not match {rows}x{cols}")
    flat = np.array([complex(re, im) for re, im in data])
    return flat.reshape(rows, cols)


def save_matrix(path, M):
    Path(path).write_text(json.dumps(matrix_to_dict(M), sort_keys=True) + "\n")


def load_matrix(path) -> np.ndarray:
    return matrix_from_dict(json.loads(Path(path).read_text()))


def ssf_to_dict(s: SpectralShift) -> dict:
    coeffs = [[n, float(s.coeff(n).real), float(s.coeff(n).imag)]
              for n in range(-s.n_max, s.n_max + 1)]
    return {"n_max": s.n_max, "coeffs": coeffs}


def ssf_from_dict(d: dict) -> SpectralShift:
    n_max = int(d["n_max"])
    coeffs = np.zeros(2 * n_max + 1, dtype=complex)
    for n, re, im in d["coeffs"]:
        n = int(n)
        if abs(n) > n_max:
            raise ValueError(f"coefficient index {n} outside [-{n_max}, {n_max}]")
        coeffs[n + n_max] = complex(re, im)
    return SpectralShift(n_max=n_max, coeffs=coeffs)


def series_to_dict(series) -> dict:
    if isinstance(series, CoefficientSeries):
        pairs = [(k, series.coeffs[k]) for k in range(len(series.coeffs))]
    elif isinstance(series, LaurentSeries):
        pairs = [(n, series.coeff(n)) for n in range(-series.order, series.order + 1)]
    else:
        raise TypeError(f"unsupported series type {type(series)!r}")
    return {"coeffs": [[k, float(v.real), float(v.imag)] for k, v in pairs]}


def series_from_dict(d: dict, two_sided: bool):
    terms = {int(k): complex(re, im) for k, re, im in d["coeffs"]}
    if two_sided:
        return LaurentSeries.from_terms(terms)
    return CoefficientSeries.from_terms(terms)


def write_ssf_grid_csv(path, t_grid, values):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "xi_r"])
        for t, v in zip(t_grid, values):
            writer.writerow([repr(float(t)), repr(float(v))])


def write_disc_report_csv(path, report):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["R", "quad_re", "quad_im", "closed_re", "closed_im",
                         "lhs_re", "lhs_im"])
        lhs = report.lhs_trace
        for R, quad, closed in report.per_radius:
            writer.writerow([repr(float(R)),
                             repr(quad.real), repr(quad.imag),
                             repr(closed.real), repr(closed.imag),
                             repr(lhs.real), repr(lhs.imag)])
