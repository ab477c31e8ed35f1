"""Spectral shift function reconstruction from moment traces.

The moments m_n = Tr(T^n - T0^n) determine the Fourier coefficients of
the shift function through xi_hat(-n) = m_n / (2*pi*i*n); the additive
constant is fixed by xi_hat(0) = 0.  Pointwise values are Abel means
(never raw partial sums), which coincide with the Poisson harmonic
extension evaluated on the circle of radius r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonRealResultError
from .linops import ContractionPair

REAL_TOL = 1e-10


@dataclass(frozen=True)
class MomentSequence:
    n_max: int
    moments: np.ndarray  # m_1 .. m_n_max

    def moment(self, n: int) -> complex:
        if not 1 <= n <= self.n_max:
            raise IndexError(f"moment index {n} outside 1..{self.n_max}")
        return complex(self.moments[n - 1])


@dataclass(frozen=True)
class SpectralShift:
    """Two-sided Fourier coefficient table of a real circle function."""

    n_max: int
    coeffs: np.ndarray  # index n + n_max, n in [-n_max, n_max]

    @property
    def order(self) -> int:
        return self.n_max

    def coeff(self, n: int) -> complex:
        if abs(n) > self.n_max:
            return 0.0 + 0.0j
        return complex(self.coeffs[n + self.n_max])

    def with_constant(self, c: complex) -> "SpectralShift":
        """Same table with the constant (index-0) coefficient replaced."""
        coeffs = self.coeffs.copy()
        coeffs[self.n_max] = c
        return SpectralShift(n_max=self.n_max, coeffs=coeffs)


def _trace(M: np.ndarray) -> complex:
    d = np.diagonal(M)
    return complex(math.fsum(d.real), math.fsum(d.imag))


def moments(pair: ContractionPair, n_max: int) -> MomentSequence:
    """Moment traces m_n = Tr(T^n) - Tr(T0^n), n = 1..n_max, with compensated sums."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    T, T0 = pair.T, pair.T0
    PT = np.eye(pair.dim, dtype=complex)
    P0 = np.eye(pair.dim, dtype=complex)
    vals = np.empty(n_max, dtype=complex)
    for n in range(1, n_max + 1):
        PT = PT @ T
        P0 = P0 @ T0
        dT = np.diagonal(PT)
        d0 = np.diagonal(P0)
        vals[n - 1] = complex(
            math.fsum(np.concatenate([dT.real, -d0.real])),
            math.fsum(np.concatenate([dT.imag, -d0.imag])),
        )
    return MomentSequence(n_max=n_max, moments=vals)


def ssf_from_moments(m: MomentSequence) -> SpectralShift:
    """Coefficient table with xi_hat(-n) = m_n / (2*pi*i*n) and conjugate symmetry."""
    n_max = m.n_max
    coeffs = np.zeros(2 * n_max + 1, dtype=complex)
    for n in range(1, n_max + 1):
        c = m.moments[n - 1] / (2j * np.pi * n)
        coeffs[n_max - n] = c
        coeffs[n_max + n] = np.conj(c)
    return SpectralShift(n_max=n_max, coeffs=coeffs)


def moments_from_ssf(s: SpectralShift) -> MomentSequence:
    """Inverse of ssf_from_moments: m_n = 2*pi*i*n*xi_hat(-n)."""
    vals = np.array([2j * np.pi * n * s.coeff(-n) for n in range(1, s.n_max + 1)])
    return MomentSequence(n_max=s.n_max, moments=vals)


def evaluate_ssf_grid(s: SpectralShift, t_grid, abel_radius: float,
                      real_tol: float = REAL_TOL) -> np.ndarray:
    """Abel-summed values sum_n xi_hat(n) r^|n| e^{int} on a grid of angles."""
    if not 0.0 < abel_radius < 1.0:
        raise ValueError(f"abel_radius must lie in (0, 1), got {abel_radius}")
    t = np.atleast_1d(np.asarray(t_grid, dtype=float))
    n = np.arange(-s.n_max, s.n_max + 1)
    damped = s.coeffs * abel_radius ** np.abs(n)
    vals = np.exp(1j * np.outer(t, n)) @ damped
    resid = float(np.abs(vals.imag).max(initial=0.0))
    if resid > real_tol:
        raise NonRealResultError(
            f"imaginary residual {resid} exceeds {real_tol}; coefficient "
            "table has lost conjugate symmetry")
    return vals.real


def evaluate_ssf(s: SpectralShift, t: float, abel_radius: float,
                 real_tol: float = REAL_TOL) -> float:
    """Abel-summed value of the shift function at a single angle."""
    return float(evaluate_ssf_grid(s, [t], abel_radius, real_tol)[0])


@dataclass(frozen=True)
class AdjointShiftReport:
    n_max: int
    max_deviation: float
    xi: SpectralShift
    chi: SpectralShift


def adjoint_ssf_check(pair: ContractionPair, n_max: int) -> AdjointShiftReport:
    """Shift function chi of the adjoint pair against chi_hat(n) = -xi_hat(-n)."""
    xi = ssf_from_moments(moments(pair, n_max))
    chi = ssf_from_moments(moments(pair.adjoint(), n_max))
    dev = 0.0
    for n in range(-n_max, n_max + 1):
        if n == 0:
            continue
        dev = max(dev, abs(chi.coeff(n) + xi.coeff(-n)))
    return AdjointShiftReport(n_max=n_max, max_deviation=dev, xi=xi, chi=chi)
