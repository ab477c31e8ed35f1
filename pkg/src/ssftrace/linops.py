"""Dense complex matrix kernel.

Contraction validation, positive-semidefinite square roots, defect
operators, trace norms and reproducible random pair generation.  All
functions are pure; matrices are plain complex numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidDeltaError,
    NotAContractionError,
    NotHermitianError,
    NotPSDError,
    NotSquareError,
    RequiresStrictContractionError,
)

# Default tolerances; overridable per call.
DELTA_MIN = 1e-6
NORM_TOL = 1e-10
PSD_TOL = 1e-10


@dataclass(frozen=True)
class ContractionCertificate:
    operator_norm: float
    strictness_margin_delta: float
    is_strict: bool


@dataclass(frozen=True)
class ContractionPair:
    """A pair (T, T0) of same-size contractions with T0 strict."""

    T: np.ndarray
    T0: np.ndarray
    cert_T: ContractionCertificate
    cert_T0: ContractionCertificate

    @property
    def dim(self) -> int:
        return self.T.shape[0]

    def adjoint(self) -> "ContractionPair":
        """The pair (T*, T0*); valid because operator norms are adjoint-invariant."""
        return make_pair(self.T.conj().T, self.T0.conj().T)


def as_operator(M) -> np.ndarray:
    """Coerce to a square complex matrix with finite entries."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSquareError(f"expected a square matrix, got shape {A.shape}")
    if not np.isfinite(A).all():
        raise ValueError("matrix has non-finite entries")
    return A


def operator_norm(M) -> float:
    return float(np.linalg.norm(as_operator(M), 2))


def validate_contraction(M, delta_min: float = DELTA_MIN,
                         tol_norm: float = NORM_TOL) -> ContractionCertificate:
    """Certify that M is a contraction and measure its strictness margin."""
    A = as_operator(M)
    s = float(np.linalg.norm(A, 2))
    if s > 1.0 + tol_norm:
        raise NotAContractionError(f"operator norm {s} exceeds 1 + {tol_norm}")
    delta = 1.0 - s
    return ContractionCertificate(operator_norm=s,
                                  strictness_margin_delta=delta,
                                  is_strict=delta >= delta_min)


def make_pair(T, T0, delta_min: float = DELTA_MIN,
              tol_norm: float = NORM_TOL) -> ContractionPair:
    """Validate and assemble a ContractionPair (T0 must be strict).

    Norms in (1, 1 + tol_norm] are renormalized to exactly 1; such
    overshoots are floating-point artifacts, not genuine expansions.
    """
    T = as_operator(T)
    T0 = as_operator(T0)
    if T.shape != T0.shape:
        raise NotSquareError(f"dimension mismatch: {T.shape} vs {T0.shape}")

    def _clip(A):
        s = float(np.linalg.norm(A, 2))
        if 1.0 < s <= 1.0 + tol_norm:
            return A / s
        return A

    cert_T = validate_contraction(T, delta_min, tol_norm)
    cert_T0 = validate_contraction(T0, delta_min, tol_norm)
    T = _clip(T)
    T0 = _clip(T0)
    if not cert_T0.is_strict:
        raise RequiresStrictContractionError(
            f"T0 has norm {cert_T0.operator_norm}; strictness margin "
            f"{cert_T0.strictness_margin_delta} below {delta_min}")
    return ContractionPair(T=T, T0=T0, cert_T=cert_T, cert_T0=cert_T0)


def psd_sqrt(P, tol_psd: float = PSD_TOL) -> np.ndarray:
    """Hermitian square root of a PSD matrix via eigendecomposition.

    Eigenvalues in [-tol_psd, 0) are clamped to zero.
    """
    P = as_operator(P)
    pnorm = float(np.linalg.norm(P, "fro"))
    herm_err = float(np.linalg.norm(P - P.conj().T, "fro"))
    if herm_err > 1e-12 * max(pnorm, 1.0):
        raise NotHermitianError(f"Hermitian residual {herm_err} for norm {pnorm}")
    H = (P + P.conj().T) / 2.0
    w, V = np.linalg.eigh(H)
    if w.min(initial=0.0) < -tol_psd:
        raise NotPSDError(f"eigenvalue {w.min()} below -{tol_psd}")
    w = np.clip(w, 0.0, None)
    Q = (V * np.sqrt(w)) @ V.conj().T
    return (Q + Q.conj().T) / 2.0


def defect(M, side: str) -> np.ndarray:
    """Defect operator: (I - M*M)^(1/2) for side='left', (I - MM*)^(1/2) for 'right'."""
    A = as_operator(M)
    validate_contraction(A)
    eye = np.eye(A.shape[0], dtype=complex)
    if side == "left":
        G = eye - A.conj().T @ A
    elif side == "right":
        G = eye - A @ A.conj().T
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    # norm may overshoot 1 by up to NORM_TOL, pushing eigenvalues slightly
    # below zero; allow that overshoot before clamping
    return psd_sqrt(G, tol_psd=1e-9)


def trace_norm(M) -> float:
    """Sum of singular values (Schatten-1 norm)."""
    A = np.asarray(M, dtype=complex)
    if not np.isfinite(A).all():
        raise ValueError("matrix has non-finite entries")
    return float(np.linalg.svd(A, compute_uv=False).sum())


def ginibre(rng: np.random.Generator, rows: int, cols: int | None = None) -> np.ndarray:
    """Complex Ginibre draw, entries ~ CN(0, 1/rows)."""
    cols = rows if cols is None else cols
    G = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    return G / np.sqrt(2.0 * rows)


def random_contraction(dim: int, target_norm: float,
                       rng: np.random.Generator) -> np.ndarray:
    """Ginibre matrix rescaled to the given operator norm."""
    G = ginibre(rng, dim)
    return G * (target_norm / float(np.linalg.norm(G, 2)))


def random_positive_contraction(dim: int, eig_min: float, eig_max: float,
                                rng: np.random.Generator) -> np.ndarray:
    """Random Hermitian matrix with eigenvalues uniform in [eig_min, eig_max]."""
    Q, _ = np.linalg.qr(ginibre(rng, dim))
    w = rng.uniform(eig_min, eig_max, dim)
    A = (Q * w) @ Q.conj().T
    return (A + A.conj().T) / 2.0


def random_pair(dim: int, delta: float, perturbation_trace_norm: float,
                seed: int, delta_min: float = DELTA_MIN) -> ContractionPair:
    """Deterministic random pair: strict T0 plus a low-rank trace-norm perturbation."""
    if not 0.0 < delta < 1.0:
        raise InvalidDeltaError(f"delta must lie in (0, 1), got {delta}")
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if perturbation_trace_norm <= 0.0:
        raise ValueError("perturbation_trace_norm must be positive")
    rng = np.random.default_rng(seed)
    T0 = random_contraction(dim, 1.0 - delta, rng)
    rank = min(dim, 2)
    u = ginibre(rng, dim, rank)
    v = ginibre(rng, dim, rank)
    E = u @ v.conj().T
    E *= perturbation_trace_norm / trace_norm(E)
    T = T0 + E
    s = float(np.linalg.norm(T, 2))
    if s > 1.0:
        T = T / s
    return make_pair(T, T0, delta_min=delta_min)
