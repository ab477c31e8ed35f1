"""Harmonic extension to the unit disc and the Jacobian trace pairing.

A two-sided coefficient table extends into the disc as
f~(z) = c_0 + sum c_(-n) zbar^n + sum c_n z^n.  The Jacobian pairing of
two such extensions integrates over discs of radius R < 1 (measure
convention dz ^ dzbar = -2i dx dy) and converges, as R -> 1, to
2*pi*i * sum n psi_hat(n) xi_hat(-n) -- the same number as the trace of
the two-sided functional-calculus difference.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from .calculus import LaurentSeries, laurent_difference_trace
from .errors import InvalidRadiusError, OutsideOpenDiscError, RequiresStrictContractionError
from .linops import ContractionPair, DELTA_MIN
from .ssf import SpectralShift, moments, ssf_from_moments

BOUNDARY_GUARD = 1e-6


def _centered(table):
    """(order, centered coefficient array) for any two-sided table."""
    if isinstance(table, SpectralShift):
        return table.n_max, table.coeffs
    if isinstance(table, LaurentSeries):
        return table.order, table.coeffs
    c = np.asarray(table, dtype=complex)
    if c.ndim != 1 or len(c) % 2 != 1:
        raise ValueError("raw table must be a 1-d array of odd length")
    return (len(c) - 1) // 2, c


@dataclass(frozen=True)
class DiscQuadratureConfig:
    """Polar grid and radius schedule for the disc integrals."""

    radial_nodes: int = 64
    angular_nodes: int = 1024
    radius_schedule: tuple[float, ...] = (0.5, 0.8, 0.9, 0.99, 1.0 - 1e-3)

    def __post_init__(self):
        if self.radial_nodes < 1:
            raise ValueError("radial_nodes must be >= 1")
        m = self.angular_nodes
        if m < 4 or (m & (m - 1)) != 0:
            raise ValueError(f"angular_nodes must be a power of two >= 4, got {m}")
        rs = self.radius_schedule
        if not rs or any(b <= a for a, b in zip(rs, rs[1:])):
            raise ValueError("radius_schedule must be strictly increasing")
        if not (0.0 < rs[0] and rs[-1] < 1.0):
            raise ValueError("radius_schedule must stay inside (0, 1)")

    def check_resolves(self, order: int):
        """Angular rule must be at least 4x the table length to kill aliasing."""
        if self.angular_nodes < 4 * (2 * order + 1):
            raise ValueError(
                f"{self.angular_nodes} angular nodes cannot resolve a table "
                f"of order {order}")


@dataclass(frozen=True)
class DiscPairingReport:
    per_radius: tuple[tuple[float, complex, complex], ...]
    limit_estimate: complex
    lhs_trace: complex
    tail_bound: float

    def final_gap(self) -> float:
        _, _, closed = self.per_radius[-1]
        return abs(closed - self.lhs_trace)


@dataclass(frozen=True)
class FatouReport:
    radii: tuple[float, ...]
    sup_differences: tuple[float, ...]
    fitted_constants: tuple[float, ...]
    coefficient_bound: float  # sum |n c_n|, the Lipschitz constant in (1 - r)


def poisson_extend(table, z: complex) -> complex:
    """Harmonic extension c_0 + sum c_(-n) zbar^n + sum c_n z^n at |z| < 1."""
    order, c = _centered(table)
    z = complex(z)
    if abs(z) > 1.0 - BOUNDARY_GUARD:
        raise OutsideOpenDiscError(f"|z| = {abs(z)} is outside the guarded disc")
    pos = c[order + 1:]
    neg = c[order - 1::-1]  # index n-1 holds c_(-n)
    val = c[order]
    if order >= 1:
        val = val + z * npoly.polyval(z, pos) + np.conj(z) * npoly.polyval(np.conj(z), neg)
    return complex(val)


def kernel_expansion_check(z: complex, t_grid, n_trunc: int) -> float:
    """Max error of the truncated geometric expansion of the Poisson kernel."""
    z = complex(z)
    if abs(z) > 0.95:
        raise ValueError(f"|z| = {abs(z)} exceeds 0.95")
    t = np.asarray(t_grid, dtype=float)
    direct = (1.0 - abs(z) ** 2) / np.abs(np.exp(1j * t) - z) ** 2
    w = np.conj(z) * np.exp(1j * t)
    partial = np.ones_like(t, dtype=complex)
    wp = np.ones_like(t, dtype=complex)
    for _ in range(n_trunc):
        wp = wp * w
        partial = partial + wp
    expansion = 2.0 * partial.real - 1.0  # 1 + 2 Re sum_{n>=1} (zbar e^{it})^n
    return float(np.abs(direct - expansion).max())


def _boundary_values(table, t_grid) -> np.ndarray:
    order, c = _centered(table)
    t = np.asarray(t_grid, dtype=float)
    n = np.arange(-order, order + 1)
    return np.exp(1j * np.outer(t, n)) @ c


def fatou_check(s: SpectralShift, r_schedule, t_grid,
                strictness_margin: float,
                delta_min: float = DELTA_MIN) -> FatouReport:
    """Radial convergence of the extension toward the boundary series.

    Requires a strict-strict pair (caller passes the smaller of the two
    strictness margins): only then do the coefficients decay
    geometrically and the boundary series define a continuous function.
    """
    if strictness_margin < delta_min:
        raise RequiresStrictContractionError(
            f"strictness margin {strictness_margin} below {delta_min}; no "
            "continuous boundary representative is guaranteed")
    t = np.asarray(t_grid, dtype=float)
    boundary = _boundary_values(s, t)
    n = np.arange(-s.n_max, s.n_max + 1)
    sups = []
    cs = []
    for r in r_schedule:
        if not 0.0 < r < 1.0:
            raise ValueError(f"radii must lie in (0, 1), got {r}")
        radial = np.exp(1j * np.outer(t, n)) @ (s.coeffs * r ** np.abs(n))
        sup = float(np.abs(radial - boundary).max())
        sups.append(sup)
        cs.append(sup / (1.0 - r))
    bound = float(np.abs(n * s.coeffs).sum())
    return FatouReport(radii=tuple(float(r) for r in r_schedule),
                       sup_differences=tuple(sups),
                       fitted_constants=tuple(cs),
                       coefficient_bound=bound)


def _wirtinger(table, z, conjugate: bool):
    """d/dz (conjugate=False) or d/dzbar (True) of the extension; z may be an array."""
    order, c = _centered(table)
    if order < 1:
        return np.zeros_like(np.asarray(z, dtype=complex))
    n = np.arange(1, order + 1)
    if conjugate:
        coef = n * c[order - 1::-1]
        return npoly.polyval(np.conj(np.asarray(z, dtype=complex)), coef)
    coef = n * c[order + 1:]
    return npoly.polyval(np.asarray(z, dtype=complex), coef)


def jacobian_at(xi, psi, z: complex) -> complex:
    """J = (d xi/dz)(d psi/dzbar) - (d psi/dz)(d xi/dzbar) at a point of the disc."""
    z = complex(z)
    if abs(z) > 1.0 - BOUNDARY_GUARD:
        raise OutsideOpenDiscError(f"|z| = {abs(z)} is outside the guarded disc")
    return complex(_wirtinger(xi, z, False) * _wirtinger(psi, z, True)
                   - _wirtinger(psi, z, False) * _wirtinger(xi, z, True))


def disc_integral_quadrature(xi, psi, R: float,
                             cfg: DiscQuadratureConfig | None = None) -> complex:
    """Quadrature of the Jacobian over the disc of radius R.

    Gauss-Legendre radially, uniform trapezoid angularly; the -2i factor
    converts dz ^ dzbar to the planar measure.
    """
    if not 0.0 < R < 1.0:
        raise InvalidRadiusError(f"R must lie in (0, 1), got {R}")
    cfg = cfg or DiscQuadratureConfig()
    order = max(_centered(xi)[0], _centered(psi)[0])
    cfg.check_resolves(order)

    x, w = np.polynomial.legendre.leggauss(cfg.radial_nodes)
    r = R * (x + 1.0) / 2.0
    wr = w * R / 2.0
    t = 2.0 * np.pi * np.arange(cfg.angular_nodes) / cfg.angular_nodes
    z = r[:, None] * np.exp(1j * t)[None, :]

    J = (_wirtinger(xi, z, False) * _wirtinger(psi, z, True)
         - _wirtinger(psi, z, False) * _wirtinger(xi, z, True))
    angular = J.sum(axis=1) * (2.0 * np.pi / cfg.angular_nodes)
    return complex(-2j * np.sum(wr * r * angular))


def disc_integral_closed_form(xi, psi, R: float) -> complex:
    """2*pi*i * sum_{n != 0} n psi_hat(n) xi_hat(-n) R^(2|n|); R = 1 is the limit value."""
    if not 0.0 < R <= 1.0:
        raise InvalidRadiusError(f"R must lie in (0, 1], got {R}")
    xo, xc = _centered(xi)
    po, pc = _centered(psi)
    total = 0.0 + 0.0j
    for n in range(1, po + 1):
        for sign in (1, -1):
            m = sign * n
            x_idx = -m + xo
            if not 0 <= x_idx < len(xc):
                continue
            total += m * pc[m + po] * xc[x_idx] * R ** (2 * n)
    return complex(2j * np.pi * total)


def disc_tail_bound(xi, psi, R: float) -> float:
    """2*pi * sum |n psi_hat(n) xi_hat(-n)| (1 - R^(2|n|)): gap to the R -> 1 limit."""
    xo, xc = _centered(xi)
    po, pc = _centered(psi)
    total = 0.0
    for n in range(1, po + 1):
        for sign in (1, -1):
            m = sign * n
            x_idx = -m + xo
            if not 0 <= x_idx < len(xc):
                continue
            total += abs(n * pc[m + po] * xc[x_idx]) * (1.0 - R ** (2 * n))
    return 2.0 * np.pi * total


def verify_disc_trace_formula(pair: ContractionPair, psi: LaurentSeries,
                              cfg: DiscQuadratureConfig | None = None,
                              n_max: int = 64) -> DiscPairingReport:
    """Both routes of the disc trace formula on one pair and one table."""
    cfg = cfg or DiscQuadratureConfig()
    n_max = max(n_max, psi.order)
    xi = ssf_from_moments(moments(pair, n_max))
    lhs = laurent_difference_trace(pair, psi)
    rows = []
    for R in cfg.radius_schedule:
        rows.append((float(R),
                     disc_integral_quadrature(xi, psi, R, cfg),
                     disc_integral_closed_form(xi, psi, R)))
    limit = disc_integral_closed_form(xi, psi, 1.0)
    tail = disc_tail_bound(xi, psi, cfg.radius_schedule[-1])
    return DiscPairingReport(per_radius=tuple(rows),
                             limit_estimate=limit,
                             lhs_trace=lhs,
                             tail_bound=tail)
