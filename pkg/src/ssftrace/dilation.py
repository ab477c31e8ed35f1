"""Finite-window truncation of the Schäffer unitary dilation.

The dilation acts on a bilateral sequence space; block row -1 carries
(D_T, -T*) in columns (0, 1), block row 0 carries (T, D_T*), and every
other row k holds the identity in column k+1 (a shift).  Truncating to
the window [-N, N] keeps the band structure, so central compressions of
powers up to N and window traces of power differences are exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PowerExceedsWindowError
from .linops import ContractionPair, as_operator, defect, trace_norm, validate_contraction


@dataclass(frozen=True)
class WindowDilation:
    window_radius_n: int
    block_dim_d: int
    base: np.ndarray

    def block(self, i: int, j: int) -> np.ndarray:
        """Block at window position (i, j); indices run in [-N, N]."""
        N, d = self.window_radius_n, self.block_dim_d
        if not (-N <= i <= N and -N <= j <= N):
            raise IndexError(f"block index ({i}, {j}) outside window [-{N}, {N}]")
        return self.base[(i + N) * d:(i + N + 1) * d, (j + N) * d:(j + N + 1) * d]


@dataclass(frozen=True)
class DifferenceBlocks:
    at_00: np.ndarray
    at_01: np.ndarray
    at_m10: np.ndarray
    at_m11: np.ndarray


def build_window_dilation(T, N: int) -> WindowDilation:
    """Assemble the truncated dilation of a contraction on window [-N, N]."""
    T = as_operator(T)
    validate_contraction(T)
    if N < 1:
        raise ValueError(f"window radius must be >= 1, got {N}")
    d = T.shape[0]
    size = (2 * N + 1) * d
    base = np.zeros((size, size), dtype=complex)

    def put(i, j, blockmat):
        base[(i + N) * d:(i + N + 1) * d, (j + N) * d:(j + N + 1) * d] = blockmat

    eye = np.eye(d, dtype=complex)
    for k in range(-N, N + 1):
        if k in (-1, 0) or k + 1 > N:
            continue
        put(k, k + 1, eye)
    put(-1, 0, defect(T, "left"))
    put(-1, 1, -T.conj().T)
    put(0, 0, T)
    put(0, 1, defect(T, "right"))
    return WindowDilation(window_radius_n=N, block_dim_d=d, base=base)


def interior_column_orthonormality(W: WindowDilation) -> float:
    """Max deviation from orthonormality over the in-window columns.

    Only block column -N maps outside the window (its identity sits at
    row -N-1); every other column is complete and must be orthonormal.
    """
    d = W.block_dim_d
    cols = W.base[:, d:]
    G = cols.conj().T @ cols
    return float(np.abs(G - np.eye(G.shape[0])).max())


def compression_power_check(W: WindowDilation, T, n: int) -> float:
    """Frobenius gap between the central block of base^n and T^n."""
    T = as_operator(T)
    if n > W.window_radius_n:
        raise PowerExceedsWindowError(
            f"power {n} exceeds window radius {W.window_radius_n}")
    if n < 1:
        raise ValueError(f"power must be >= 1, got {n}")
    P = np.linalg.matrix_power(W.base, n)
    N, d = W.window_radius_n, W.block_dim_d
    central = P[N * d:(N + 1) * d, N * d:(N + 1) * d]
    return float(np.linalg.norm(central - np.linalg.matrix_power(T, n), "fro"))


def dilation_difference_blocks(pair: ContractionPair) -> DifferenceBlocks:
    """The four nonzero blocks of the dilation difference.

    Every other block of U_T - U_T0 vanishes identically because the
    shift parts coincide.
    """
    T, T0 = pair.T, pair.T0
    blocks = DifferenceBlocks(
        at_00=T - T0,
        at_01=defect(T, "right") - defect(T0, "right"),
        at_m10=defect(T, "left") - defect(T0, "left"),
        at_m11=-(T - T0).conj().T,
    )
    return blocks


def difference_block_trace_norm_sum(blocks: DifferenceBlocks) -> float:
    """Subadditive upper bound for the trace norm of the dilation difference."""
    return (trace_norm(blocks.at_00) + trace_norm(blocks.at_01)
            + trace_norm(blocks.at_m10) + trace_norm(blocks.at_m11))


def dilation_trace_transfer(pair: ContractionPair, n: int, N: int):
    """Tr(T^n - T0^n) against the window trace of the dilation power difference."""
    if n > N:
        raise PowerExceedsWindowError(f"power {n} exceeds window radius {N}")
    T, T0 = pair.T, pair.T0
    lhs = complex(np.trace(np.linalg.matrix_power(T, n))
                  - np.trace(np.linalg.matrix_power(T0, n)))
    WT = build_window_dilation(T, N)
    W0 = build_window_dilation(T0, N)
    rhs = complex(np.trace(np.linalg.matrix_power(WT.base, n))
                  - np.trace(np.linalg.matrix_power(W0.base, n)))
    return lhs, rhs
