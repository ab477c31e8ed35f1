"""Shared random-instance generators for the test suite."""

import numpy as np

from ssftrace import linops


def random_pairs(count, seed, dims=(2, 4, 6, 8), delta=0.3, perturbation=0.1):
    """Deterministic list of contraction pairs cycling through dims."""
    return [
        linops.random_pair(dims[i % len(dims)], delta, perturbation, seed=seed + i)
        for i in range(count)
    ]


def random_strict_pair(dim, norm_t, norm_t0, seed):
    """Pair with both contractions strict, at prescribed operator norms."""
    rng = np.random.default_rng(seed)
    T = linops.random_contraction(dim, norm_t, rng)
    T0 = linops.random_contraction(dim, norm_t0, rng)
    return linops.make_pair(T, T0)


def random_positive_pair(dim, delta_b, seed):
    """Hermitian positive contractions (A, B) with B bounded below by delta_b."""
    rng = np.random.default_rng(seed)
    A = linops.random_positive_contraction(dim, 0.0, 1.0, rng)
    B = linops.random_positive_contraction(dim, delta_b, 1.0, rng)
    return A, B


def scalar_pair(t, t0):
    return linops.make_pair(np.array([[t]], dtype=complex),
                            np.array([[t0]], dtype=complex))
