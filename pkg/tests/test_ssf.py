"""Shift-function reconstruction from moments and its invariants."""

import numpy as np
import pytest

from pairs import random_pairs, scalar_pair
from ssftrace import dilation, disc, linops, ssf
from ssftrace.errors import NonRealResultError


def test_moments_equal_pair():
    pair = scalar_pair(0.5, 0.5)
    m = ssf.moments(pair, 8)
    np.testing.assert_allclose(m.moments, 0.0)


def test_moments_scalar():
    m = ssf.moments(scalar_pair(0.5, 0.25), 3)
    assert m.moment(1) == pytest.approx(0.25)
    assert m.moment(2) == pytest.approx(0.1875)
    assert m.moment(3) == pytest.approx(0.109375)


def test_moments_telescoping_bound():
    for pair in random_pairs(10, seed=500):
        m = ssf.moments(pair, 32)
        tn = linops.trace_norm(pair.T - pair.T0)
        rho = max(pair.cert_T.operator_norm, pair.cert_T0.operator_norm)
        for n in range(1, 33):
            assert abs(m.moment(n)) <= n * tn * rho ** (n - 1) + 1e-12


def test_moments_match_dilation_route():
    pair = random_pairs(1, seed=501, dims=(8,))[0]
    m = ssf.moments(pair, 6)
    for n in range(1, 7):
        _, rhs = dilation.dilation_trace_transfer(pair, n, N=6)
        assert abs(m.moment(n) - rhs) <= 1e-9


class TestCoefficients:
    def test_zero_moments(self):
        s = ssf.ssf_from_moments(ssf.moments(scalar_pair(0.3, 0.3), 16))
        np.testing.assert_allclose(s.coeffs, 0.0)

    def test_scalar_first_coefficient(self):
        s = ssf.ssf_from_moments(ssf.moments(scalar_pair(0.5, 0.25), 4))
        assert s.coeff(-1) == pytest.approx(0.25 / (2j * np.pi))

    def test_round_trip(self):
        pair = random_pairs(1, seed=502, dims=(6,))[0]
        m = ssf.moments(pair, 24)
        back = ssf.moments_from_ssf(ssf.ssf_from_moments(m))
        np.testing.assert_allclose(back.moments, m.moments, atol=1e-12)

    def test_conjugate_symmetry_and_zero_constant(self):
        pair = random_pairs(1, seed=503, dims=(6,))[0]
        s = ssf.ssf_from_moments(ssf.moments(pair, 16))
        assert s.coeff(0) == 0.0
        for n in range(1, 17):
            assert s.coeff(-n) == pytest.approx(np.conj(s.coeff(n)), abs=1e-15)

    def test_coefficient_bound(self):
        for pair in random_pairs(8, seed=504):
            s = ssf.ssf_from_moments(ssf.moments(pair, 32))
            bound = linops.trace_norm(pair.T - pair.T0) / (2.0 * np.pi)
            for n in range(1, 33):
                assert abs(s.coeff(n)) <= bound + 1e-12

    def test_geometric_decay_slope(self):
        # normal pair so moment decay tracks the operator norm exactly
        pair = linops.make_pair(np.diag([0.7, 0.3]), np.diag([0.4, 0.2]))
        s = ssf.ssf_from_moments(ssf.moments(pair, 64))
        ns = np.arange(32, 65)
        logs = np.log([abs(s.coeff(int(n))) for n in ns])
        slope = np.polyfit(ns, logs, 1)[0]
        assert slope == pytest.approx(np.log(0.7), rel=0.1)


class TestEvaluate:
    def test_zero_table(self):
        s = ssf.SpectralShift(n_max=4, coeffs=np.zeros(9, dtype=complex))
        for t in np.linspace(0, 2 * np.pi, 7):
            assert ssf.evaluate_ssf(s, t, 0.9) == 0.0

    def test_single_pair_identity(self):
        c = -1j / (4.0 * np.pi)
        coeffs = np.zeros(3, dtype=complex)
        coeffs[0] = np.conj(c)
        coeffs[2] = c
        s = ssf.SpectralShift(n_max=1, coeffs=coeffs)
        r = 0.8
        for t in np.linspace(0, 2 * np.pi, 9):
            expected = 2.0 * (c * r * np.exp(1j * t)).real
            assert ssf.evaluate_ssf(s, t, r) == pytest.approx(expected, abs=1e-14)

    def test_matches_poisson_extension(self):
        s = ssf.ssf_from_moments(ssf.moments(scalar_pair(0.9, 0.5), 128))
        r = 0.99
        ts = 2.0 * np.pi * np.arange(256) / 256
        vals = ssf.evaluate_ssf_grid(s, ts, r)
        for t, v in zip(ts[::16], vals[::16]):
            w = disc.poisson_extend(s, r * np.exp(1j * t))
            assert v == pytest.approx(w.real, abs=1e-12)

    def test_non_real_rejected(self):
        coeffs = np.zeros(5, dtype=complex)
        coeffs[3] = 1.0  # n=1 without its conjugate partner
        s = ssf.SpectralShift(n_max=2, coeffs=coeffs)
        with pytest.raises(NonRealResultError):
            ssf.evaluate_ssf(s, 0.3, 0.9)

    def test_bad_radius(self):
        s = ssf.SpectralShift(n_max=1, coeffs=np.zeros(3, dtype=complex))
        with pytest.raises(ValueError):
            ssf.evaluate_ssf(s, 0.0, 1.0)


def test_constant_shift_moves_values_not_pairing():
    pair = random_pairs(1, seed=505, dims=(6,))[0]
    s = ssf.ssf_from_moments(ssf.moments(pair, 16))
    shifted = s.with_constant(2.5)
    for t in (0.1, 1.7, 4.0):
        gap = ssf.evaluate_ssf(shifted, t, 0.9) - ssf.evaluate_ssf(s, t, 0.9)
        assert gap == pytest.approx(2.5, abs=1e-12)
    np.testing.assert_allclose(ssf.moments_from_ssf(shifted).moments,
                               ssf.moments_from_ssf(s).moments)


class TestAdjointRelation:
    def test_equal_pair(self):
        rep = ssf.adjoint_ssf_check(scalar_pair(0.4, 0.4), 8)
        assert rep.max_deviation == 0.0

    def test_real_scalar_pair(self):
        rep = ssf.adjoint_ssf_check(scalar_pair(0.5, 0.25), 8)
        assert rep.max_deviation <= 1e-14
        # real moments: chi_hat(-n) equals xi_hat(-n)
        for n in range(1, 9):
            assert rep.chi.coeff(-n) == pytest.approx(rep.xi.coeff(-n), abs=1e-15)

    def test_random_complex_pair(self):
        pair = random_pairs(1, seed=506, dims=(6,))[0]
        rep = ssf.adjoint_ssf_check(pair, 32)
        assert rep.max_deviation <= 1e-12
