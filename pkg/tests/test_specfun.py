import cmath
import math

import numpy as np
import pytest

import rieszwell.specfun as specfun
from rieszwell.errors import (BranchCutError, ConvergenceError, DomainError,
                              PoleError)
from rieszwell.quadcore import QuadratureSettings
from rieszwell.specfun import (beta, classify_order, gamma,
                               upper_incomplete_gamma,
                               upper_incomplete_gamma_oracle)


def mixed(a, b):
    return abs(a - b) / (1.0 + abs(b))


class TestClassifyOrder:
    def test_categories(self):
        assert classify_order(0.5) == "positive"
        assert classify_order(-0.5) == "negative-noninteger"
        assert classify_order(0.0) == "near-pole"
        assert classify_order(-2.0 + 5e-7) == "near-pole"
        assert classify_order(-2.0 + 5e-6) == "negative-noninteger"


class TestGamma:
    def test_known_values(self):
        assert gamma(1.0) == pytest.approx(1.0, rel=1e-14)
        assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
        # reflection from Gamma(0.5): Gamma(-1/2) = -2 sqrt(pi)
        assert gamma(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi),
                                            rel=1e-13)

    @pytest.mark.parametrize("s", [0.0, -1.0, -7.0, 1e-7, -3.0 - 9e-7])
    def test_pole_guard(self, s):
        with pytest.raises(PoleError):
            gamma(s)

    def test_reflection_identity(self):
        rng = np.random.RandomState(7)
        samples = list(rng.uniform(-0.99, 0.99, 300)) + \
            list(rng.uniform(1.01, 1.99, 100))
        for s in samples:
            if abs(s) < 1e-3:
                continue
            lhs = gamma(s) * gamma(1.0 - s)
            rhs = math.pi / math.sin(math.pi * s)
            assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


class TestBeta:
    def test_known_values(self):
        assert beta(1.0, 1.0) == pytest.approx(1.0, rel=1e-14)
        assert beta(0.5, 0.5) == pytest.approx(math.pi, rel=1e-13)
        # via reflection: Gamma(1/4) Gamma(3/4) = pi / sin(pi/4) = pi sqrt(2)
        assert beta(0.25, 0.75) == pytest.approx(math.pi * math.sqrt(2.0),
                                                 rel=1e-13)

    def test_gamma_product_contract(self):
        for x, y in [(0.3, 1.4), (-0.5, 0.25), (1.9, 0.35)]:
            expected = gamma(x) * gamma(y) / gamma(x + y)
            assert beta(x, y) == pytest.approx(expected, rel=1e-12)

    def test_pole_propagates(self):
        with pytest.raises(PoleError):
            beta(0.5, -0.5)  # x + y = 0


class TestUpperIncompleteGamma:
    def test_order_one_is_exp(self):
        assert upper_incomplete_gamma(1.0, 1.0 + 0j) == \
            pytest.approx(math.exp(-1.0), rel=1e-13)
        z = complex(0.3, 1.7)
        assert upper_incomplete_gamma(1.0, z) == \
            pytest.approx(cmath.exp(-z), rel=1e-13)

    def test_small_z_positive_order(self):
        assert upper_incomplete_gamma(0.5, complex(1e-13, 0.0)) == \
            pytest.approx(math.sqrt(math.pi), rel=1e-6)
        assert upper_incomplete_gamma(0.5, 0.0) == \
            pytest.approx(math.sqrt(math.pi), rel=1e-14)

    def test_negative_half_at_one(self):
        # Gamma(-1/2, 1) = 2 (e^-1 - sqrt(pi) erfc(1))
        expected = 2.0 * (math.exp(-1.0)
                          - math.sqrt(math.pi) * math.erfc(1.0))
        value = upper_incomplete_gamma(-0.5, 1.0 + 0j)
        assert value.real == pytest.approx(expected, rel=1e-12)
        assert abs(value.imag) <= 1e-15

    def test_half_at_one_is_erfc(self):
        # Gamma(1/2, 1) = sqrt(pi) erfc(1)
        expected = math.sqrt(math.pi) * math.erfc(1.0)
        assert upper_incomplete_gamma(0.5, 1.0 + 0j).real == \
            pytest.approx(expected, rel=1e-13)

    def test_imaginary_argument_matches_ray_oracle(self):
        cfg = QuadratureSettings(rel_tol=1e-11, abs_tol=1e-14)
        for s, lam in [(-0.5, math.pi), (-0.5, 0.5 * math.pi), (0.75, 2.0),
                       (-0.25, 0.08), (0.5, 15.0)]:
            z = complex(0.0, lam)
            closed = upper_incomplete_gamma(s, z)
            ray = upper_incomplete_gamma_oracle(s, z, cfg)
            assert mixed(closed, ray) <= 1e-9

    def test_zero_argument_negative_order_rejected(self):
        with pytest.raises(DomainError):
            upper_incomplete_gamma(-0.5, 0.0)

    def test_branch_cut_rejected(self):
        with pytest.raises(BranchCutError):
            upper_incomplete_gamma(0.5, complex(-1.0, 0.0))

    def test_near_pole_order_rejected(self):
        with pytest.raises(PoleError):
            upper_incomplete_gamma(-1.0 + 1e-8, 1j)

    def test_series_budget_exhaustion(self, monkeypatch):
        monkeypatch.setattr(specfun, "_MAX_TERMS", 2)
        with pytest.raises(ConvergenceError):
            upper_incomplete_gamma(0.6, complex(0.0, 1.2))

    def test_recurrence_property(self):
        # G(s+1, z) = s G(s, z) + z^s e^-z on 200 seeded (s, i lam) pairs
        rng = np.random.RandomState(11)
        count = 0
        while count < 200:
            s = float(rng.uniform(-0.95, 0.95))
            if abs(s) < 0.02:
                continue
            lam = float(rng.uniform(0.05, 20.0))
            count += 1
            z = complex(0.0, lam)
            lhs = upper_incomplete_gamma(s + 1.0, z)
            rhs = s * upper_incomplete_gamma(s, z) + z ** s * cmath.exp(-z)
            assert mixed(lhs, rhs) <= 1e-10

    def test_conjugate_symmetry(self):
        rng = np.random.RandomState(13)
        for _ in range(60):
            s = float(rng.uniform(-0.9, 1.9))
            if classify_order(s) == "near-pole" or abs(s) < 0.02:
                continue
            z = complex(rng.uniform(-0.0, 3.0) + 0.05, rng.uniform(0.05, 8.0))
            a = upper_incomplete_gamma(s, z.conjugate())
            b = upper_incomplete_gamma(s, z).conjugate()
            assert abs(a - b) <= 1e-13 * (1.0 + abs(b))


class TestRayOracle:
    def test_order_one(self):
        assert upper_incomplete_gamma_oracle(1.0, 2.0 + 0j) == \
            pytest.approx(math.exp(-2.0), rel=1e-9)

    def test_half_erfc(self):
        expected = math.sqrt(math.pi) * math.erfc(1.0)
        value = upper_incomplete_gamma_oracle(0.5, 1.0 + 0j)
        assert value.real == pytest.approx(expected, rel=1e-9)

    def test_self_consistency_on_imaginary_axis(self):
        cfg = QuadratureSettings(rel_tol=1e-11, abs_tol=1e-14)
        z = complex(0.0, 0.5 * math.pi)
        closed = upper_incomplete_gamma(-0.5, z)
        ray = upper_incomplete_gamma_oracle(-0.5, z, cfg)
        assert abs(closed - ray) <= 1e-9 * (1.0 + abs(ray))

    def test_rejects_left_half_plane_and_zero(self):
        with pytest.raises(DomainError):
            upper_incomplete_gamma_oracle(0.5, complex(-0.2, 1.0))
        with pytest.raises(DomainError):
            upper_incomplete_gamma_oracle(0.5, 0.0)
