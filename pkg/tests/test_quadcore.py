import math

import numpy as np
import pytest

from rieszwell.errors import ConvergenceError, DomainError
from rieszwell.quadcore import (QuadratureSettings, accelerated_block_tail,
                                epsilon_extrapolate, geometric_ladder,
                                graded_mesh, integrate_adaptive)


class TestSettings:
    def test_defaults(self):
        cfg = QuadratureSettings()
        assert cfg.rel_tol == 1e-8
        assert cfg.abs_tol == 1e-12
        assert cfg.max_panels == 10_000
        assert cfg.tail_blocks == 200
        assert cfg.accel_depth == 12
        assert cfg.sing_window == 0.1

    @pytest.mark.parametrize("kwargs", [
        {"rel_tol": 1e-15},
        {"rel_tol": -1.0},
        {"abs_tol": 0.0},
        {"max_panels": 0},
        {"tail_blocks": 0},
        {"accel_depth": 0},
        {"sing_window": -0.1},
    ])
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(DomainError):
            QuadratureSettings(**kwargs)


class TestAdaptivePanels:
    def test_smooth(self):
        value, err, n_evals = integrate_adaptive(
            np.sin, [0.0, math.pi], rel_tol=1e-12, abs_tol=1e-14,
            max_panels=200)
        assert value == pytest.approx(2.0, abs=1e-12)
        assert abs(value - 2.0) <= 10.0 * err
        assert n_evals > 0

    def test_endpoint_singularity_with_graded_mesh(self):
        # int_0^1 x**-0.5 dx = 2
        bps = graded_mesh(0.0, 1.0, -0.5, 1e-14)
        value, err, _ = integrate_adaptive(
            lambda x: 1.0 / np.sqrt(x), bps, rel_tol=1e-11, abs_tol=1e-13,
            max_panels=2000)
        assert value == pytest.approx(2.0, abs=1e-10)

    def test_complex_integrand(self):
        # int_0^1 e^{ix} dx = sin 1 + i (1 - cos 1)
        value, err, _ = integrate_adaptive(
            lambda x: np.exp(1j * x), [0.0, 1.0], rel_tol=1e-12,
            abs_tol=1e-14, max_panels=100)
        assert value.real == pytest.approx(math.sin(1.0), abs=1e-13)
        assert value.imag == pytest.approx(1.0 - math.cos(1.0), abs=1e-13)

    def test_budget_exhaustion_reports_best(self):
        with pytest.raises(ConvergenceError) as info:
            integrate_adaptive(lambda x: np.cos(200.0 * x) * 200.0,
                               [0.0, 10.0], rel_tol=1e-14, abs_tol=1e-16,
                               max_panels=2)
        assert info.value.best is not None
        assert info.value.achieved_error > 0.0

    def test_deterministic(self):
        run = lambda: integrate_adaptive(
            lambda x: np.cos(3.0 * x) / (1.0 + x), [0.0, 5.0],
            rel_tol=1e-10, abs_tol=1e-13, max_panels=500)
        assert run() == run()

    def test_needs_two_breakpoints(self):
        with pytest.raises(DomainError):
            integrate_adaptive(np.sin, [1.0], rel_tol=1e-8, abs_tol=1e-12,
                               max_panels=10)


class TestGradedMesh:
    def test_monotone_and_bounded(self):
        bps = graded_mesh(0.0, 4.0, -0.9, 1e-13)
        assert bps[0] == 0.0
        assert bps[-1] == 4.0
        assert all(a < b for a, b in zip(bps, bps[1:]))

    def test_first_cell_contribution_below_budget(self):
        abs_tol = 1e-10
        a = -0.5
        bps = graded_mesh(0.0, 1.0, a, abs_tol)
        h = bps[1]
        assert h ** (1.0 + a) / (1.0 + a) <= abs_tol * 1.000001

    def test_rejects_nonintegrable(self):
        with pytest.raises(DomainError):
            graded_mesh(0.0, 1.0, -1.0, 1e-12)

    def test_rejects_empty_interval(self):
        with pytest.raises(DomainError):
            graded_mesh(1.0, 1.0, 0.5, 1e-12)


class TestGeometricLadder:
    def test_covers_range(self):
        bps = geometric_ladder(1.0, 100.0)
        assert bps[0] == 1.0
        assert bps[-1] == 100.0
        assert all(a < b for a, b in zip(bps, bps[1:]))

    def test_rejects_bad_range(self):
        with pytest.raises(DomainError):
            geometric_ladder(0.0, 10.0)


class TestEpsilonExtrapolation:
    def test_alternating_log2(self):
        # partial sums of sum (-1)^(n+1)/n -> ln 2
        sums = list(np.cumsum([(-1) ** (n + 1) / n for n in range(1, 21)]))
        value, err = epsilon_extrapolate(sums, max_depth=8)
        assert value == pytest.approx(math.log(2.0), abs=1e-12)
        assert abs(value - math.log(2.0)) <= 10.0 * err

    def test_leibniz_pi(self):
        sums = list(np.cumsum([(-1) ** n / (2 * n + 1)
                               for n in range(25)]))
        value, err = epsilon_extrapolate(sums, max_depth=10)
        assert 4.0 * value == pytest.approx(math.pi, abs=1e-10)

    def test_short_sequences(self):
        value, err = epsilon_extrapolate([1.5], max_depth=4)
        assert value == 1.5
        assert math.isinf(err)
        with pytest.raises(DomainError):
            epsilon_extrapolate([], max_depth=4)

    def test_stalled_sequence_is_converged(self):
        value, err = epsilon_extrapolate([2.0, 2.0, 2.0, 2.0], max_depth=4)
        assert value == 2.0
        assert err <= 1e-14


class TestBlockTail:
    def test_known_oscillatory_integral(self):
        # int_0^inf cos(x)/(1+x^2) dx = pi/(2e)
        cfg = QuadratureSettings(rel_tol=1e-10, abs_tol=1e-13)
        f = lambda x: np.cos(x) / (1.0 + x * x)
        head, head_err, _ = integrate_adaptive(
            f, [0.0, 1.0, 2.0, 4.0], rel_tol=1e-12, abs_tol=1e-14,
            max_panels=500)
        tail, tail_err, _, n_blocks = accelerated_block_tail(
            f, 4.0, math.pi, cfg, target_abs=1e-12)
        exact = math.pi / (2.0 * math.e)
        assert head + tail == pytest.approx(exact, abs=1e-10)
        assert abs(head + tail - exact) <= 10.0 * (head_err + tail_err)
        assert n_blocks <= cfg.tail_blocks

    def test_exhausted_blocks_raise_with_best(self):
        cfg = QuadratureSettings(tail_blocks=6, accel_depth=2)
        # slowly decaying, impossible target
        f = lambda x: np.cos(x) / x
        with pytest.raises(ConvergenceError) as info:
            accelerated_block_tail(f, 4.0, math.pi, cfg, target_abs=1e-16)
        assert info.value.best is not None

    def test_rejects_bad_block_length(self):
        cfg = QuadratureSettings()
        with pytest.raises(DomainError):
            accelerated_block_tail(np.cos, 4.0, 0.0, cfg, target_abs=1e-10)
