"""Acceptance suite: every release-gating check as an executable criterion.

Each criterion pins its own tolerances and oracle settings; loosening
the CLI-level quadrature request must never loosen a pass bar.  The
functions return :class:`CriterionResult` records and never raise: an
escaped exception is itself a failure, reported in the details.
"""

import cmath
import filecmp
import math
import os
import tempfile
import time
from dataclasses import dataclass, field

import numpy as np

from .analysis import boundary_residual, branch_ambiguity_demo
from .closedform import FractionalOrder, WellConfig, f_closed, i_closed, \
    k_closed
from .oracle import QuadratureSettings, f_direct, i_direct, k_direct
from .results import mixed_diff
from .specfun import upper_incomplete_gamma, upper_incomplete_gamma_oracle

_SEED = 20127


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    measured: float
    threshold: float
    runtime: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        return (f"criterion {self.number:2d} [{state}] {self.name}: "
                f"measured {self.measured:.3e} vs threshold "
                f"{self.threshold:.3e} ({self.runtime:.2f}s)")


def _run(number, name, threshold, body) -> CriterionResult:
    start = time.perf_counter()
    try:
        measured, passed, details = body()
    except Exception as exc:  # a crash is a failure, never an abort
        return CriterionResult(number, name, False, math.inf, threshold,
                               time.perf_counter() - start,
                               {"exception": repr(exc)})
    return CriterionResult(number, name, passed, measured, threshold,
                           time.perf_counter() - start, details)


def criterion_1_k0_identity() -> CriterionResult:
    """k_closed(alpha, 0) equals (pi/2) sec(pi alpha/2) to 1e-12."""

    def body():
        worst = 0.0
        for alpha in (0.25, -0.25, 0.5, -0.5, 0.75, -0.75):
            k = k_closed(FractionalOrder(alpha), 0.0)
            exact = 0.5 * math.pi / math.cos(0.5 * math.pi * alpha)
            worst = max(worst, abs(k.value - exact))
        return worst, worst <= 1e-12, {}

    return _run(1, "k0-identity", 1e-12, body)


def criterion_2_gamma_recurrence() -> CriterionResult:
    """Recurrence residual <= 1e-10 mixed and ray-oracle agreement
    <= 1e-9 mixed over 200 seeded (s, i lambda) pairs."""

    def body():
        rng = np.random.RandomState(_SEED)
        ray_cfg = QuadratureSettings(rel_tol=1e-11, abs_tol=1e-14)
        worst_rec = 0.0
        worst_ray = 0.0
        n = 0
        while n < 200:
            s = float(rng.uniform(-0.95, 0.95))
            if abs(s) < 0.02:
                continue
            lam = float(rng.uniform(0.05, 20.0))
            n += 1
            z = complex(0.0, lam)
            g_s = upper_incomplete_gamma(s, z)
            g_s1 = upper_incomplete_gamma(s + 1.0, z)
            residual = g_s1 - (s * g_s + z ** s * cmath.exp(-z))
            worst_rec = max(worst_rec, abs(residual) / (1.0 + abs(g_s1)))
            ray = upper_incomplete_gamma_oracle(s, z, ray_cfg)
            worst_ray = max(worst_ray, abs(g_s - ray) / (1.0 + abs(ray)))
        passed = worst_rec <= 1e-10 and worst_ray <= 1e-9
        return max(worst_rec, worst_ray), passed, {
            "worst_recurrence": worst_rec, "worst_ray": worst_ray}

    return _run(2, "gamma-recurrence", 1e-10, body)


def criterion_3_k_cross_validation() -> CriterionResult:
    """k_closed vs k_direct mixed diff <= 1e-8 on the alpha x lambda grid."""

    def body():
        worst = 0.0
        worst_at = None
        for alpha in (0.25, -0.25, 0.5, -0.5, 0.75):
            order = FractionalOrder(alpha)
            for lam in (0.05, 0.5, 1.0, math.pi / 2.0, math.pi, 5.0):
                d = mixed_diff(k_closed(order, lam).value,
                               k_direct(order, lam).value)
                if d > worst:
                    worst, worst_at = d, (alpha, lam)
        return worst, worst <= 1e-8, {"worst_at": worst_at}

    return _run(3, "k-cross-validation", 1e-8, body)


def criterion_4_i_cross_validation() -> CriterionResult:
    """i_closed vs i_direct mixed diff <= 1e-6 on the alpha x (x/a) grid."""

    def body():
        well = WellConfig()
        worst = 0.0
        worst_at = None
        for alpha in (-0.5, 0.25, 0.5, 0.75):
            order = FractionalOrder(alpha)
            for xt in (0.0, 0.25, 0.5, 0.9, 1.1, 1.5, 2.0, 3.0):
                d = mixed_diff(i_closed(order, well, xt).value,
                               i_direct(order, well, xt).value)
                if d > worst:
                    worst, worst_at = d, (alpha, xt)
        return worst, worst <= 1e-6, {"worst_at": worst_at}

    return _run(4, "i-cross-validation", 1e-6, body)


def criterion_5_identity_limit() -> CriterionResult:
    """At alpha = 1e-4: I(x) ~ -pi cos(pi x/2a) inside, ~0 outside."""

    def body():
        order = FractionalOrder(1e-4)
        well = WellConfig()
        worst = 0.0
        for xt in (0.0, 0.3, 0.6, 0.9):
            value = i_closed(order, well, xt).value
            worst = max(worst, abs(value + math.pi * math.cos(0.5 * math.pi * xt)))
        outside = abs(i_closed(order, well, 2.0).value)
        worst = max(worst, outside)
        return worst, worst <= 5e-3, {"outside": outside}

    return _run(5, "identity-limit", 5e-3, body)


def criterion_6_boundary_nonvanishing() -> CriterionResult:
    """Both routes give |I(a)| > 0.1, agree to 1e-6; residual nonzero."""

    def body():
        order = FractionalOrder(0.5)
        well = WellConfig(a=1.0)
        closed = i_closed(order, well, 1.0).value
        oracle = i_direct(order, well, 1.0).value
        agree = mixed_diff(closed, oracle)
        residual = boundary_residual(order, well).value
        passed = (abs(closed) > 0.1 and abs(oracle) > 0.1
                  and agree <= 1e-6 and abs(residual) > 1e-8)
        return agree, passed, {
            "i_closed": closed, "i_oracle": oracle, "residual": residual}

    return _run(6, "boundary-nonvanishing", 1e-6, body)


def f_preset_grid() -> list:
    """The 73-point scan grid on [-0.9, 0.9], skipping |alpha| < 1e-3."""
    return [float(a) for a in np.linspace(-0.9, 0.9, 73) if abs(a) >= 1e-3]


def criterion_7_f_monotone() -> CriterionResult:
    """f strictly increasing with sign(f) = sign(alpha) on the preset
    grid; f_closed vs f_direct <= 1e-7 at three spot orders."""

    def body():
        values = [(a, f_closed(FractionalOrder(a)).value)
                  for a in f_preset_grid()]
        increasing = all(v0 < v1 for (_, v0), (_, v1)
                         in zip(values, values[1:]))
        signs = all(math.copysign(1.0, v) == math.copysign(1.0, a)
                    for a, v in values)
        worst = 0.0
        for alpha in (0.5, -0.5, 0.25):
            order = FractionalOrder(alpha)
            worst = max(worst, mixed_diff(f_closed(order).value,
                                          f_direct(order).value))
        passed = increasing and signs and worst <= 1e-7
        return worst, passed, {"increasing": increasing, "signs": signs}

    return _run(7, "f-monotone", 1e-7, body)


def criterion_8_edge_continuity() -> CriterionResult:
    """The inside/outside formulas close onto the shared edge value at
    the delta**(1-alpha) rate: each one-sided gap
    |I(a(1 -+ delta)) - 2 f(alpha)| shrinks across a delta decade by
    10**(1-alpha) within a factor of 3.

    (The two-point difference between the sides is also required to
    vanish, but it cannot carry the exponent: both formulas contain the
    identical sin(pi alpha/2) K(pi delta/2) term, whose delta**(1-alpha)
    part cancels exactly in the subtraction, leaving a linear gap.)
    """

    def body():
        well = WellConfig()
        worst_factor = 0.0
        details = {}
        for alpha in (0.25, 0.5):
            order = FractionalOrder(alpha)
            edge = i_closed(order, well, well.a).value
            expected = 10.0 ** (1.0 - alpha)
            side_ratios = {}
            for label, sign in (("inside", -1.0), ("outside", 1.0)):
                gaps = {}
                for delta in (1e-2, 1e-3):
                    x = well.a * (1.0 + sign * delta)
                    gaps[delta] = abs(i_closed(order, well, x).value - edge)
                ratio = gaps[1e-2] / gaps[1e-3]
                side_ratios[label] = ratio
                worst_factor = max(worst_factor,
                                   ratio / expected, expected / ratio)
            two_point = {
                delta: abs(i_closed(order, well, well.a * (1 - delta)).value
                           - i_closed(order, well, well.a * (1 + delta)).value)
                for delta in (1e-2, 1e-3)}
            if not two_point[1e-3] < two_point[1e-2] / 3.0:
                return math.inf, False, {"two_point_not_vanishing": two_point}
            details[alpha] = {"expected": expected, **side_ratios,
                              "two_point_gap_ratio":
                                  two_point[1e-2] / two_point[1e-3]}
        return worst_factor, worst_factor <= 3.0, details

    return _run(8, "edge-continuity", 3.0, body)


def criterion_9_branch_ambiguity() -> CriterionResult:
    """Mixed cuts reproduce |q|^alpha to 1e-12; each half-plane-analytic
    assignment deviates by >= 1 on exactly one semi-axis at alpha=0.5."""

    def body():
        report = branch_ambiguity_demo(FractionalOrder(0.5),
                                       [0.5, -0.5, 1.0, -1.0, 2.0, -2.0])
        mixed_sup = None
        analytic_ok = True
        for dev in report.deviations:
            if dev.choice.is_mixed:
                mixed_sup = dev.sup_dev
            elif dev.choice.is_half_plane_analytic:
                one_sided = ((dev.max_dev_positive <= 1e-12)
                             != (dev.max_dev_negative <= 1e-12))
                analytic_ok = analytic_ok and one_sided and dev.sup_dev >= 1.0
        passed = mixed_sup is not None and mixed_sup <= 1e-12 and analytic_ok
        return mixed_sup if mixed_sup is not None else math.inf, passed, {
            "half_plane_analytic_ok": analytic_ok}

    return _run(9, "branch-ambiguity", 1e-12, body)


def criterion_10_determinism() -> CriterionResult:
    """The figure-2 scan preset run twice produces byte-identical CSV."""

    def body():
        from . import cli  # local import: cli consumes this module
        with tempfile.TemporaryDirectory() as tmp:
            paths = [os.path.join(tmp, name) for name in ("a.csv", "b.csv")]
            for path in paths:
                code = cli.main(["scan-i", "--out", path])
                if code != 0:
                    return math.inf, False, {"exit_code": code}
            identical = filecmp.cmp(paths[0], paths[1], shallow=False)
            size = os.path.getsize(paths[0])
        return 0.0 if identical else math.inf, identical, {"bytes": size}

    return _run(10, "determinism", 0.0, body)


_CRITERIA = [
    criterion_1_k0_identity,
    criterion_2_gamma_recurrence,
    criterion_3_k_cross_validation,
    criterion_4_i_cross_validation,
    criterion_5_identity_limit,
    criterion_6_boundary_nonvanishing,
    criterion_7_f_monotone,
    criterion_8_edge_continuity,
    criterion_9_branch_ambiguity,
    criterion_10_determinism,
]


def run_all() -> list:
    """Run every criterion in order; never raises."""
    return [c() for c in _CRITERIA]


def report_dict(results) -> dict:
    return {
        "schema": 1,
        "all_passed": all(r.passed for r in results),
        "criteria": [
            {
                "number": r.number,
                "name": r.name,
                "passed": r.passed,
                "measured": r.measured,
                "threshold": r.threshold,
                "runtime_seconds": round(r.runtime, 3),
                "details": {k: repr(v) if not isinstance(
                    v, (int, float, str, bool, type(None))) else v
                    for k, v in r.details.items()},
            }
            for r in results
        ],
    }
