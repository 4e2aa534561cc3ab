"""Executable versions of the headline claims: route consistency,
non-vanishing boundary residual, monotone edge function, and the
branch-cut ambiguity of the |q|^alpha replacement."""

import cmath
import math
from dataclasses import dataclass, field

from .closedform import (BOUNDARY_WINDOW, FractionalOrder, WellConfig,
                         f_closed, i_closed, riesz_psi0)
from .errors import DomainError, RieszWellError
from .oracle import QuadratureSettings, i_direct
from .results import EvalResult, mixed_diff

CUT_UPPER = "upper"
CUT_LOWER = "lower"


def i_hybrid(order: FractionalOrder, well: WellConfig, x: float,
             cfg: QuadratureSettings | None = None) -> EvalResult:
    """Boundary-safe I(x): the closed form away from the well edge, the
    quadrature oracle inside the cancellation window around |x| = a.

    The method tag of the result records which route ran; |x| = a
    exactly is served by the closed boundary definition 2 f(alpha).
    """
    xt = abs(x) / well.a
    if xt == 1.0 or abs(1.0 - xt) >= BOUNDARY_WINDOW:
        return i_closed(order, well, x)
    return i_direct(order, well, x, cfg)


def boundary_residual(order: FractionalOrder, well: WellConfig) -> EvalResult:
    """Riesz derivative of the candidate state at the well edge x = a.

    Equals -(2A/pi) (pi hbar / 2a)^alpha f(alpha): it would have to
    vanish for the candidate to solve the equation, and it never does
    for alpha != 0.  Its sign is opposite to sign(alpha) for A > 0.
    """
    return riesz_psi0(order, well, well.a)


@dataclass(frozen=True)
class MonotonicityReport:
    alphas: list
    values: list
    strictly_increasing: bool
    derivatives_positive: bool
    violations: list  # (alpha, description) pairs

    @property
    def passed(self) -> bool:
        return self.strictly_increasing and self.derivatives_positive


def monotonicity_scan(alpha_grid, cfg: QuadratureSettings | None = None
                      ) -> MonotonicityReport:
    """Check that f is strictly increasing across ``alpha_grid``.

    The grid must be strictly increasing and inside the alpha domain.
    Central finite differences on the (possibly non-uniform) grid must
    all be positive; any violation is listed in the report.
    """
    alphas = [float(a) for a in alpha_grid]
    orders = [FractionalOrder(a) for a in alphas]
    for left, right in zip(alphas, alphas[1:]):
        if not left < right:
            raise DomainError("alpha grid must be strictly increasing")
    values = [f_closed(o).value for o in orders]
    violations = []
    increasing = True
    for i in range(len(values) - 1):
        if not values[i] < values[i + 1]:
            increasing = False
            violations.append(
                (alphas[i + 1], f"f({alphas[i + 1]}) <= f({alphas[i]})"))
    fd_positive = True
    for i in range(1, len(values) - 1):
        slope = (values[i + 1] - values[i - 1]) / (alphas[i + 1] - alphas[i - 1])
        if not slope > 0.0:
            fd_positive = False
            violations.append(
                (alphas[i], f"central difference {slope:.3e} at {alphas[i]}"))
    return MonotonicityReport(
        alphas=alphas, values=values, strictly_increasing=increasing,
        derivatives_positive=fd_positive, violations=violations)


@dataclass(frozen=True)
class BranchChoice:
    """Branch-cut placement for the two terms of the |q|^alpha replacement
    [(iq)^alpha + (-iq)^alpha] / (2 cos(pi alpha/2)).

    ``cut_first`` places the cut of (iq)^alpha, ``cut_second`` that of
    (-iq)^alpha, each in the upper or lower half of the q plane.  Both
    branches agree with the principal value on q > 0.
    """

    cut_first: str
    cut_second: str

    def __post_init__(self):
        for cut in (self.cut_first, self.cut_second):
            if cut not in (CUT_UPPER, CUT_LOWER):
                raise DomainError(f"unknown cut placement {cut!r}")

    @property
    def is_mixed(self) -> bool:
        """The one assignment that reproduces |q|^alpha on both semi-axes."""
        return self.cut_first == CUT_UPPER and self.cut_second == CUT_LOWER

    @property
    def is_half_plane_analytic(self) -> bool:
        """Both cuts on the same side: analytic in one half plane."""
        return self.cut_first == self.cut_second

    @classmethod
    def all_choices(cls):
        return [cls(CUT_UPPER, CUT_LOWER), cls(CUT_UPPER, CUT_UPPER),
                cls(CUT_LOWER, CUT_LOWER), cls(CUT_LOWER, CUT_UPPER)]


# arg(i q) / arg(-i q) on the two real semi-axes for each cut placement,
# anchored to the principal value at q > 0 and continued around 0 through
# the cut-free half plane
_ARG_FIRST = {
    CUT_UPPER: {1: 0.5 * math.pi, -1: -0.5 * math.pi},
    CUT_LOWER: {1: 0.5 * math.pi, -1: 1.5 * math.pi},
}
_ARG_SECOND = {
    CUT_LOWER: {1: -0.5 * math.pi, -1: 0.5 * math.pi},
    CUT_UPPER: {1: -0.5 * math.pi, -1: -1.5 * math.pi},
}


def replacement_value(choice: BranchChoice, order: FractionalOrder,
                      q: float) -> complex:
    """[(iq)^alpha + (-iq)^alpha] / (2 cos(pi alpha/2)) on the real axis,
    with the powers taken on the branch selected by ``choice``."""
    if q == 0.0:
        raise DomainError("q = 0 is the branch point")
    a = order.alpha
    denom = 2.0 * math.cos(0.5 * math.pi * a)
    if abs(denom) < 1e-12:
        raise DomainError("cos(pi alpha/2) vanishes; replacement undefined")
    sgn = 1 if q > 0 else -1
    theta1 = _ARG_FIRST[choice.cut_first][sgn]
    theta2 = _ARG_SECOND[choice.cut_second][sgn]
    mag = abs(q) ** a
    return mag * (cmath.exp(1j * a * theta1) + cmath.exp(1j * a * theta2)) \
        / denom


@dataclass(frozen=True)
class BranchDeviation:
    choice: BranchChoice
    max_dev_positive: float  # sup over the q > 0 grid points
    max_dev_negative: float
    sup_dev: float


@dataclass(frozen=True)
class BranchDemoReport:
    alpha: float
    q_grid: list
    deviations: list  # one BranchDeviation per choice, all_choices() order


def branch_ambiguity_demo(order: FractionalOrder, q_grid) -> BranchDemoReport:
    """Sup-norm deviation of every cut assignment from |q|^alpha.

    Demonstrates that only the mixed assignment (first cut up, second
    cut down) matches |q|^alpha on the whole real axis, while each
    half-plane-analytic assignment deviates on one semi-axis.
    """
    qs = [float(q) for q in q_grid]
    if any(q == 0.0 for q in qs):
        raise DomainError("q grid must exclude the branch point 0")
    a = order.alpha
    deviations = []
    for choice in BranchChoice.all_choices():
        dev_pos = 0.0
        dev_neg = 0.0
        for q in qs:
            dev = abs(replacement_value(choice, order, q) - abs(q) ** a)
            if q > 0:
                dev_pos = max(dev_pos, dev)
            else:
                dev_neg = max(dev_neg, dev)
        deviations.append(BranchDeviation(
            choice, dev_pos, dev_neg, max(dev_pos, dev_neg)))
    return BranchDemoReport(alpha=a, q_grid=qs, deviations=deviations)


@dataclass(frozen=True)
class SweepFailure:
    alpha: float
    x: float
    message: str


@dataclass(frozen=True)
class ConsistencyReport:
    """Aligned closed-route vs. oracle-route values over an (alpha, x) grid."""

    grid: list  # (alpha, x) pairs that evaluated successfully
    closed_values: list
    oracle_values: list
    max_abs_diff: float
    max_rel_diff: float
    max_mixed_diff: float
    worst_point: tuple | None
    tolerance: float
    passed: bool
    failures: list = field(default_factory=list)

    def __post_init__(self):
        if not (len(self.grid) == len(self.closed_values)
                == len(self.oracle_values)):
            raise DomainError("report lists must stay aligned")


def consistency_sweep(alpha_list, x_list, well: WellConfig,
                      cfg: QuadratureSettings | None = None,
                      tolerance: float = 1e-6) -> ConsistencyReport:
    """End-to-end cross-validation of the two I(x) routes on a grid.

    Per-point failures (domain guards, convergence) are recorded and do
    not abort the sweep; ``passed`` reflects the mixed diff of every
    point that evaluated on both routes.
    """
    grid = []
    closed_vals = []
    oracle_vals = []
    failures = []
    for alpha in alpha_list:
        try:
            order = FractionalOrder(alpha)
        except RieszWellError as exc:
            failures.extend(SweepFailure(alpha, float(x), str(exc))
                            for x in x_list)
            continue
        for x in x_list:
            try:
                c = i_hybrid(order, well, x, cfg)
                o = i_direct(order, well, x, cfg)
            except RieszWellError as exc:
                failures.append(SweepFailure(alpha, float(x), str(exc)))
                continue
            grid.append((alpha, float(x)))
            closed_vals.append(c.value)
            oracle_vals.append(o.value)
    max_abs = 0.0
    max_rel = 0.0
    max_mixed = 0.0
    worst = None
    for point, cv, ov in zip(grid, closed_vals, oracle_vals):
        d = abs(cv - ov)
        max_abs = max(max_abs, d)
        if ov != 0.0:
            max_rel = max(max_rel, d / abs(ov))
        m = mixed_diff(cv, ov)
        if m > max_mixed:
            max_mixed = m
            worst = point
    return ConsistencyReport(
        grid=grid, closed_values=closed_vals, oracle_values=oracle_vals,
        max_abs_diff=max_abs, max_rel_diff=max_rel, max_mixed_diff=max_mixed,
        worst_point=worst, tolerance=tolerance,
        passed=max_mixed <= tolerance, failures=failures)
