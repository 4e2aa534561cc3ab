"""Direct-quadrature route for the three defining integrals.

These evaluations never touch the incomplete-Gamma machinery: they are
the independent ground truth the closed forms are validated against.
The common structure is

* a pole-free rewrite of the integrand (the apparent singularity at
  q = 1 is removable: the cosine zero cancels the denominator zero),
* a graded adaptive head on [0, start] absorbing the q**alpha endpoint,
* an oscillatory tail summed in half-period blocks and extrapolated
  with the epsilon algorithm.

When one of the two cosine frequencies degenerates (|x| near the well
edge a) the product-block scheme stalls; the tail is then split into a
monotone part, mapped onto (0, 1] by q = start/t, plus a cleanly
alternating part.  The split is legal there because the tail region
q >= start contains no pole.
"""

import math
from dataclasses import dataclass

import numpy as np

from .closedform import FractionalOrder, WellConfig
from .errors import ConvergenceError, DomainError
from .results import EvalResult, METHOD_ORACLE
from .quadcore import (QuadratureSettings, accelerated_block_tail,
                       geometric_ladder, graded_mesh, integrate_adaptive)

__all__ = [
    "QuadratureSettings", "OscillatoryTailSpec", "stable_kernel_g",
    "i_direct", "f_direct", "k_direct",
]

TAIL_START = 4.0


@dataclass(frozen=True)
class OscillatoryTailSpec:
    """Structure of the semi-infinite tail of the I(x) integrand.

    ``frequencies`` are the rates pi(1 -+ x/a)/2 of the two cosine
    components; ``decay_exponent`` (= alpha - 2 < -1) guarantees
    absolute convergence.
    """

    frequencies: tuple[float, float]
    decay_exponent: float
    start: float = TAIL_START

    def __post_init__(self):
        if any(w < 0.0 for w in self.frequencies):
            raise DomainError("frequencies must be non-negative")
        if not self.decay_exponent < -1.0:
            raise DomainError("tail must decay faster than 1/q")
        if self.start <= 1.0:
            raise DomainError("tail must start beyond the q = 1 point")


def stable_kernel_g(q):
    """cos(pi q/2)/(q**2 - 1) in its pole-free form.

    Identical to -(pi/2) sinc(pi (q-1)/2) / (q+1) where
    sinc(u) = sin(u)/u; smooth through q = 1 (value -pi/4 there).
    Accepts scalars or ndarrays.
    """
    arr = np.asarray(q, dtype=float)
    out = -(0.5 * np.pi) * np.sinc(0.5 * (arr - 1.0)) / (arr + 1.0)
    if np.isscalar(q) or arr.ndim == 0:
        return float(out)
    return out


def _squared_kernel(p):
    # cos(pi p/2)**2/(p**2-1) == (pi/2)**2 (p-1) sinc(pi(p-1)/2)**2/(p+1)
    return (0.25 * np.pi ** 2) * (p - 1.0) * np.sinc(0.5 * (p - 1.0)) ** 2 \
        / (p + 1.0)


def _monotone_tail(a, start, cfg, target_abs):
    """int_start^inf q^a/(q^2-1) dq via the substitution q = start/t."""
    scale = start ** (a + 1.0)

    def integrand(t):
        return scale * np.power(t, -a) / (start * start - t * t)

    amp = start ** (a - 1.0)
    bps = graded_mesh(0.0, 1.0, -a, 0.1 * target_abs, amp_bound=amp)
    return integrate_adaptive(integrand, bps, rel_tol=cfg.rel_tol,
                              abs_tol=target_abs, max_panels=cfg.max_panels)


def _oscillatory_component_tail(a, w, start, cfg, target_abs):
    """int_start^inf q^a cos(w q)/(q^2-1) dq, blocks of the half period."""

    def integrand(q):
        return np.power(q, a) * np.cos(w * q) / (q * q - 1.0)

    value, err, n_evals, _ = accelerated_block_tail(
        integrand, start, math.pi / w, cfg, target_abs=target_abs)
    return value, err, n_evals


def _i_tail(a, xt, spec, cfg, target_abs):
    """Tail of the I(x) integrand beyond ``spec.start``.

    Beyond the pole the product of cosines splits safely:
    2 cos(pi q/2) cos(pi xt q/2) = cos(w_lo q) + cos(w_hi q), and each
    single-frequency component produces cleanly alternating block sums
    that the epsilon table extrapolates reliably.  (Block sums of the
    two-frequency product carry a second, slowly rotating transient
    that defeats the extrapolation when the frequencies are well
    separated.)  A vanishing w_lo (|x| at the well edge) degenerates to
    a monotone component, mapped onto (0, 1] by q = start/t.
    """
    w_lo, w_hi = sorted(spec.frequencies)
    start = spec.start
    if w_lo == w_hi:
        # x = 0: the two components coincide; integrate 2 cos(w q) once
        def integrand(q):
            return 2.0 * np.power(q, a) * np.cos(w_lo * q) / (q * q - 1.0)

        value, err, n_evals, _ = accelerated_block_tail(
            integrand, start, math.pi / w_hi, cfg, target_abs=target_abs)
        return value, err, n_evals
    if w_lo == 0.0:
        v_lo, e_lo, n_lo = _monotone_tail(a, start, cfg, 0.5 * target_abs)
    else:
        v_lo, e_lo, n_lo = _oscillatory_component_tail(
            a, w_lo, start, cfg, 0.5 * target_abs)
    v_hi, e_hi, n_hi = _oscillatory_component_tail(
        a, w_hi, start, cfg, 0.5 * target_abs)
    return v_lo + v_hi, e_lo + e_hi, n_lo + n_hi


def i_direct(order: FractionalOrder, well: WellConfig, x: float,
             cfg: QuadratureSettings | None = None) -> EvalResult:
    """I(x) = 2 int_0^inf q^alpha g(q) cos(pi q x / 2a) dq by quadrature.

    Even in x (the integrand is even), so evaluated at |x|/a.
    """
    if cfg is None:
        cfg = QuadratureSettings()
    a = order.alpha
    xt = abs(x) / well.a
    spec = OscillatoryTailSpec(
        frequencies=(0.5 * math.pi * abs(1.0 - xt), 0.5 * math.pi * (1.0 + xt)),
        decay_exponent=a - 2.0)

    def head_integrand(q):
        return 2.0 * np.power(q, a) * stable_kernel_g(q) \
            * np.cos(0.5 * np.pi * xt * q)

    bps = graded_mesh(0.0, spec.start, a, 0.25 * cfg.abs_tol, amp_bound=2.0)
    head, head_err, n_head = integrate_adaptive(
        head_integrand, bps, rel_tol=0.5 * cfg.rel_tol,
        abs_tol=0.5 * cfg.abs_tol, max_panels=cfg.max_panels)
    target = 0.5 * max(cfg.abs_tol, cfg.rel_tol * max(abs(head), 0.25))
    try:
        tail, tail_err, n_tail = _i_tail(a, xt, spec, cfg, target)
    except ConvergenceError as exc:
        best = head + exc.best if exc.best is not None else head
        raise ConvergenceError(
            f"I({x}) tail did not converge: {exc}", best=best,
            achieved_error=head_err + (exc.achieved_error or math.inf)
        ) from exc
    return EvalResult(head + tail, err_estimate=head_err + tail_err,
                      method=METHOD_ORACLE, n_evals=n_head + n_tail)


def f_direct(order: FractionalOrder,
             cfg: QuadratureSettings | None = None) -> EvalResult:
    """f(alpha) = int_0^inf p^alpha cos^2(pi p/2)/(p^2-1) dp by quadrature.

    The head uses the pole-free squared kernel; the tail splits
    cos^2 = (1 + cos(pi p))/2 into its monotone part (mapped onto
    (0, 1]) and a cleanly alternating part with period-1 blocks.
    """
    if cfg is None:
        cfg = QuadratureSettings()
    a = order.alpha
    start = TAIL_START

    def head_integrand(p):
        return np.power(p, a) * _squared_kernel(p)

    bps = graded_mesh(0.0, start, a, 0.25 * cfg.abs_tol, amp_bound=1.0)
    head, head_err, n_head = integrate_adaptive(
        head_integrand, bps, rel_tol=0.5 * cfg.rel_tol,
        abs_tol=0.5 * cfg.abs_tol, max_panels=cfg.max_panels)
    target = 0.5 * max(cfg.abs_tol, cfg.rel_tol * max(abs(head), 0.25))
    v_mono, e_mono, n_mono = _monotone_tail(a, start, cfg, 0.5 * target)
    v_osc, e_osc, n_osc = _oscillatory_component_tail(
        a, math.pi, start, cfg, 0.5 * target)
    value = head + 0.5 * (v_mono + v_osc)
    err = head_err + 0.5 * (e_mono + e_osc)
    return EvalResult(value, err_estimate=err, method=METHOD_ORACLE,
                      n_evals=n_head + n_mono + n_osc)


def k_direct(order: FractionalOrder, lam: float,
             cfg: QuadratureSettings | None = None) -> EvalResult:
    """K(lambda) = int_0^inf t^alpha e^(-lambda t)/(t^2+1) dt, lambda >= 0.

    Non-oscillatory: a graded head plus a geometric ladder out to a
    cutoff T with certified remainder bound
    T^(alpha-1) e^(-lambda T) / (1 - alpha), which is included in the
    reported error estimate.
    """
    if cfg is None:
        cfg = QuadratureSettings()
    if lam < 0.0:
        raise DomainError(f"lambda={lam} must be non-negative")
    a = order.alpha
    # coarse lower bound on K (integrand on [0, 1]) sets the relative scale
    scale = math.exp(-min(lam, 700.0)) / (2.0 * (1.0 + a))
    target = max(cfg.abs_tol, cfg.rel_tol * scale)

    t_max = TAIL_START
    while t_max < 1e100:
        bound = t_max ** (a - 1.0) / (1.0 - a) * math.exp(-min(lam * t_max,
                                                               745.0))
        if bound <= 0.25 * target:
            break
        t_max *= 2.0
    else:
        bound = t_max ** (a - 1.0) / (1.0 - a) * math.exp(-min(lam * t_max,
                                                               745.0))

    def integrand(t):
        return np.power(t, a) * np.exp(-lam * t) / (t * t + 1.0)

    bps = graded_mesh(0.0, 1.0, a, 0.1 * target, amp_bound=1.0)
    bps.extend(geometric_ladder(1.0, t_max))
    value, err, n_evals = integrate_adaptive(
        integrand, bps, rel_tol=cfg.rel_tol, abs_tol=0.5 * target,
        max_panels=cfg.max_panels)
    err += bound
    if err > 10.0 * max(cfg.abs_tol, cfg.rel_tol * abs(value)):
        raise ConvergenceError(
            f"K({lam}) achieved only {err:.3e}", best=value,
            achieved_error=err)
    return EvalResult(value, err_estimate=err, method=METHOD_ORACLE,
                      n_evals=n_evals)
