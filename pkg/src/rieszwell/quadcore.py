"""Deterministic quadrature machinery shared by the oracle routes.

Three building blocks:

* a globally adaptive Gauss-Legendre panel integrator (15-point value,
  7-point embedded error estimate, worst-panel-first refinement),
* geometric mesh grading toward an algebraic endpoint singularity,
* Wynn's epsilon algorithm for accelerating block partial sums of
  oscillatory semi-infinite tails.

Everything here is pure and seed-free; panel values are combined with
``math.fsum`` in interval order so repeated runs are bit-identical.
"""

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError

_GL_HI_NODES, _GL_HI_WEIGHTS = np.polynomial.legendre.leggauss(15)
_GL_LO_NODES, _GL_LO_WEIGHTS = np.polynomial.legendre.leggauss(7)
_EVALS_PER_PANEL = _GL_HI_NODES.size + _GL_LO_NODES.size


@dataclass(frozen=True)
class QuadratureSettings:
    """Tolerances and budgets for the quadrature oracles.

    ``sing_window`` is the half-width (in units of x/a around 1) inside
    which the oscillatory tail degenerates and the boundary-safe path is
    taken; ``accel_depth`` caps the order of the epsilon table.
    """

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_panels: int = 10_000
    tail_blocks: int = 200
    accel_depth: int = 12
    sing_window: float = 0.1

    def __post_init__(self):
        if self.rel_tol < 1e-14:
            raise DomainError("rel_tol must be >= 1e-14")
        for name in ("rel_tol", "abs_tol", "sing_window"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"{name} must be positive")
        for name in ("max_panels", "tail_blocks", "accel_depth"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} must be a positive count")


def _ordered_sum(pairs):
    """Sum panel values in interval order; exact compensated summation."""
    pairs = sorted(pairs, key=lambda p: p[0])
    values = [p[1] for p in pairs]
    if values and isinstance(values[0], complex):
        return complex(math.fsum(v.real for v in values),
                       math.fsum(v.imag for v in values))
    return math.fsum(values)


def _eval_panels(f, lows, highs):
    """Gauss-Legendre 15/7 values and error estimates for a batch of panels.

    Returns (values, errors, n_evals); values are Python scalars.
    """
    lows = np.asarray(lows, dtype=float)
    highs = np.asarray(highs, dtype=float)
    mids = 0.5 * (lows + highs)
    halfs = 0.5 * (highs - lows)
    x_hi = mids[:, None] + halfs[:, None] * _GL_HI_NODES[None, :]
    y_hi = f(x_hi.ravel()).reshape(x_hi.shape)
    v_hi = halfs * (y_hi @ _GL_HI_WEIGHTS)
    x_lo = mids[:, None] + halfs[:, None] * _GL_LO_NODES[None, :]
    y_lo = f(x_lo.ravel()).reshape(x_lo.shape)
    v_lo = halfs * (y_lo @ _GL_LO_WEIGHTS)
    errors = np.abs(v_hi - v_lo)
    values = [v.item() for v in v_hi]
    return values, [e.item() for e in errors], lows.size * _EVALS_PER_PANEL


def integrate_adaptive(f, breakpoints, *, rel_tol, abs_tol, max_panels):
    """Globally adaptive quadrature of ``f`` over the breakpoint mesh.

    ``f`` must map a 1-D ndarray of abscissae to an ndarray of values
    (real or complex).  The worst panel (largest 15-vs-7 point
    discrepancy) is bisected until the summed estimate meets
    ``max(abs_tol, rel_tol * |integral|)`` or the panel budget is spent.

    Returns ``(value, err_estimate, n_evals)``；raises ConvergenceError
    (carrying the best value) only when the budget is exhausted and the
    estimate is worse than 10x the target.
    """
    points = sorted(set(float(b) for b in breakpoints))
    if len(points) < 2:
        raise DomainError("need at least two distinct breakpoints")
    lows = points[:-1]
    highs = points[1:]
    values, errors, n_evals = _eval_panels(f, lows, highs)
    counter = 0
    heap = []
    for lo, hi, v, e in zip(lows, highs, values, errors):
        heap.append((-e, counter, lo, hi, v))
        counter += 1
    heapq.heapify(heap)
    finished = []  # panels at floating-point resolution, never re-split

    n_panels = len(heap)
    total = sum(values)
    total_err = math.fsum(errors)
    while heap:
        target = max(abs_tol, rel_tol * abs(total))
        if total_err <= target or n_panels >= max_panels:
            break
        neg_e, _, lo, hi, v = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            finished.append((lo, hi, v, -neg_e))
            continue
        vals, errs, ne = _eval_panels(f, [lo, mid], [mid, hi])
        n_evals += ne
        total += vals[0] + vals[1] - v
        total_err += errs[0] + errs[1] - (-neg_e)
        heapq.heappush(heap, (-errs[0], counter, lo, mid, vals[0]))
        counter += 1
        heapq.heappush(heap, (-errs[1], counter, mid, hi, vals[1]))
        counter += 1
        n_panels += 1

    panels = [(item[2], item[4]) for item in heap]
    panels.extend((p[0], p[2]) for p in finished)
    value = _ordered_sum(panels)
    err = math.fsum(-item[0] for item in heap) + \
        math.fsum(p[3] for p in finished)
    if err > 10.0 * max(abs_tol, rel_tol * abs(value)):
        raise ConvergenceError(
            f"adaptive quadrature stalled at error {err:.3e} "
            f"with {n_panels} panels",
            best=value, achieved_error=err)
    return value, err, n_evals


def graded_mesh(lo, hi, singular_exponent, abs_tol, *, amp_bound=1.0,
                max_levels=600):
    """Breakpoints on [lo, hi] refined geometrically toward ``lo``.

    The integrand is assumed to behave like ``amp_bound * (x-lo)**a``
    near ``lo`` with ``a = singular_exponent > -1``; the cell touching
    ``lo`` is shrunk until its total contribution bound
    ``amp_bound * h**(1+a) / (1+a)`` drops below ``abs_tol``.
    """
    a = float(singular_exponent)
    if a <= -1.0:
        raise DomainError("endpoint exponent must exceed -1")
    width = hi - lo
    if width <= 0.0:
        raise DomainError("empty interval")
    try:
        h_target = (abs_tol * (1.0 + a) / amp_bound) ** (1.0 / (1.0 + a))
    except OverflowError:
        h_target = 0.0
    if h_target <= 0.0:
        levels = max_levels
    elif h_target >= width:
        levels = 1
    else:
        levels = min(max_levels, int(math.ceil(math.log2(width / h_target))))
    points = [lo]
    points.extend(lo + width * 2.0 ** (-k) for k in range(levels, 0, -1))
    points.append(hi)
    return points


def geometric_ladder(lo, hi, ratio=2.0):
    """Breakpoints [lo, lo*r, lo*r^2, ..., hi] for wide decaying ranges."""
    if lo <= 0.0 or hi <= lo:
        raise DomainError("ladder needs 0 < lo < hi")
    points = [lo]
    x = lo
    while x * ratio < hi:
        x *= ratio
        points.append(x)
    points.append(hi)
    return points


def epsilon_extrapolate(partial_sums, max_depth):
    """Limit estimate for a sequence of partial sums via Wynn's epsilon.

    Walks the even columns of the epsilon table up to order
    ``2*max_depth`` and returns the entry with the smallest
    last-difference, which guards against the noise blow-up deep
    columns suffer once roundoff dominates.  Returns ``(value, err)``.
    """
    sums = [float(s) for s in partial_sums]
    n = len(sums)
    if n == 0:
        raise DomainError("empty sequence")
    if n == 1:
        return sums[0], math.inf
    best = sums[-1]
    best_err = abs(sums[-1] - sums[-2])
    prev = [0.0] * (n + 1)
    cur = sums
    for col in range(1, 2 * max_depth + 1):
        if len(cur) < 2:
            break
        nxt = []
        for i in range(len(cur) - 1):
            d = cur[i + 1] - cur[i]
            if d == 0.0:
                # stalled difference: the sequence has converged here
                return cur[i + 1], abs(cur[i + 1]) * 5e-16
            nxt.append(prev[i + 1] + 1.0 / d)
        prev, cur = cur, nxt
        if col % 2 == 0 and len(cur) >= 2:
            err = abs(cur[-1] - cur[-2])
            if err < best_err:
                best, best_err = cur[-1], err
    return best, max(best_err, abs(best) * 5e-16)


def accelerated_block_tail(f, start, block_len, cfg, *, target_abs):
    """Oscillatory tail ``int_start^inf f`` via half-period block sums.

    Blocks of length ``block_len`` (half-period of the fastest cosine in
    ``f``) are integrated adaptively and their partial sums extrapolated
    with the epsilon algorithm after every block.  The reported error
    combines the extrapolation-table estimate with the accumulated block
    quadrature errors.
    """
    if block_len <= 0.0:
        raise DomainError("block length must be positive")
    sums = []
    running = 0.0
    quad_err = 0.0
    n_evals = 0
    best_val = None
    best_err = math.inf
    for j in range(cfg.tail_blocks):
        lo = start + j * block_len
        hi = lo + block_len
        block_budget = max(target_abs / (2.0 * (j + 1) * (j + 2)), 1e-16)
        bps = geometric_ladder(lo, hi) if hi > 2.0 * lo else [lo, hi]
        v, e, ne = integrate_adaptive(
            f, bps, rel_tol=cfg.rel_tol, abs_tol=block_budget,
            max_panels=max(cfg.max_panels // 10, 64))
        running += v
        quad_err += e
        n_evals += ne
        sums.append(running)
        if len(sums) >= 5:
            val, err = epsilon_extrapolate(sums, cfg.accel_depth)
            err += quad_err
            if err < best_err:
                best_val, best_err = val, err
            if best_err <= target_abs:
                return best_val, best_err, n_evals, j + 1
    raise ConvergenceError(
        f"oscillatory tail not converged after {cfg.tail_blocks} blocks "
        f"(achieved {best_err:.3e}, wanted {target_abs:.3e})",
        best=best_val, achieved_error=best_err)
