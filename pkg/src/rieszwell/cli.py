"""Command-line front end: point evaluations, grid scans, figure-data
regeneration and the acceptance verification suite.

Output is deterministic byte-for-byte: CSV numbers carry 17 significant
digits, JSON records a ``schema: 1`` field, and nothing depends on
locale, environment variables or wall-clock time.  Exit codes: 0
success, 1 verification failure, 2 invalid input, 3 convergence failure.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import verification
from .analysis import boundary_residual, branch_ambiguity_demo, i_hybrid
from .closedform import BOUNDARY_WINDOW, FractionalOrder, WellConfig, \
    f_closed, i_closed
from .errors import ConvergenceError, DomainError
from .oracle import QuadratureSettings, f_direct, i_direct
from .specfun import upper_incomplete_gamma, upper_incomplete_gamma_oracle

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_NO_CONVERGENCE = 3

SCAN_I_HEADER = ["x", "i_closed", "i_oracle", "abs_diff", "method",
                 "degraded"]
SCAN_F_HEADER = ["alpha", "f_closed", "f_oracle", "abs_diff"]
ALPHA_SCAN_SKIP = 1e-3


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation parameters shared by the subcommands."""

    subcommand: str
    alpha: float = 0.5
    a: float = 1.0
    x: float = 0.0
    x_min: float = 0.0
    x_max: float = 3.0
    points: int = 301
    alpha_min: float = -0.9
    alpha_max: float = 0.9
    rel_tol: float = 1e-8
    format: str = "csv"
    out_path: str = "-"
    mirror: bool = False

    def __post_init__(self):
        if self.points < 1:
            raise DomainError("points must be >= 1")
        if self.x_max < self.x_min:
            raise DomainError("empty x range")
        if self.alpha_max < self.alpha_min:
            raise DomainError("empty alpha range")
        if self.format not in ("csv", "json"):
            raise DomainError(f"unknown format {self.format!r}")
        # constructing settings validates rel_tol
        QuadratureSettings(rel_tol=self.rel_tol)

    def settings(self) -> QuadratureSettings:
        return QuadratureSettings(rel_tol=self.rel_tol)


def _fmt(value) -> str:
    return format(float(value), ".17g")


def _fmt_bool(flag) -> str:
    return "true" if flag else "false"


def _emit(text: str, out_path: str) -> None:
    if out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", newline="") as handle:
            handle.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def _record_output(cfg, command, result) -> str:
    if cfg.format == "csv":
        return _csv_text(
            ["value", "err_estimate", "method", "degraded"],
            [[_fmt(result.value), _fmt(result.err_estimate), result.method,
              _fmt_bool(result.degraded)]])
    return _json_text({
        "schema": 1,
        "command": command,
        "value": float(result.value),
        "err_estimate": float(result.err_estimate),
        "method": result.method,
        "degraded": bool(result.degraded),
    })


def cmd_eval_i(cfg: RunConfig) -> int:
    order = FractionalOrder(cfg.alpha)
    well = WellConfig(a=cfg.a)
    result = i_hybrid(order, well, cfg.x, cfg.settings())
    _emit(_record_output(cfg, "eval-i", result), cfg.out_path)
    return EXIT_OK


def cmd_eval_f(cfg: RunConfig) -> int:
    result = f_closed(FractionalOrder(cfg.alpha))
    _emit(_record_output(cfg, "eval-f", result), cfg.out_path)
    return EXIT_OK


def cmd_residual(cfg: RunConfig) -> int:
    result = boundary_residual(FractionalOrder(cfg.alpha),
                               WellConfig(a=cfg.a))
    _emit(_record_output(cfg, "residual", result), cfg.out_path)
    return EXIT_OK


def _oracle_with_retry(order, well, x, settings):
    try:
        return i_direct(order, well, x, settings)
    except ConvergenceError:
        bigger = replace(settings, max_panels=2 * settings.max_panels,
                         tail_blocks=2 * settings.tail_blocks)
        return i_direct(order, well, x, bigger)


def cmd_scan_i(cfg: RunConfig) -> int:
    order = FractionalOrder(cfg.alpha)
    well = WellConfig(a=cfg.a)
    settings = cfg.settings()
    xs = np.linspace(cfg.x_min, cfg.x_max, cfg.points)
    if cfg.mirror:
        xs = np.unique(np.concatenate([-xs, xs]))
    rows = []
    records = []
    for x in (float(v) for v in xs):
        closed = i_closed(order, well, x)
        oracle = _oracle_with_retry(order, well, x, settings)
        xt = abs(x) / well.a
        method = "closed" if (xt == 1.0 or abs(1.0 - xt) >= BOUNDARY_WINDOW) \
            else "oracle"
        diff = abs(closed.value - oracle.value)
        rows.append([_fmt(x), _fmt(closed.value), _fmt(oracle.value),
                     _fmt(diff), method, _fmt_bool(closed.degraded)])
        records.append({
            "x": x, "i_closed": float(closed.value),
            "i_oracle": float(oracle.value), "abs_diff": float(diff),
            "method": method, "degraded": bool(closed.degraded)})
    if cfg.format == "csv":
        _emit(_csv_text(SCAN_I_HEADER, rows), cfg.out_path)
    else:
        _emit(_json_text({"schema": 1, "command": "scan-i",
                          "rows": records}), cfg.out_path)
    return EXIT_OK


def cmd_scan_f(cfg: RunConfig) -> int:
    settings = cfg.settings()
    alphas = [float(a) for a in
              np.linspace(cfg.alpha_min, cfg.alpha_max, cfg.points)
              if abs(a) >= ALPHA_SCAN_SKIP]
    if not alphas:
        raise DomainError("alpha grid is empty after the exclusion window")
    rows = []
    records = []
    for alpha in alphas:
        order = FractionalOrder(alpha)
        closed = f_closed(order)
        oracle = f_direct(order, settings)
        diff = abs(closed.value - oracle.value)
        rows.append([_fmt(alpha), _fmt(closed.value), _fmt(oracle.value),
                     _fmt(diff)])
        records.append({
            "alpha": alpha, "f_closed": float(closed.value),
            "f_oracle": float(oracle.value), "abs_diff": float(diff)})
    if cfg.format == "csv":
        _emit(_csv_text(SCAN_F_HEADER, rows), cfg.out_path)
    else:
        _emit(_json_text({"schema": 1, "command": "scan-f",
                          "rows": records}), cfg.out_path)
    return EXIT_OK


def cmd_gamma_inc(cfg: RunConfig, s: float, z_re: float, z_im: float) -> int:
    settings = cfg.settings()
    z = complex(z_re, z_im)
    value = upper_incomplete_gamma(s, z)
    if z != 0 and z.real >= 0.0:
        oracle = upper_incomplete_gamma_oracle(s, z, settings)
        diff = abs(value - oracle)
    else:
        oracle = None
        diff = None
    if cfg.format == "csv":
        row = [_fmt(s), _fmt(z_re), _fmt(z_im), _fmt(value.real),
               _fmt(value.imag)]
        row.extend(["", "", ""] if oracle is None else
                   [_fmt(oracle.real), _fmt(oracle.imag), _fmt(diff)])
        text = _csv_text(["s", "z_re", "z_im", "value_re", "value_im",
                          "oracle_re", "oracle_im", "abs_diff"], [row])
    else:
        text = _json_text({
            "schema": 1, "command": "gamma-inc", "s": s,
            "z": {"re": z_re, "im": z_im},
            "value": {"re": value.real, "im": value.imag},
            "oracle": None if oracle is None else
            {"re": oracle.real, "im": oracle.imag},
            "abs_diff": diff})
    _emit(text, cfg.out_path)
    return EXIT_OK


def cmd_branch_demo(cfg: RunConfig, q_values: str) -> int:
    try:
        qs = [float(tok) for tok in q_values.split(",") if tok.strip()]
    except ValueError as exc:
        raise DomainError(f"bad q grid {q_values!r}") from exc
    report = branch_ambiguity_demo(FractionalOrder(cfg.alpha), qs)
    if cfg.format == "csv":
        rows = [[d.choice.cut_first, d.choice.cut_second,
                 _fmt(d.max_dev_positive), _fmt(d.max_dev_negative),
                 _fmt(d.sup_dev)] for d in report.deviations]
        text = _csv_text(["cut_first", "cut_second", "max_dev_positive",
                          "max_dev_negative", "sup_dev"], rows)
    else:
        text = _json_text({
            "schema": 1, "command": "branch-demo", "alpha": report.alpha,
            "q_grid": report.q_grid,
            "choices": [{
                "cut_first": d.choice.cut_first,
                "cut_second": d.choice.cut_second,
                "max_dev_positive": d.max_dev_positive,
                "max_dev_negative": d.max_dev_negative,
                "sup_dev": d.sup_dev} for d in report.deviations]})
    _emit(text, cfg.out_path)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, alpha_probe: float | None) -> int:
    if alpha_probe is not None:
        FractionalOrder(alpha_probe)  # DomainError -> exit 2
    results = verification.run_all()
    for result in results:
        print(result.line(), file=sys.stderr)
    _emit(_json_text(verification.report_dict(results)), cfg.out_path)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rieszwell",
        description="Cross-validated evaluation of the Riesz fractional "
                    "derivative of the truncated-cosine square-well state.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, points=301):
        p.add_argument("--rel-tol", type=float, default=1e-8,
                       help="oracle quadrature relative tolerance")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default="-",
                       help="output path, '-' for standard output")

    p = sub.add_parser("eval-i", help="evaluate I(x) (boundary-safe route)")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--x", type=float, required=True)
    add_common(p)

    p = sub.add_parser("eval-f", help="evaluate the edge value f(alpha)")
    p.add_argument("--alpha", type=float, required=True)
    add_common(p)

    p = sub.add_parser("residual",
                       help="Riesz derivative of the candidate at x = a")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--a", type=float, default=1.0)
    add_common(p)

    p = sub.add_parser("scan-i",
                       help="scan I(x) on an x grid (figure-2 preset)")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--x-min", type=float, default=0.0)
    p.add_argument("--x-max", type=float, default=3.0)
    p.add_argument("--points", type=int, default=301)
    p.add_argument("--mirror", action="store_true",
                   help="also emit the mirrored negative-x rows")
    add_common(p)

    p = sub.add_parser("scan-f",
                       help="scan f(alpha) on an alpha grid (figure-3 preset)")
    p.add_argument("--alpha-min", type=float, default=-0.9)
    p.add_argument("--alpha-max", type=float, default=0.9)
    p.add_argument("--points", type=int, default=73)
    add_common(p)

    p = sub.add_parser("gamma-inc",
                       help="debug: upper incomplete Gamma, both routes")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--re", type=float, default=0.0)
    p.add_argument("--im", type=float, default=0.0)
    add_common(p)

    p = sub.add_parser("branch-demo",
                       help="deviation of each branch-cut assignment from "
                            "|q|^alpha")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--q", default="0.5,-0.5,1,-1,2,-2",
                   help="comma-separated real grid (no zeros)")
    add_common(p)

    p = sub.add_parser("verify", help="run the acceptance criteria suite")
    p.add_argument("--alpha-probe", type=float, default=None,
                   help="validate this alpha against the domain guards "
                            "before running")
    add_common(p)

    return parser


def _config_from_args(args) -> RunConfig:
    fields = dict(subcommand=args.command)
    for src, dst in (("alpha", "alpha"), ("a", "a"), ("x", "x"),
                     ("x_min", "x_min"), ("x_max", "x_max"),
                     ("points", "points"), ("alpha_min", "alpha_min"),
                     ("alpha_max", "alpha_max"), ("rel_tol", "rel_tol"),
                     ("format", "format"), ("out", "out_path"),
                     ("mirror", "mirror")):
        if hasattr(args, src):
            fields[dst] = getattr(args, src)
    return RunConfig(**fields)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    try:
        cfg = _config_from_args(args)
        if args.command == "eval-i":
            return cmd_eval_i(cfg)
        if args.command == "eval-f":
            return cmd_eval_f(cfg)
        if args.command == "residual":
            return cmd_residual(cfg)
        if args.command == "scan-i":
            return cmd_scan_i(cfg)
        if args.command == "scan-f":
            return cmd_scan_f(cfg)
        if args.command == "gamma-inc":
            return cmd_gamma_inc(cfg, args.s, args.re, args.im)
        if args.command == "branch-demo":
            return cmd_branch_demo(cfg, args.q)
        if args.command == "verify":
            return cmd_verify(cfg, args.alpha_probe)
        raise DomainError(f"unknown command {args.command!r}")
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
