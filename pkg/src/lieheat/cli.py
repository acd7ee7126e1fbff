"""Command-line front end: ``describe``, ``trace``, ``kernel`` and ``verify``.

Exit codes: 0 success, 1 failed identity check, 2 usage error, 3 point outside
the chart or Weyl-singular.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from .errors import DomainError, GroupSpecError
from .geometry import scalar_curvature
from .kernels import kernel_compare
from .liealg import casimir_trace, parse_group_spec
from .spectrum import spectral_model, trace_curve
from .verify import ALL_GROUPS, verify

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False)


def _emit(payload, out: str | None = None) -> None:
    text = _dumps(payload) + "\n"
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    sys.stdout.write(text)


def _threads() -> int:
    raw = os.environ.get("LIEHEAT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def cmd_describe(args) -> int:
    spec = parse_group_spec(args.group, args.scale)
    model = spectral_model(spec)
    alg, rs = model.alg, model.rs
    tr = casimir_trace(alg)
    sc = scalar_curvature(alg)
    kostant = tr + 24.0 * rs.rho_norm2
    curvature_res = sc.value + 0.25 * tr
    payload = {
        "casimir_trace": tr,
        "dim": alg.n,
        "fundamental_weights": [] if rs.abelian else rs.fundamental_weights.tolist(),
        "group": args.group,
        "identities": {"kostant_residual": kostant, "lemma34_residual": curvature_res},
        "metric_scale": spec.metric_scale,
        "rank": rs.rank,
        "rho_norm2": rs.rho_norm2,
        "roots": rs.roots.tolist(),
        "scalar_curvature": sc.value,
    }
    _emit(payload)
    ok = abs(kostant) <= 1e-9 * max(abs(tr), 1e-300) or kostant == 0
    ok = ok and abs(curvature_res) <= 1e-10
    return EXIT_OK if ok else EXIT_CHECK


def cmd_trace(args) -> int:
    spec = parse_group_spec(args.group, args.scale)
    if not args.t_min < args.t_max and args.steps > 1:
        raise GroupSpecError("--t-min must be below --t-max")
    ts = np.linspace(args.t_min, args.t_max, args.steps) if args.steps > 1 else np.array([args.t_min])
    curve = trace_curve(spec, ts, args.tail_eps)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["t", "Z", "vhat", "tail_bound"])
    for row in zip(curve.t_values, curve.Z, curve.vhat, curve.tail_bound):
        writer.writerow([f"{v:.17g}" for v in row])
    return EXIT_OK


def cmd_kernel(args) -> int:
    spec = parse_group_spec(args.group, args.scale)
    try:
        point = [float(v) for v in args.point.split(",") if v.strip()]
    except ValueError:
        raise GroupSpecError(f"bad --point {args.point!r}") from None
    model = spectral_model(spec)
    if len(point) != model.rs.rank:
        raise GroupSpecError(f"--point needs {model.rs.rank} Cartan coordinates, got {len(point)}")
    comp = kernel_compare(spec, point, args.t, args.tail_eps)
    _emit(
        {
            "asymptotic_ratio": comp.asymptotic_ratio,
            "rel_diff": comp.rel_diff,
            "spectral_ratio": comp.spectral_ratio,
            "tail_bound": comp.tail_bound,
        }
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.group == "all":
        groups = [parse_group_spec(g, args.scale) for g in ALL_GROUPS]
    else:
        groups = [parse_group_spec(args.group, args.scale)]
    result = verify(groups, seed=args.seed, threads=_threads())
    if args.group == "all":
        payload = result
    else:
        payload = dict(result["groups"][0], seed=args.seed)
    _emit(payload, args.out)
    return EXIT_OK if result["overall"] else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lieheat", description="Heat-kernel invariants of compact Lie groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--group", required=True, help="torus:<rank>, su2, so3 or su3")
        p.add_argument("--scale", type=_positive, default=1.0, help="metric scale s (default 1)")

    p = sub.add_parser("describe", help="algebraic and curvature invariants as JSON")
    common(p)
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("trace", help="heat trace and normalised trace on a t grid as CSV")
    common(p)
    p.add_argument("--t-min", type=_positive, default=0.05)
    p.add_argument("--t-max", type=_positive, default=0.2)
    p.add_argument("--steps", type=int, default=16)
    p.add_argument("--tail-eps", type=_positive, default=1e-12)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("kernel", help="spectral vs asymptotic kernel ratio at a Cartan point")
    common(p)
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--point", required=True, help="comma-separated Cartan coordinates")
    p.add_argument("--tail-eps", type=_positive, default=1e-12)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("verify", help="run every identity check and emit a JSON report")
    p.add_argument("--group", required=True, help="group spec or 'all'")
    p.add_argument("--scale", type=_positive, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="also write the report to this path")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "steps", 1) < 1:
        parser.error("--steps must be at least 1")
    try:
        return args.func(args)
    except GroupSpecError as exc:
        print(f"lieheat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"lieheat: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
