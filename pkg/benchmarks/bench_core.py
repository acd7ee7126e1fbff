"""Time the compiled spectral-sum kernels against the numpy fallback.

    python benchmarks/bench_core.py --group su3 --t 0.02 --repeat 20
"""

from __future__ import annotations

import argparse
import json
import statistics
import time

import numpy as np

from lieheat import _fallback, parse_group_spec
from lieheat.spectrum import _cartan_args, choose_cutoff, spectral_model

try:
    from lieheat import _speedups
except ImportError:  # extension not built
    _speedups = None


def best_of(fn, repeat: int) -> tuple:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--group", default="su3")
    p.add_argument("--t", type=float, default=0.02)
    p.add_argument("--point", default="0.3,0.2")
    p.add_argument("--repeat", type=int, default=20)
    p.add_argument("--json", action="store_true", help="emit machine-readable results")
    args = p.parse_args(argv)

    model = spectral_model(parse_group_spec(args.group))
    cutoff, _ = choose_cutoff(model, args.t, 1e-12)
    tab = model.table(cutoff)
    h = [float(v) for v in args.point.split(",")][: model.rs.rank]
    hw, den = _cartan_args(model, h)
    signs = model.rs.weyl_signs.astype(float)
    mult = tab.dims_squared
    char_args = (tab.shifted, tab.dims, tab.casimir, hw, signs, den.real, den.imag, args.t)

    backends = {"python": _fallback}
    if _speedups is not None:
        backends["cython"] = _speedups

    rows = []
    values = {}
    for name, mod in backends.items():
        for kernel, call in (
            ("exp_weighted_sum", lambda m=mod: m.exp_weighted_sum(mult, tab.casimir, args.t)),
            ("character_sum", lambda m=mod: m.character_sum(*char_args)),
        ):
            values[(name, kernel)] = call()
            best, med = best_of(call, args.repeat)
            rows.append({"backend": name, "kernel": kernel, "best_s": best, "median_s": med})

    if args.json:
        print(json.dumps({"group": args.group, "t": args.t, "terms": len(tab.casimir), "results": rows}, indent=2))
    else:
        print(f"{args.group}  t={args.t}  terms={len(tab.casimir)}  cutoff={cutoff:g}")
        print(f"{'kernel':<18}{'backend':<9}{'best ms':>10}{'median ms':>11}")
        for r in rows:
            print(f"{r['kernel']:<18}{r['backend']:<9}{1e3 * r['best_s']:>10.3f}{1e3 * r['median_s']:>11.3f}")
        if "cython" in backends:
            for kernel in ("exp_weighted_sum", "character_sum"):
                py = min(r["best_s"] for r in rows if r["kernel"] == kernel and r["backend"] == "python")
                cy = min(r["best_s"] for r in rows if r["kernel"] == kernel and r["backend"] == "cython")
                diff = abs(values[("python", kernel)] - values[("cython", kernel)]) / abs(values[("python", kernel)])
                print(f"{kernel}: speedup x{py / cy:.1f}, relative difference {diff:.1e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
