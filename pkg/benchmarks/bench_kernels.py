#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the pure-Python fallback.

Times the kernel primitives and two end-to-end workloads (pre-image solves
and a region sweep) under each available backend. Backend selection happens
at import time, so each backend runs in a subprocess with CAUSTICA_BACKEND
set accordingly.

Usage:
    python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
import caustica as ca
from caustica import _kernels as K

quick = bool(int(sys.argv[1]))
results = {"backend": K.BACKEND_NAME}

def bench(name, fn, repeat):
    fn()  # warmup
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    results[name] = (time.perf_counter() - t0) / repeat

rng = np.random.default_rng(0)
coeffs = rng.standard_normal(9) + 1j * rng.standard_normal(9)
init = 2.0 * np.exp(2j * np.pi * (np.arange(8) + 0.3) / 8)
bench("aberth deg-8 (one poly)", lambda: K.aberth(coeffs, init.copy(), 1e-14, 200),
      200 if quick else 2000)

c = rng.standard_normal((3, 5)) + 1j * rng.standard_normal((3, 5))
bench("horner2 3x5 (1k evals)",
      lambda: [K.horner2(c, 0.3 + 0.1j, -0.2 + 0.7j) for _ in range(1000)],
      5 if quick else 50)

mats = rng.standard_normal((64, 3, 3)) + 1j * rng.standard_normal((64, 3, 3))
bench("det_many 64x(3x3)", lambda: K.det_many(mats), 50 if quick else 500)

m = ca.build_family(ca.family_e7(), {"c1": 0.3, "c2": -1.1, "c3": 0.7, "c4": 0.2})
targets = [(2.0 + 0.01 * k, -3.0 + 0.003 * k) for k in range(20 if quick else 100)]
bench("E7 pre-image solve (per target)",
      lambda: [ca.preimages(m, s) for s in targets], 1)
results["E7 pre-image solve (per target)"] /= len(targets)

mh = ca.build_family(ca.hyperbolic_umbilic(), {"c": 1.0})
res = 24 if quick else 48
bench(f"region sweep {res}x{res} (hyperbolic)",
      lambda: ca.classify_regions(mh, target_bbox=(0.0, 12.0, 0.0, 12.0), resolution=res), 1)

print(json.dumps(results))
"""


def run_backend(backend, quick):
    env = dict(os.environ, CAUSTICA_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-c", WORKER, str(int(quick))],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="fewer repetitions")
    args = ap.parse_args()

    import caustica

    backends = caustica.available_backends()
    if "cython" not in backends:
        print("note: compiled backend not built; benchmarking pure Python only")
    rows = [run_backend(b, args.quick) for b in ("cython", "python") if b in backends]

    names = [k for k in rows[0] if k != "backend"]
    width = max(len(n) for n in names) + 2
    header = f"{'workload':<{width}}" + "".join(f"{r['backend']:>14}" for r in rows)
    if len(rows) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name in names:
        line = f"{name:<{width}}"
        for r in rows:
            line += f"{r[name] * 1e3:>12.3f}ms"
        if len(rows) == 2:
            line += f"{rows[1][name] / rows[0][name]:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
