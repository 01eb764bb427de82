#!/usr/bin/env python3
"""Benchmark the compiled Monte-Carlo kernel against the numpy fallback.

Both backends consume identical normal draws and must produce bit-identical
default times; the benchmark verifies that before timing.  Run as

    python benchmarks/bench_mc.py [--paths N] [--steps N] [--repeat N]
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import numpy as np

from mfcev.core import ModelParams
from mfcev.mc import McConfig, have_compiled_kernel, simulate_fpt


def time_backend(params, cfg, backend, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = simulate_fpt(params, cfg, backend=backend)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--paths", type=int, default=100_000)
    parser.add_argument("--steps", type=int, default=1000)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=12345)
    args = parser.parse_args()

    params = ModelParams(r=0.05, sigma0=0.2, alpha=-2.0, beta=0.5,
                         hurst=0.8, s0=50.0)
    cfg = McConfig(n_paths=args.paths, n_steps=args.steps, horizon=2.0,
                   seed=args.seed)
    path_steps = args.paths * args.steps

    print(f"paths={args.paths}  steps={args.steps}  "
          f"({path_steps / 1e6:.0f}M path-steps, best of {args.repeat})")

    t_python, r_python = time_backend(params, cfg, "python", args.repeat)
    print(f"  python fallback : {t_python:8.3f} s   "
          f"{path_steps / t_python / 1e6:7.1f} M path-steps/s")

    if not have_compiled_kernel():
        print("  compiled kernel : not built (run `python setup.py build_ext --inplace`)")
        return 0

    t_compiled, r_compiled = time_backend(params, cfg, "compiled", args.repeat)
    print(f"  compiled kernel : {t_compiled:8.3f} s   "
          f"{path_steps / t_compiled / 1e6:7.1f} M path-steps/s")
    identical = np.array_equal(r_python, r_compiled, equal_nan=True)
    print(f"  speedup         : {t_python / t_compiled:8.2f} x")
    print(f"  results         : {'bit-identical' if identical else 'MISMATCH'}")
    return 0 if identical else 1


if __name__ == "__main__":
    sys.exit(main())
