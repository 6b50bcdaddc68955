"""Time the hot kernels on the compiled path and on the numpy fallback.

Each path runs in its own interpreter because ISOPENCIL_NO_NUMBA is read at import.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from isopencil import USE_NUMBA
from isopencil.numrange import sweep_eigenvalues, range_polygon
from isopencil.words import word_trace_sum
from isopencil.lax import integrate_U

repeat = int(sys.argv[1])
rng = np.random.default_rng(0)
B6 = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
B4 = np.array([[0, 1, 1, 0], [0, 0, 1, -1], [0, 0, 0, 1], [0, 0, 0, 0]], dtype=complex)
cases = {
    "sweep 6x6, 720 angles": lambda: sweep_eigenvalues(B6, 720),
    "polygon k=2, 720 angles": lambda: range_polygon(B6, 2, 720),
    "word sum (12, 5), 6x6": lambda: word_trace_sum(B6, 12, 5),
    "lax 4x4, 200 steps": lambda: integrate_U(B4, 200),
}
out = {"numba": USE_NUMBA}
for name, fn in cases.items():
    fn()  # compile / warm caches
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out[name] = best
print(json.dumps(out))
"""


def run(flag, repeat):
    env = dict(os.environ, ISOPENCIL_NO_NUMBA=flag)
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast, slow = run("0", args.repeat), run("1", args.repeat)
    names = [k for k in fast if k != "numba"]
    width = max(map(len, names))
    print(f"{'kernel':<{width}}  {'numba [s]':>10}  {'numpy [s]':>10}  {'speedup':>8}")
    for name in names:
        print(f"{name:<{width}}  {fast[name]:>10.4f}  {slow[name]:>10.4f}  {slow[name] / fast[name]:>7.1f}x")


if __name__ == "__main__":
    main()
