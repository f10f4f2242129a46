"""Time census workloads under the numba and pure-numpy backends.

Usage: python benchmarks/bench_backends.py [--repeat N]
Each backend runs in a fresh interpreter; numba compile time is reported separately.
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOAD = """
import json, time, rzspaces
from rzspaces import census as C
from rzspaces.newton import parse_newton
t = time.perf_counter()
C.enumerate_census(parse_newton("1:1"), 3, 1, (-1, 1))
warm = time.perf_counter() - t
out = {"backend": rzspaces.BACKEND, "warmup": warm}
for name, text, r, w in [("GSp4 (-1,1) F_3", "1:1,1:1", 1, (-1, 1)),
                         ("GSp4 (0,1) F_9", "1:1,1:1", 2, (0, 1)),
                         ("GSp6 (0,1) F_3", "1:1,1:1,1:1", 1, (0, 1))]:
    best = float("inf")
    for _ in range({repeat}):
        t = time.perf_counter()
        n = len(C.enumerate_census(parse_newton(text), 3, r, w))
        best = min(best, time.perf_counter() - t)
    out[name] = (best, n)
print(json.dumps(out))
"""


def run(flag, repeat):
    env = dict(os.environ, RZSPACES_NUMBA=flag)
    res = subprocess.run([sys.executable, "-c", WORKLOAD.replace("{repeat}", str(repeat))],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast, slow = run("1", args.repeat), run("0", args.repeat)
    print(f"{'workload':<18} {'records':>7} {'numba s':>9} {'numpy s':>9} {'speedup':>8}")
    for key in fast:
        if key in ("backend", "warmup"):
            continue
        (tf, n), (ts, m) = fast[key], slow[key]
        assert n == m, "backends disagree"
        print(f"{key:<18} {n:>7} {tf:>9.3f} {ts:>9.3f} {ts / tf:>7.2f}x")
    print(f"first-call time (includes numba compile): {fast['warmup']:.2f}s vs {slow['warmup']:.2f}s")


if __name__ == "__main__":
    main()
