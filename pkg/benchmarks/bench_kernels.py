"""Compare the compiled and pure-Python bva kernels.

    python3 benchmarks/bench_kernels.py --n 20 40 60 --repeat 3
"""

import argparse
import random
import time

from dnnf_forge import kernels
from dnnf_forge.families import delta_a, random_cnf
from dnnf_forge.transform import bva


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[10, 20, 40, 60])
    ap.add_argument("--random", type=int, default=20, help="random CNFs per size row")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = kernels.AVAILABLE
    if len(backends) < 2:
        print("compiled kernels not built; only the python backend is available")
    print(f"{'instance':<22}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")

    def row(label, make):
        secs, outs = [], []
        for b in backends:
            t, out = best_of(lambda b=b: make(b), args.repeat)
            secs.append(t)
            outs.append(out)
        assert all(o == outs[0] for o in outs), "backends disagree"
        speed = secs[-1] / secs[0] if len(secs) > 1 else 1.0
        print(f"{label:<22}" + "".join(f"{s:>11.3f}s" for s in secs) + f"{speed:>9.1f}x")

    for n in args.n:
        cnf = delta_a(n)
        row(f"delta_a({n}) bva(8)", lambda b, cnf=cnf: bva(cnf, 8, backend=b))

    rng = random.Random(0)
    for nv, nc in ((40, 200), (80, 600)):
        cnfs = [random_cnf(nv, nc, 3, rng) for _ in range(args.random)]
        row(f"random {nv}x{nc} x{args.random}",
            lambda b, cnfs=cnfs: [bva(c, 8, backend=b) for c in cnfs])

    print(f"default backend: {kernels.BACKEND}")


if __name__ == "__main__":
    main()
