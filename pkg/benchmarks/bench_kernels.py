"""Time the compiled and pure-Python normal-form kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--n 200] [--size 5] [--bound 9]

Inputs that overflow int64 in the compiled kernel are dropped from both
timings so the comparison stays like-for-like.
"""

import argparse
import random
import sys
import timeit

from hurwitzpic.abelian import _pure
from hurwitzpic.hurwitz import HurwitzInstance, pic_simply_branched

try:
    from hurwitzpic.abelian import _kernels
except ImportError:
    _kernels = None


def workload(n, size, bound, seed):
    rng = random.Random(seed)
    mats = []
    while len(mats) < n:
        a = [[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)]
        if _kernels is not None:
            try:
                _kernels.hnf_rows(a, size)
                _kernels.snf_triple(a, size, size)
                _kernels.det_bareiss(a)
            except OverflowError:
                continue
        mats.append(a)
    return mats


def domain_workload():
    # relation matrices the library actually factors
    mats = []
    for k in (3, 4, 5):
        for g in range(2, 41):
            m = pic_simply_branched(HurwitzInstance(k, g)).relation_matrix.tolist()
            mats.append(m)
    return mats


def time_kernels(mod, mats, repeat):
    def hnf():
        for a in mats:
            mod.hnf_rows(a, len(a[0]))

    def snf():
        for a in mats:
            mod.snf_triple(a, len(a), len(a[0]))

    def det():
        for a in mats:
            if len(a) == len(a[0]):
                mod.det_bareiss(a)

    return {name: min(timeit.repeat(fn, number=1, repeat=repeat)) for name, fn in
            (("hnf", hnf), ("snf", snf), ("det", det))}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--size", type=int, default=5)
    ap.add_argument("--bound", type=int, default=9)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    if _kernels is None:
        print("compiled kernels not built; nothing to compare", file=sys.stderr)
        return 1

    suites = [
        (f"random {args.size}x{args.size} |a|<={args.bound}", workload(args.n, args.size, args.bound, args.seed)),
        ("relation matrices k=3..5 g=2..40", domain_workload()),
    ]
    print(f"{'workload':<36} {'kernel':<5} {'pure ms':>9} {'cython ms':>10} {'speedup':>8}")
    for label, mats in suites:
        slow = time_kernels(_pure, mats, args.repeat)
        fast = time_kernels(_kernels, mats, args.repeat)
        for name in ("hnf", "snf", "det"):
            ratio = slow[name] / fast[name] if fast[name] else float("inf")
            print(f"{label:<36} {name:<5} {slow[name] * 1e3:9.2f} {fast[name] * 1e3:10.2f} {ratio:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
