"""Compare the compiled tie-scan kernel with the pure-Python fallback.

    python3 benchmarks/bench_kernel.py [--n 14] [--repeat 3]

Both backends are imported directly so one process times both.  Results
are checked for equality before timing is reported.
"""
import argparse
import random
import time

from negbeta import _pykernel
from negbeta.betaspec import parse_beta_spec
from negbeta.expansion import boundary_sequences

try:
    from negbeta import _kernel
except ImportError:
    _kernel = None


def best_of(fn, repeat):
    best = None
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best, out


def cases(n, words):
    out = []
    for name in ["minus2", "neg_gamma0", "example1", "minus1.3"]:
        bd = boundary_sequences(parse_beta_spec(name).beta)
        d = list(bd.raw_d[:max(n, 40) + 2])
        rng = random.Random(0)
        ws = [[rng.randint(0, bd.d1) for _ in range(40)] for _ in range(words)]
        out.append((name, d, bd.d1, ws))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=14)
    ap.add_argument("--words", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernel is None:
        print("compiled kernel not built; only the fallback is available")
    print("%-12s %-10s %12s %12s %8s" % ("beta", "task", "python s", "cython s", "speedup"))
    for name, d, dmax, ws in cases(args.n, args.words):
        tasks = [("census", lambda k: k.census_dfs(d, dmax, args.n)),
                 ("scan", lambda k: [k.scan_word(d, w) for w in ws])]
        for task, fn in tasks:
            tp, rp = best_of(lambda: fn(_pykernel), args.repeat)
            if _kernel is None:
                print("%-12s %-10s %12.4f %12s %8s" % (name, task, tp, "-", "-"))
                continue
            tc, rc = best_of(lambda: fn(_kernel), args.repeat)
            assert rp == rc, (name, task)
            print("%-12s %-10s %12.4f %12.4f %7.1fx" % (name, task, tp, tc, tp / tc))


if __name__ == "__main__":
    main()
