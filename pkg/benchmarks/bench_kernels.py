"""Compare the compiled and pure-Python kernels on the heavy sweeps.

    python benchmarks/bench_kernels.py [--p 11] [--r 3] [--repeat 3]
"""

import argparse
import itertools
import time

from serreweights import _pykernels as py

try:
    from serreweights import _ckernels as c
except ImportError:
    c = None


def regular_bs(p, r):
    return list(itertools.product(range(2, p - 1), repeat=r))


def witness_loop(mod, p, r, bs):
    e = p ** r - 1
    n = 0
    for b in bs:
        for psi1 in range(0, e, max(1, e // 64)):
            n += len(mod.reducible_witnesses(p, r, 0, b, psi1, 0))
    return n


def factor_loop(mod, p, r, bs):
    n = 0
    for b in bs:
        for J in range(1 << r):
            _, x, y = mod.reducible_type(p, r, 0, b, J)
            n += len(mod.principal_factors(p, r, x, y))
    return n


CASES = {
    "tau-identity sweep": lambda m, p, r, bs: m.sweep_tau_identity(p, r, bs)[0],
    "weak-regularity sweep": lambda m, p, r, bs: m.sweep_weak_regularity(p, r, bs)[0],
    "reducible witnesses": witness_loop,
    "principal factors": factor_loop,
}


def timed(fn, repeat):
    best = None
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=11)
    ap.add_argument("--r", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    bs = regular_bs(args.p, args.r)
    print(f"p={args.p} r={args.r} regular b-vectors={len(bs)}")
    print(f"{'kernel':24s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, fn in CASES.items():
        tp, outp = timed(lambda: fn(py, args.p, args.r, bs), args.repeat)
        if c is None:
            print(f"{name:24s} {tp:10.4f} {'n/a':>10s} {'n/a':>8s}")
            continue
        tc, outc = timed(lambda: fn(c, args.p, args.r, bs), args.repeat)
        if outp != outc:
            raise SystemExit(f"{name}: backends disagree ({outp} vs {outc})")
        print(f"{name:24s} {tp:10.4f} {tc:10.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
