"""Compare the compiled and pure-Python monomial-matrix kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--end-to-end]

Kernel timings call both modules directly on the same random inputs.  With
``--end-to-end`` the full audit is also timed twice in subprocesses, once with
``RIGCOH_PURE_PYTHON=1``.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from rigcoh.kernels import implementations

AUDIT = ("from rigcoh.backends import graded; from rigcoh.coherence import audit_all; "
         "audit_all(graded(4), trials=100, seed=0, max_dim=4)")


def random_perm(rng, k, n):
    rows = list(range(k))
    rng.shuffle(rows)
    return rows, [rng.randrange(n) for _ in range(k)]


def cases(rng, size, n):
    f, g = random_perm(rng, size, n), random_perm(rng, size, n)
    small = random_perm(rng, 32, n)
    degs = [rng.randint(-2, 2) for _ in range(64)], [rng.randint(-2, 2) for _ in range(64)]
    return {
        f"compose      {size}": lambda k: k.compose(*g, *f, n),
        f"direct_sum   {size}+{size}": lambda k: k.direct_sum(*f, size, *g),
        "tensor       32x32": lambda k: k.tensor(*small, *small, 32, n),
        f"inverse      {size}": lambda k: k.inverse(*f, n),
        "braid        64x64": lambda k: k.braid(*degs, 1, n),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=200)
    parser.add_argument("--size", type=int, default=4096)
    parser.add_argument("--end-to-end", action="store_true")
    args = parser.parse_args(argv)

    impls = implementations()
    if "cython" not in impls:
        print("compiled kernels are not built; only the Python fallback is available")
    rng = random.Random(0)
    names = sorted(impls, reverse=True)
    print(f"{'kernel':<26}" + "".join(f"{name:>12}" for name in names) + f"{'speedup':>10}")
    for label, call in cases(rng, args.size, 4).items():
        times = {name: min(timeit.repeat(lambda: call(impls[name]), number=args.repeat, repeat=3))
                 / args.repeat for name in names}
        row = f"{label:<26}" + "".join(f"{times[name] * 1e6:>10.1f}us" for name in names)
        if len(names) > 1:
            row += f"{times['python'] / times['cython']:>9.1f}x"
        print(row)

    if args.end_to_end:
        for pure in ("0", "1"):
            env = dict(os.environ, RIGCOH_PURE_PYTHON=pure)
            cmd = [sys.executable, "-m", "timeit", "-n", "1", "-r", "3", AUDIT]
            out = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True).stdout
            print(f"audit_all n=4 ({'python' if pure == '1' else 'default'} kernels): {out.strip()}")


if __name__ == "__main__":
    main()
