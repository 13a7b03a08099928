"""Compare the compiled and numpy kernels on realistic workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from ctrivial import _backend, gf2
from ctrivial import constructions as cons
from ctrivial.steenrod import CupIContext


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    pp = cons.product(cons.projective_plane(), cons.projective_plane())
    C = pp.chain_complex()
    d3 = C.boundary_mod2(3)  # 1270 x 1500
    rng = np.random.default_rng(0)
    dense = (rng.random((800, 2000)) < 0.02).astype(np.uint8)

    work = {
        "rref boundary_3(RP2xRP2)": lambda kern: gf2.rref(d3, backend=kern),
        "rref random 800x2000": lambda kern: gf2.rref(dense, backend=kern),
    }
    ctxs = {name: CupIContext(pp, backend=kern) for name, kern in _backend.BACKENDS.items()}
    u = ctxs["python"].random_cochain(2, rng)
    v = ctxs["python"].random_cochain(2, rng)
    for ctx in ctxs.values():
        ctx.tables(2, 2, 0)
        ctx.tables(2, 2, 1)

    print(f"selected backend: {_backend.NAME}")
    print(f"{'workload':<30}" + "".join(f"{n:>12}" for n in sorted(_backend.BACKENDS)))
    for label, fn in work.items():
        row = [_best(lambda k=_backend.BACKENDS[n]: fn(k), args.repeat) for n in sorted(_backend.BACKENDS)]
        print(f"{label:<30}" + "".join(f"{t * 1e3:>10.2f}ms" for t in row))
    for i in (0, 1):
        row = [
            _best(lambda c=ctxs[n]: [c.cup_i(u, v, i) for _ in range(50)], args.repeat)
            for n in sorted(_backend.BACKENDS)
        ]
        print(f"{f'50x cup_{i} deg 2 (RP2xRP2)':<30}" + "".join(f"{t * 1e3:>10.2f}ms" for t in row))


if __name__ == "__main__":
    main()
