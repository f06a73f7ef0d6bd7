#!/usr/bin/env python3
"""Times the optimal-cut DP kernels: compiled extension vs pure Python.

Both backends must return identical exact results; this script asserts that
while timing them on the grids the verification suite leans on hardest.

Run:  python benchmarks/bench_dp.py [--large]
"""

import argparse
import time

import numpy as np

from parprivacy import build_table, ideal_partition
from parprivacy.gallery import GallerySpec, make
from parprivacy.kernels import available_backends


def _arrays(table):
    dims = (table.n,) * table.d
    vals = np.asarray(table.values, dtype=np.int64).reshape(dims)
    rs = np.asarray(ideal_partition(table).sizes_by_cell(),
                    dtype=np.int64).reshape(dims)
    return vals, rs


def cases(large: bool):
    yield "hless(4) 16x16 worst", make(GallerySpec("hless", k=4)).table, "worst"
    yield "equality(4) 16x16 avg", make(GallerySpec("equality", k=4)).table, "avg"
    yield ("paterson_yao_3d(3) 8^3 avg",
           make(GallerySpec("paterson_yao_3d", k=3)).table, "avg")
    if large:
        yield ("equality(5) 32x32 worst",
               build_table(2, 5, lambda xy: int(xy[0] == xy[1])), "worst")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--large", action="store_true",
                        help="include the 32x32 case (slow in pure Python)")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    header = f"{'case':<28}" + "".join(f"{name:>14}" for name in backends)
    print(header)
    print("-" * len(header))
    for label, table, objective in cases(args.large):
        vals, rs = _arrays(table)
        fn_name = f"dp{table.d}_{objective}"
        results = {}
        row = f"{label:<28}"
        for name, module in backends.items():
            fn = getattr(module, fn_name)
            best = float("inf")
            for _ in range(args.repeat):
                start = time.perf_counter()
                out = fn(vals, rs)
                best = min(best, time.perf_counter() - start)
            results[name] = (out[0], out[1])
            row += f"{best * 1000:>12.1f}ms"
        assert len(set(results.values())) == 1, f"backends disagree on {label}"
        num, den = next(iter(results.values()))
        print(row + f"   value {num}/{den}")


if __name__ == "__main__":
    main()
