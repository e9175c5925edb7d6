"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--sizes 6 8 10] [--repeat 3]

Prints the best of ``--repeat`` runs for the poset build and the canonical
table, per backend, and the speedup of the compiled one.
"""

from __future__ import annotations

import argparse
import timeit

from gelfand_graph import _kernels
from gelfand_graph.bruhat import build_poset
from gelfand_graph.canonical import canonical_basis


def best(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[6, 8, 10])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = sorted(_kernels.available())
    if "cython" not in backends:
        print("compiled extension not built; timing the fallback only")

    print(f"{'n':>3} {'stage':<10} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for n in args.sizes:
        posets = {b: build_poset(n, backend=b) for b in backends}
        # the two backends must agree before their timings mean anything
        tables = {b: canonical_basis(n, posets[b], backend=b) for b in backends}
        if len(backends) > 1:
            assert tables["cython"].same_as(tables["python"])

        stages = {
            "poset": lambda b: build_poset(n, backend=b),
            "table": lambda b: canonical_basis(n, posets[b], backend=b),
        }
        for stage, run in stages.items():
            t = {b: best(lambda: run(b), args.repeat) for b in backends}
            ratio = f"{t['python'] / t['cython']:8.1f}x" if "cython" in t else ""
            print(f"{n:>3} {stage:<10} " + " ".join(f"{t[b]:9.4f}s" for b in backends) + "  " + ratio)


if __name__ == "__main__":
    main()
