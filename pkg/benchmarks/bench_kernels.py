"""Compare the compiled and pure-Python kernels on workloads from a random corpus.

    python benchmarks/bench_kernels.py [--count N] [--seed S] [--repeat R]
"""

import argparse
import time

import numpy as np

from brauergraph import kernels
from brauergraph.algebra import EXHAUSTIVE_ASSOC_DIM, _monomial_arrays, build_table, gram_rows
from brauergraph.corpus import CorpusSpec, generate
from brauergraph.fields import GF2
from brauergraph.quiver import reduce, to_presentation


def workloads(count: int, seed: int):
    tables = [
        build_table(reduce(to_presentation(g)), GF2)
        for g in generate(CorpusSpec(seed=seed, count=count, max_edges=8, field=GF2))
    ]
    gram = []
    for t in tables:
        a = np.zeros((t.dim, t.dim), dtype=np.int64)
        for i, row in enumerate(gram_rows(t)):
            for j, v in row.items():
                a[i, j] = v % 2
        gram.append(a)
    assoc = [_monomial_arrays(t)[:3] for t in tables if t.dim <= EXHAUSTIVE_ASSOC_DIM]
    return gram, assoc


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=60)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.compiled_kernels is None:
        raise SystemExit("compiled kernels unavailable: build the extension first")
    gram, assoc = workloads(args.count, args.seed)
    backends = {"cython": kernels.compiled_kernels, "python": kernels.python_kernels}

    def rref_all(b):
        return lambda: [b.rref_mod_p(a.copy(), 2) for a in gram]

    def assoc_all(b):
        return lambda: [b.assoc_violations(i, n, d, 2) for i, n, d in assoc]

    for b in backends.values():  # both backends must agree before timing means anything
        assert [r[0] for r in rref_all(b)()] == [r[0] for r in rref_all(kernels.python_kernels)()]
    dims = sorted(a.shape[0] for a in gram)
    print(f"{len(gram)} Gram systems over GF(2), dims {dims[0]}..{dims[-1]}; "
          f"{len(assoc)} associativity sweeps (dim <= {EXHAUSTIVE_ASSOC_DIM})")
    print(f"{'kernel':<18}{'cython s':>10}{'python s':>10}{'speedup':>9}")
    for name, make in [("rref_mod_p", rref_all), ("assoc_violations", assoc_all)]:
        tc = best_of(make(backends["cython"]), args.repeat)
        tp = best_of(make(backends["python"]), args.repeat)
        print(f"{name:<18}{tc:>10.4f}{tp:>10.4f}{tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()
