#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure numpy/Python fallbacks.

Runs the exact-rank kernels on boundary matrices of random complexes and
the census scan at n = 5, timing both backends in one process.  Forcing the
fallback for a whole run instead is PUREBETTI_NO_NUMBA=1.
"""

import random
import time

import numpy as np

from purebetti import _kernels
from purebetti._backend import numba_enabled
from purebetti.complexes import from_facets
from purebetti.homology import boundary_matrix


def random_boundary_matrices(count, seed=7):
    rng = random.Random(seed)
    mats = []
    while len(mats) < count:
        labels = [str(i) for i in range(rng.randint(4, 7))]
        gens = [rng.sample(labels, rng.randint(2, len(labels))) for _ in range(rng.randint(2, 6))]
        cpx = from_facets(labels, gens)
        for k in range(0, (cpx.dim() or 0) + 1):
            mat = boundary_matrix(cpx, k)
            if mat.size:
                mats.append(mat)
    return mats[:count]


def bench(label, func, reps=3):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        result = func()
        best = min(best, time.perf_counter() - t0)
    print(f"{label:48s} {best * 1000:10.1f} ms")
    return result


def main():
    print(f"numba available and enabled: {numba_enabled()}")
    mats = random_boundary_matrices(400)
    print(f"{len(mats)} boundary matrices, sizes up to "
          f"{max(m.shape[0] for m in mats)}x{max(m.shape[1] for m in mats)}\n")

    if numba_enabled():
        _kernels._nb_rank_mod_p(mats[0].astype(np.int64), 7)  # compile
        _kernels._nb_rank_bareiss(mats[0].astype(np.int64))
        nb_mod = bench("rank over GF(7), numba kernel",
                       lambda: [int(_kernels._nb_rank_mod_p(m.astype(np.int64), 7)) for m in mats])
        nb_q = bench("rank over Q (Bareiss), numba kernel",
                     lambda: [int(_kernels._nb_rank_bareiss(m.astype(np.int64))[0]) for m in mats])
    else:
        nb_mod = nb_q = None

    np_mod = bench("rank over GF(7), numpy fallback",
                   lambda: [_kernels._np_rank_mod_p(m, 7) for m in mats])
    np_q = bench("rank over Q (Bareiss), numpy fallback",
                 lambda: [_kernels._np_rank_bareiss(m)[0] for m in mats])
    py_q = bench("rank over Q (Bareiss), bigint fallback",
                 lambda: [_kernels._py_rank_bareiss(m.tolist()) for m in mats])

    assert np_q == py_q
    if nb_mod is not None:
        assert nb_mod == np_mod and nb_q == np_q
        print("\nall backends agree on every rank")

    print("\ncensus scan, n = 5, catalog filter:")
    from purebetti import survey

    flags = (True, False, False, True)
    if numba_enabled():
        from purebetti._fastscan import scan_numba

        scan_numba(3, flags)  # compile
        l1, r1 = bench("  numba scan", lambda: scan_numba(5, flags), reps=3)
    else:
        l1 = r1 = None
    l2, r2 = bench("  python scan", lambda: survey._scan_python(5, flags), reps=1)
    if r1 is not None:
        assert l1 == l2 and sorted(r1) == sorted(r2)
        print("  scans agree")


if __name__ == "__main__":
    main()
