"""Shared fixtures and independent oracles.

The oracles deliberately avoid the package's rank kernels and face
machinery: faces are enumerated with itertools, boundary matrices built
from scratch, and ranks computed by plain Gaussian elimination over
``fractions.Fraction`` or by modular elimination with Python ints.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from purebetti.complexes import SimplicialComplex, from_facets


@pytest.fixture
def three_triangles():
    """The three-triangle complex with facets 135, 234, 126."""
    return from_facets([1, 2, 3, 4, 5, 6], [{1, 3, 5}, {2, 3, 4}, {1, 2, 6}])


@pytest.fixture
def rp2():
    """Minimal 6-vertex triangulation of the real projective plane."""
    return from_facets(
        range(1, 7),
        [
            {1, 2, 4}, {1, 2, 6}, {1, 3, 4}, {1, 3, 5}, {1, 5, 6},
            {2, 3, 5}, {2, 3, 6}, {2, 4, 5}, {3, 4, 6}, {4, 5, 6},
        ],
    )


# -- independent oracles -------------------------------------------------------


def oracle_faces(facet_label_sets):
    """Every subset of every facet, via itertools; returns a set of frozensets."""
    out = set()
    for f in facet_label_sets:
        f = tuple(sorted(f))
        for k in range(len(f) + 1):
            out.update(frozenset(c) for c in itertools.combinations(f, k))
    return out


def _oracle_boundary(faces_by_size, k):
    """Matrix of the boundary from size-(k+1) faces to size-k faces, rows/cols
    over sorted-tuple faces, alternating signs."""
    rows = faces_by_size.get(k, [])
    cols = faces_by_size.get(k + 1, [])
    idx = {f: i for i, f in enumerate(rows)}
    mat = [[0] * len(cols) for _ in rows]
    for j, f in enumerate(cols):
        for pos, v in enumerate(f):
            sub = tuple(x for x in f if x != v)
            mat[idx[sub]][j] = 1 if pos % 2 == 0 else -1
    return mat


def _rank_fraction(mat):
    rows = [[Fraction(x) for x in r] for r in mat]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pv = rows[rank][c]
        rows[rank] = [x / pv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _rank_mod(mat, p):
    rows = [[x % p for x in r] for r in mat]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def oracle_homology(cpx: SimplicialComplex, p: int | None = None) -> dict[int, int]:
    """Reduced homology dims from first principles (Fraction or GF(p) ranks)."""
    facet_sets = [set(cpx.labels_of(f)) for f in cpx.facets]
    if not facet_sets:
        return {}
    all_faces = oracle_faces(facet_sets)
    by_size: dict[int, list[tuple]] = {}
    for f in all_faces:
        by_size.setdefault(len(f), []).append(tuple(sorted(f)))
    for lst in by_size.values():
        lst.sort()
    top = max(by_size)
    # ranks[j] = rank of the boundary map whose columns are size-(j+1) faces
    ranks = {}
    for j in range(0, top + 1):
        mat = _oracle_boundary(by_size, j)
        if not mat or not mat[0]:
            ranks[j] = 0
        else:
            ranks[j] = _rank_fraction(mat) if p is None else _rank_mod(mat, p)
    out = {}
    for k in range(-1, top):
        n_k = len(by_size.get(k + 1, []))
        h = n_k - (ranks.get(k, 0) if k >= 0 else 0) - ranks.get(k + 1, 0)
        if h:
            out[k] = h
    return out


def random_complex(rng: random.Random, n: int, max_facets: int = 6,
                   max_size: int | None = None) -> SimplicialComplex:
    """A random nonvoid complex on n labeled vertices."""
    if max_size is None:
        max_size = n
    labels = [str(i + 1) for i in range(n)]
    gens = []
    for _ in range(rng.randint(1, max_facets)):
        size = rng.randint(1, max(1, max_size))
        gens.append(rng.sample(labels, min(size, n)))
    return from_facets(labels, gens)
