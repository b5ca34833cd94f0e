"""Structural property tests on randomized complexes (hypothesis-driven).

The acceptance suite runs larger seeded sweeps of the same properties; these
stay small so the default test run is quick.
"""

import random

from hypothesis import given, settings, strategies as st

from purebetti.betti import betti_dual, is_pr
from purebetti.complexes import SimplicialComplex, from_facets
from purebetti.homology import (
    FieldSpec,
    euler_characteristic_checks,
    homology_with_collapse,
    reduced_homology,
)

GF2 = FieldSpec.gf(2)


@st.composite
def complexes(draw, max_n=6, allow_trivial=True):
    n = draw(st.integers(min_value=1, max_value=max_n))
    labels = [str(i + 1) for i in range(n)]
    k = draw(st.integers(min_value=0 if allow_trivial else 1, max_value=5))
    gens = [
        draw(st.sets(st.integers(min_value=0, max_value=n - 1), min_size=1, max_size=n))
        for _ in range(k)
    ]
    return from_facets(labels, [[labels[v] for v in g] for g in gens])


@settings(max_examples=60, deadline=None)
@given(complexes())
def test_dual_is_an_involution(cpx):
    assert cpx.alexander_dual().alexander_dual() == cpx


@settings(max_examples=60, deadline=None)
@given(complexes())
def test_collapse_preserves_homology(cpx):
    for field in (FieldSpec.rationals(), GF2):
        assert homology_with_collapse(cpx, field) == reduced_homology(cpx, field)


@settings(max_examples=60, deadline=None)
@given(complexes())
def test_euler_characteristic_is_field_free(cpx):
    q_faces, q_hom = euler_characteristic_checks(cpx)
    g_faces, g_hom = euler_characteristic_checks(cpx, GF2)
    assert q_faces == q_hom == g_faces == g_hom


@settings(max_examples=40, deadline=None)
@given(complexes(max_n=4, allow_trivial=False), complexes(max_n=4, allow_trivial=False))
def test_kunneth_for_joins(a, b):
    b_relabel = SimplicialComplex([f"b{lab}" for lab in b.labels], b.facets)
    joined = a.join(b_relabel)
    ha = reduced_homology(a)
    hb = reduced_homology(b_relabel)
    hj = reduced_homology(joined)
    top = (joined.dim() if joined.dim() is not None else -1) + 1
    for r in range(-1, top + 1):
        expect = sum(ha[i] * hb[r - i] for i in range(-1, r + 2))
        assert hj[r + 1] == expect, (r, dict(ha), dict(hb), dict(hj))


@settings(max_examples=40, deadline=None)
@given(complexes(max_n=5, allow_trivial=False), st.randoms(use_true_random=False))
def test_diagrams_are_isomorphism_invariants(cpx, rng):
    if cpx.is_full_simplex:
        return
    n = cpx.n
    perm = list(range(n))
    rng.shuffle(perm)
    relabeled = SimplicialComplex(
        cpx.labels, [sum(1 << perm[v] for v in range(n) if f >> v & 1) for f in cpx.facets]
    )
    assert betti_dual(relabeled) == betti_dual(cpx)
    pr_a, pr_b = is_pr(cpx), is_pr(relabeled)
    assert pr_a.is_pr == pr_b.is_pr and pr_a.degree_type == pr_b.degree_type


@settings(max_examples=30, deadline=None)
@given(complexes(max_n=6))
def test_gf_rank_matches_q_for_generic_primes(cpx):
    # random 31-bit primes see no torsion on these small complexes
    rng = random.Random(2024)
    primes = [2147483647, 2147483629, 2147483587]
    hq = reduced_homology(cpx)
    for p in primes:
        assert reduced_homology(cpx, FieldSpec.gf(p)) == hq
