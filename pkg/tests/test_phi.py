import random

import pytest

from purebetti.betti import h_set, hh_set, is_pr
from purebetti.complexes import (
    SimplicialComplex,
    are_isomorphic,
    boundary_simplex,
    from_facets,
    full_simplex,
    irrelevant_complex,
    void_complex,
)
from purebetti.constructions import (
    IntersectionSpec,
    PartitionSpec,
    intersection_complex,
    partition_complex,
)
from purebetti.errors import ComplexError, VertexCapExceeded
from purebetti.homology import FieldSpec, homology_with_collapse, reduced_homology
from purebetti.phi import (
    barycentric,
    bary_link_hset,
    bdelta_pr_check,
    build_pr_complex,
    link_commute_check,
    phi,
    phi_detailed,
    s_set,
)

from conftest import random_complex


def oracle_phi_faces(cpx, i):
    """Faces of the augmented complex straight from the definition: a face of
    the complex together with the chain vertices of an increasing chain that
    starts above it, all chain members large enough."""
    threshold = max(cpx.dim() + 2 - i, 0)
    base_faces = [frozenset(cpx.labels_of(f)) for f in cpx.faces()]
    eligible = [f for f in base_faces if len(f) >= threshold]
    out = set()

    def chains_from(prefix):
        yield prefix
        last = prefix[-1]
        for nxt in eligible:
            if last < nxt:
                yield from chains_from(prefix + (nxt,))

    all_chains = [()]
    for start in eligible:
        all_chains.extend(chains_from((start,)))
    for chain in all_chains:
        bottoms = base_faces if not chain else [s for s in base_faces if s <= chain[0]]
        for sigma in bottoms:
            out.add((sigma, chain))
    return out


def faces_of(cpx):
    return {frozenset(cpx.labels_of(f)) for f in cpx.faces()}


def relabel_face(cpx, face_labels, relabel):
    return frozenset(relabel[x] for x in face_labels)


class TestSSet:
    def test_boundary_triangle(self):
        cpx = boundary_simplex(3)
        assert [set(cpx.labels_of(f)) for f in s_set(cpx, 1)] == [
            {"1", "2"}, {"1", "3"}, {"2", "3"}
        ]
        assert len(s_set(cpx, 2)) == 6
        faces3 = s_set(cpx, 3)
        assert len(faces3) == 7 and faces3[0] == 0  # includes the empty face

    def test_empty_face_threshold(self):
        cpx = boundary_simplex(3)
        assert 0 not in s_set(cpx, 2)
        assert 0 in s_set(cpx, 3)

    def test_void_errors(self):
        with pytest.raises(ComplexError):
            s_set(void_complex([1]), 1)


class TestPhi:
    def test_phi1_adds_free_vertices(self):
        out = phi(boundary_simplex(3), 1)
        assert out.n == 6 and len(out.facets) == 3
        pr = is_pr(out)
        assert pr.is_pr and pr.degree_type == (1, 2)

    def test_phi2_nine_triangles(self):
        out = phi(boundary_simplex(3), 2)
        assert out.n == 9 and len(out.facets) == 9
        pr = is_pr(out)
        assert pr.is_pr and pr.degree_type == (2, 1)

    def test_phi3_acyclic_with_empty_chain_vertex(self):
        out = phi(boundary_simplex(3), 3)
        assert "u{}" in out.labels
        assert reduced_homology(out).is_zero()

    def test_phi_beyond_dimension_stabilizes(self):
        cpx = boundary_simplex(3)
        assert set(phi(cpx, 4).facets) == set(phi(cpx, 3).facets)

    def test_phi1_on_nonpure_only_tops(self):
        cpx = from_facets([1, 2, 3], [{1, 2}, {3}])
        out = phi(cpx, 1)
        # the low facet keeps no new vertex
        assert frozenset({"3"}) in faces_of(out)
        sets = {frozenset(out.labels_of(f)) for f in out.facets}
        assert frozenset({"3"}) in sets
        assert frozenset({"1", "2", "u{1,2}"}) in sets

    def test_faces_match_definition_oracle(self):
        cases = [
            (boundary_simplex(3), 1),
            (boundary_simplex(3), 2),
            (boundary_simplex(3), 3),
            (from_facets([1, 2, 3], [{1, 2}, {3}]), 2),
            (irrelevant_complex([1]), 1),
            (from_facets([1, 2, 3, 4], [{1, 2, 3}, {2, 3, 4}]), 2),
        ]
        for cpx, i in cases:
            out, relabel, eligible = phi_detailed(cpx, i)
            base = SimplicialComplex([relabel[x] for x in cpx.labels], cpx.facets)
            expected = set()
            for sigma, chain in oracle_phi_faces(base, i):
                face = set(sigma)
                for tau in chain:
                    face.add("u{" + ",".join(sorted(tau, key=int)) + "}")
                expected.add(frozenset(face))
            assert faces_of(out) == expected, (cpx, i)

    def test_void_errors(self):
        with pytest.raises(ComplexError):
            phi(void_complex([1]), 1)


class TestBarycentric:
    def test_hexagon(self):
        bary = barycentric(boundary_simplex(3))
        assert bary.n == 6
        assert all(f.bit_count() == 2 for f in bary.facets)
        assert len(bary.facets) == 6
        assert dict(reduced_homology(bary)) == {1: 1}

    def test_irrelevant_errors(self):
        with pytest.raises(ComplexError):
            barycentric(irrelevant_complex([1, 2]))

    def test_homology_preserved(self, three_triangles):
        assert homology_with_collapse(barycentric(three_triangles)) == reduced_homology(three_triangles)

    def test_homology_preserved_randomized(self):
        rng = random.Random(71)
        for _ in range(10):
            cpx = random_complex(rng, rng.randint(2, 5), max_facets=4)
            if cpx.is_irrelevant:
                continue
            for field in (FieldSpec.rationals(), FieldSpec.gf(2)):
                assert homology_with_collapse(barycentric(cpx), field) == reduced_homology(cpx, field)

    def test_chain_count_equals_flag_count(self):
        # facets of the subdivision are the maximal chains
        cpx = from_facets([1, 2, 3, 4], [{1, 2, 3}, {3, 4}])
        bary = barycentric(cpx)
        assert len(bary.facets) == 3 * 2 * 1 + 2  # 3! orderings + 2 for the edge


class TestBuildPr:
    def test_all_ones_is_boundary_simplex(self):
        for p in (1, 2, 3):
            built = build_pr_complex(tuple([1] * p))
            assert built == boundary_simplex(p + 1)

    def test_two_one(self):
        built = build_pr_complex((2, 1))
        pr = is_pr(built)
        assert pr.is_pr and pr.degree_type == (2, 1) and built.n == 9

    def test_three_gives_disjoint_triangles(self):
        built = build_pr_complex((3,))
        assert are_isomorphic(built, partition_complex(PartitionSpec(3, 1, 1)))

    def test_cap_exceeded_reports_details(self):
        with pytest.raises(VertexCapExceeded) as err:
            build_pr_complex((4, 1), vertex_cap=64)
        assert err.value.needed > 64 and err.value.cap == 64
        assert err.value.step.startswith("phi_")

    def test_validation(self):
        with pytest.raises(ComplexError):
            build_pr_complex(())
        with pytest.raises(ComplexError):
            build_pr_complex((2, 0))


def degree_bump_cases():
    """PR complexes with degree types ending in ones, paired with a valid i."""
    out = []
    for spec in [
        IntersectionSpec((1, 1, 0)),
        IntersectionSpec((2, 1, 0)),
        IntersectionSpec((0, 1, 0, 0)),
    ]:
        out.append(intersection_complex(spec))
    out += [
        partition_complex(PartitionSpec(2, 2, 1)),
        partition_complex(PartitionSpec(3, 1, 1)),
        partition_complex(PartitionSpec(2, 2, 2)),
        boundary_simplex(3),
        boundary_simplex(4),
    ]
    return [c for c in out if c.n <= 12]


class TestDegreeTypeBump:
    def test_phi_increments_degree_entry(self):
        for cpx in degree_bump_cases():
            pr = is_pr(cpx)
            assert pr.is_pr
            d = pr.degree_type
            p = len(d)
            for i in range(1, p + 1):
                if any(d[p - j] != 1 for j in range(1, i)):
                    continue  # needs trailing ones below position i
                if cpx.n + len(s_set(cpx, i)) > 40:
                    continue
                bumped = list(d)
                bumped[p - i] += 1
                pr2 = is_pr(phi(cpx, i))
                assert pr2.is_pr and pr2.degree_type == tuple(bumped), (d, i)

    def test_hh_threshold_shift(self):
        # index sets below the threshold stay, the threshold empties, the
        # rest shift up by one
        for cpx in [boundary_simplex(3), intersection_complex(IntersectionSpec((1, 1, 0)))]:
            pr = is_pr(cpx)
            d, s, p = pr.degree_type, pr.offset, len(pr.degree_type)
            for i in range(1, p + 1):
                if any(d[p - j] != 1 for j in range(1, i)):
                    continue
                threshold = s + sum(d[: p - i + 1])
                out = phi(cpx, i)
                for m in range(0, cpx.dim() + 3):
                    got = hh_set(out, m)
                    if m < threshold:
                        assert got == hh_set(cpx, m), (i, m)
                    elif m == threshold:
                        assert got == frozenset(), (i, m)
                    else:
                        assert got == hh_set(cpx, m - 1), (i, m)


class TestHomotopyBehavior:
    corpus = None

    def get_corpus(self):
        if TestHomotopyBehavior.corpus is None:
            rng = random.Random(73)
            pool = [
                boundary_simplex(2),
                boundary_simplex(3),
                from_facets([1, 2, 3], [{1, 2}, {3}]),
                full_simplex([1, 2, 3]),
                intersection_complex(IntersectionSpec((1, 1, 0))),
                partition_complex(PartitionSpec(2, 2, 1)),
            ]
            pool += [random_complex(rng, rng.randint(2, 4), max_facets=3) for _ in range(4)]
            TestHomotopyBehavior.corpus = pool
        return TestHomotopyBehavior.corpus

    def test_phi_preserves_homology_at_low_i(self):
        for cpx in self.get_corpus():
            for i in range(1, cpx.dim() + 2):
                out = phi(cpx, i)
                assert homology_with_collapse(out) == reduced_homology(cpx), (cpx, i)

    def test_phi_acyclic_beyond_dimension(self):
        for cpx in self.get_corpus():
            i = cpx.dim() + 2
            assert homology_with_collapse(phi(cpx, i)).is_zero(), cpx

    def test_links_of_new_vertex_faces_acyclic(self):
        for cpx in self.get_corpus()[:6]:
            for i in range(1, cpx.dim() + 2):
                out, _, eligible = phi_detailed(cpx, i)
                base_n = cpx.n
                new_faces = [
                    f for f in out.faces()
                    if f and f >> base_n and not (f & ((1 << base_n) - 1))
                ]
                for f in new_faces:
                    assert h_set(out, f) == frozenset(), (cpx, i, out.labels_of(f))

    def test_degree_shift_with_empty_chain_vertex(self):
        # beyond the dimension, dropping the empty-face vertex from a new
        # face shifts its link homology up one degree
        for cpx in self.get_corpus()[:6]:
            i = cpx.dim() + 2
            out, _, eligible = phi_detailed(cpx, i)
            base_n = cpx.n
            u_empty = base_n + eligible.index(0)
            vmask = (1 << base_n) - 1
            for f in out.faces():
                if not f or f & vmask or f >> u_empty & 1:
                    continue
                with_empty = f | (1 << u_empty)
                if not out.has_face(with_empty):
                    continue
                left = dict(homology_with_collapse(out.link(f)))
                right = dict(homology_with_collapse(out.link(with_empty)))
                assert left == {j + 1: d for j, d in right.items()}, out.labels_of(f)


class TestLinkCommute:
    def test_boundary_triangle_vertex(self):
        cpx = boundary_simplex(3)
        assert link_commute_check(cpx, 2, cpx.mask(["1"]))

    def test_empty_face_trivial(self):
        assert link_commute_check(boundary_simplex(4), 1, 0)

    def test_partition_vertex(self):
        cpx = partition_complex(PartitionSpec(2, 2, 1))
        assert link_commute_check(cpx, 2, cpx.mask(["x0"]))

    def test_corpus(self):
        for cpx in [boundary_simplex(3), boundary_simplex(4),
                    intersection_complex(IntersectionSpec((1, 1, 0)))]:
            for i in (1, 2, 3):
                for face in list(cpx.faces())[:12]:
                    assert link_commute_check(cpx, i, face), (cpx, i, face)

    def test_requires_pure(self):
        with pytest.raises(ComplexError):
            link_commute_check(from_facets([1, 2, 3], [{1, 2}, {3}]), 1, 0)


class TestBaryLinks:
    def test_edge_chain(self):
        cpx = boundary_simplex(3)
        assert bary_link_hset(cpx, [cpx.mask(["1", "2"])]) == {0}

    def test_two_step_chain(self):
        cpx = boundary_simplex(3)
        chain = [cpx.mask(["1"]), cpx.mask(["1", "2"])]
        assert bary_link_hset(cpx, chain) == {-1}

    def test_three_triangles_vertex(self, three_triangles):
        assert bary_link_hset(three_triangles, [three_triangles.mask(["3"])]) == {0}

    def test_corpus_chains(self, three_triangles):
        for cpx in [boundary_simplex(3), three_triangles, partition_complex(PartitionSpec(2, 2, 1))]:
            faces = [f for f in cpx.faces() if f]
            rng = random.Random(79)
            for _ in range(12):
                start = rng.choice(faces)
                chain = [start]
                while rng.random() < 0.6:
                    ups = [f for f in faces if f != chain[-1] and f & chain[-1] == chain[-1]]
                    if not ups:
                        break
                    chain.append(rng.choice(ups))
                bary_link_hset(cpx, chain)  # raises on any mismatch

    def test_chain_validation(self, three_triangles):
        with pytest.raises(ComplexError):
            bary_link_hset(three_triangles, [])
        with pytest.raises(ComplexError):
            bary_link_hset(three_triangles, [three_triangles.mask(["1", "3"]), three_triangles.mask(["1"])])


class TestBdeltaEquivalence:
    def test_examples(self, three_triangles):
        assert bdelta_pr_check(boundary_simplex(3)) == (True, True, True)
        assert bdelta_pr_check(three_triangles) == (False, False, False)
        assert bdelta_pr_check(full_simplex([1, 2, 3])) == (True, True, True)

    def test_corpus(self):
        rng = random.Random(83)
        done = 0
        while done < 8:
            cpx = random_complex(rng, rng.randint(2, 4), max_facets=3)
            if cpx.is_irrelevant:
                continue
            triple = bdelta_pr_check(cpx)
            assert len(set(triple)) == 1
            done += 1
