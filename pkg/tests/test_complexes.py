import itertools
import json
import random

import pytest

from purebetti.complexes import (
    SimplicialComplex,
    are_isomorphic,
    boundary_simplex,
    collapse,
    facet_intersection_closure,
    find_free_pair,
    from_facets,
    full_simplex,
    irrelevant_complex,
    skeleton_of_set,
    void_complex,
)
from purebetti.constructions import IntersectionSpec, PartitionSpec, intersection_complex, partition_complex
from purebetti.errors import ComplexError
from purebetti.homology import reduced_homology

from conftest import oracle_faces, oracle_homology, random_complex


def labelsets(cpx):
    return {frozenset(cpx.labels_of(f)) for f in cpx.facets}


class TestFromFacets:
    def test_three_triangles(self, three_triangles):
        assert len(three_triangles.facets) == 3
        assert labelsets(three_triangles) == {
            frozenset("135"), frozenset({"2", "3", "4"}), frozenset({"1", "2", "6"})
        }

    def test_antichain_reduction(self):
        cpx = from_facets([1, 2], [{1}, {1, 2}])
        assert labelsets(cpx) == {frozenset({"1", "2"})}

    def test_empty_generator_only(self):
        cpx = from_facets([1, 2, 3], [set()])
        assert cpx.is_irrelevant
        assert cpx.n == 3

    def test_unknown_label(self):
        with pytest.raises(ComplexError):
            from_facets([1, 2], [{1, 7}])

    def test_duplicate_labels(self):
        with pytest.raises(ComplexError):
            SimplicialComplex(["a", "a"], [])

    def test_labels_define_universe(self):
        cpx = from_facets([1, 2, 3], [{1}])
        assert cpx.n == 3


class TestFaces:
    def test_single_edge(self):
        cpx = from_facets([1, 2], [{1, 2}])
        got = [set(cpx.labels_of(f)) for f in cpx.faces()]
        assert got == [set(), {"1"}, {"2"}, {"1", "2"}]

    def test_three_triangles_top_faces_match_oracle(self, three_triangles):
        oracle = {f for f in oracle_faces([set(three_triangles.labels_of(m)) for m in three_triangles.facets]) if len(f) == 3}
        got = {frozenset(three_triangles.labels_of(m)) for m in three_triangles.faces_of_size(3)}
        assert got == oracle
        assert len(got) == 3

    def test_all_faces_against_oracle(self, three_triangles):
        oracle = oracle_faces([set(three_triangles.labels_of(m)) for m in three_triangles.facets])
        got = {frozenset(three_triangles.labels_of(m)) for m in three_triangles.faces()}
        assert got == oracle

    def test_void_has_no_faces(self):
        assert list(void_complex([1, 2]).faces()) == []


class TestDimPurity:
    def test_three_triangles(self, three_triangles):
        assert three_triangles.dim() == 2
        assert three_triangles.is_pure()

    def test_mixed(self):
        cpx = from_facets([1, 2, 3], [{1, 2}, {3}])
        assert cpx.dim() == 1
        assert not cpx.is_pure()

    def test_degenerate(self):
        assert irrelevant_complex([1]).dim() == -1
        assert irrelevant_complex([1]).is_pure()
        assert void_complex([1]).dim() is None


class TestLink:
    def test_three_triangles_vertex_3(self, three_triangles):
        link = three_triangles.link(three_triangles.mask(["3"]))
        assert labelsets(link) == {frozenset({"1", "5"}), frozenset({"2", "4"})}

    def test_link_of_facet_is_irrelevant(self, three_triangles):
        link = three_triangles.link(three_triangles.mask(["1", "3", "5"]))
        assert link.facets == (0,)

    def test_boundary_simplex_vertex(self):
        cpx = boundary_simplex(3)
        link = cpx.link(cpx.mask(["1"]))
        assert labelsets(link) == {frozenset({"2"}), frozenset({"3"})}

    def test_link_of_empty_is_identity(self, three_triangles):
        assert three_triangles.link(0) == three_triangles

    def test_link_nonface_errors(self, three_triangles):
        with pytest.raises(ComplexError):
            three_triangles.link(three_triangles.mask(["4", "6"]))


class TestAlexanderDual:
    def test_boundary_simplex_dual_is_irrelevant(self):
        assert boundary_simplex(3).alexander_dual().facets == (0,)

    def test_full_simplex_dual_is_void(self):
        assert full_simplex([1, 2, 3]).alexander_dual().is_void

    def test_involution(self, three_triangles):
        assert three_triangles.alexander_dual().alexander_dual() == three_triangles

    def test_involution_random(self):
        rng = random.Random(7)
        for _ in range(25):
            cpx = random_complex(rng, rng.randint(1, 6))
            assert cpx.alexander_dual().alexander_dual() == cpx


class TestSkeleton:
    def test_skeleton_of_set(self):
        assert skeleton_of_set([1, 2, 3], 1) == boundary_simplex(3)

    def test_skeleton_at_dim_is_identity(self, three_triangles):
        assert three_triangles.skeleton(three_triangles.dim()) == three_triangles

    def test_skeleton_minus_one(self):
        assert skeleton_of_set([1, 2, 3], -1).is_irrelevant

    def test_negative_errors(self, three_triangles):
        with pytest.raises(ComplexError):
            three_triangles.skeleton(-2)


class TestJoin:
    def test_irrelevant_is_identity(self, three_triangles):
        joined = irrelevant_complex(["a"]).join(three_triangles)
        assert labelsets(joined) == labelsets(three_triangles)

    def test_two_spheres_make_a_cycle(self):
        a = from_facets(["a1", "a2"], [{"a1"}, {"a2"}])
        b = from_facets(["b1", "b2"], [{"b1"}, {"b2"}])
        square = a.join(b)
        assert len(square.facets) == 4
        assert dict(reduced_homology(square)) == {1: 1}

    def test_cone(self, three_triangles):
        cone = from_facets(["apex"], [{"apex"}]).join(three_triangles)
        assert cone.is_cone() is not None
        assert reduced_homology(cone).is_zero()

    def test_overlap_errors(self, three_triangles):
        with pytest.raises(ComplexError):
            three_triangles.join(three_triangles)


class TestInducedAndDeletion:
    # the deletion/induced contrast figure: facets 124, 235, 456
    def setup_method(self):
        self.cpx = from_facets(range(1, 7), [{1, 2, 4}, {2, 3, 5}, {4, 5, 6}])

    def test_delete_keeps_boundary_edges(self):
        out = self.cpx.delete_face(self.cpx.mask(["2", "4"]))
        assert labelsets(out) == {
            frozenset({"1", "2"}), frozenset({"1", "4"}),
            frozenset({"2", "3", "5"}), frozenset({"4", "5", "6"}),
        }
        assert out.n == 6  # universe kept

    def test_induced_shrinks_universe(self):
        out = self.cpx.induced(["1", "3", "5", "6"])
        # vertex 1 survives as an isolated vertex; edges 35 and 56 remain
        assert out.n == 4
        assert labelsets(out) == {
            frozenset({"1"}), frozenset({"3", "5"}), frozenset({"5", "6"})
        }

    def test_delete_vertex_vs_induced(self):
        gone = self.cpx.delete_face(self.cpx.mask(["1"]))
        ind = self.cpx.induced(["2", "3", "4", "5", "6"])
        assert {frozenset(gone.labels_of(f)) for f in gone.facets} == {
            frozenset(ind.labels_of(f)) for f in ind.facets
        }

    def test_delete_only_facet(self):
        single = from_facets([1], [{1}])
        assert single.delete_face(single.mask(["1"])).is_irrelevant

    def test_delete_empty_errors(self):
        with pytest.raises(ComplexError):
            self.cpx.delete_face(0)


class TestIsCone:
    def test_full_simplex(self):
        assert full_simplex([1, 2, 3]).is_cone() == 0

    def test_boundary(self):
        assert boundary_simplex(3).is_cone() is None

    def test_multicone_intersection_complex(self):
        cpx = intersection_complex(IntersectionSpec((1, 1, 1)))
        v = cpx.is_cone()
        assert v is not None
        assert cpx.labels[v] == "v{1,2,3}^1"


class TestFreePairsAndCollapse:
    def test_two_disjoint_edges(self):
        cpx = from_facets(["y0", "x1", "y1", "x0"], [{"y0", "x1"}, {"y1", "x0"}])
        pair = find_free_pair(cpx)
        assert pair is not None
        g, f = pair
        assert g.bit_count() == 1 and f.bit_count() == 2 and g & f == g
        before = oracle_homology(cpx)
        after = oracle_homology(collapse(cpx))
        assert before == after == {0: 1}

    def test_sphere_has_no_free_pair(self):
        cpx = boundary_simplex(3)
        assert find_free_pair(cpx) is None
        # exhaustive cross-check: every nonempty face is an intersection of facets
        closure = facet_intersection_closure(cpx)
        for f in cpx.faces():
            if f:
                assert f in closure

    def test_full_simplex_on_two_collapses_to_point(self):
        out = collapse(full_simplex([1, 2]))
        assert len(out.facets) == 1 and out.facets[0].bit_count() == 1
        assert oracle_homology(out) == {}

    def test_collapse_preserves_homology_randomized(self):
        rng = random.Random(11)
        for _ in range(20):
            cpx = random_complex(rng, rng.randint(2, 6))
            assert oracle_homology(cpx) == oracle_homology(collapse(cpx))
            assert oracle_homology(cpx, p=2) == oracle_homology(collapse(cpx), p=2)

    def test_free_pair_condition(self):
        rng = random.Random(13)
        for _ in range(30):
            cpx = random_complex(rng, rng.randint(2, 6))
            pair = find_free_pair(cpx)
            if pair is None:
                continue
            g, f = pair
            assert cpx.has_face(g) and cpx.has_face(f) and g != f and g & f == g
            for facet in cpx.facets:
                if facet & g == g:
                    assert facet & f == f


class TestCanonicalForm:
    def test_relabelled_pair(self):
        a = from_facets([1, 2, 3], [{1, 2}, {3}])
        b = from_facets([1, 2, 3], [{2, 3}, {1}])
        assert are_isomorphic(a, b)

    def test_partition_equals_intersection(self):
        assert are_isomorphic(
            partition_complex(PartitionSpec(2, 2, 1)),
            intersection_complex(IntersectionSpec((1, 1, 0))),
        )

    def test_sphere_not_full(self):
        assert not are_isomorphic(boundary_simplex(3), full_simplex([1, 2, 3]))

    def test_idempotent(self, three_triangles):
        c1 = three_triangles.canonical_form()
        assert c1.canonical_form() == c1

    def test_equivalence_relation(self):
        rng = random.Random(3)
        pool = [random_complex(rng, 5) for _ in range(8)]
        # reflexive + symmetric on all pairs; transitive through canonical keys
        for a in pool:
            assert are_isomorphic(a, a)
        for a, b in itertools.combinations(pool, 2):
            assert are_isomorphic(a, b) == are_isomorphic(b, a)

    def test_relabeling_always_isomorphic(self):
        rng = random.Random(5)
        for _ in range(15):
            cpx = random_complex(rng, 6)
            perm = list(range(6))
            rng.shuffle(perm)
            remapped = SimplicialComplex(
                cpx.labels,
                [sum(1 << perm[v] for v in range(6) if f >> v & 1) for f in cpx.facets],
            )
            assert are_isomorphic(cpx, remapped)


class TestJsonFormat:
    def test_round_trip(self, three_triangles):
        again = SimplicialComplex.from_json(json.loads(three_triangles.to_json_str()))
        assert again == three_triangles

    def test_reader_normalizes_generators(self):
        data = {"labels": ["1", "2"], "facets": [["1"], ["1", "2"]]}
        cpx = SimplicialComplex.from_json(data)
        assert labelsets(cpx) == {frozenset({"1", "2"})}

    def test_writer_sorted(self, three_triangles):
        out = three_triangles.to_json()
        assert out["facets"] == [["1", "2", "6"], ["1", "3", "5"], ["2", "3", "4"]]

    def test_bad_json(self):
        with pytest.raises(ComplexError):
            SimplicialComplex.from_json({"labels": ["1"]})
