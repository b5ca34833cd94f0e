"""Exact abstract simplicial complexes over a labelled vertex universe.

Faces are plain Python ints used as bit vectors over the universe, so
universes larger than 64 vertices work without any special casing.  A
:class:`SimplicialComplex` is an ordered label table plus an irredundant
facet list kept in a fixed total order: by size, then lexicographically on
the sorted vertex indices.

Two degenerate complexes are distinguished throughout:

* the *void* complex, with no faces at all (empty facet list), and
* the *irrelevant* complex ``{null}``, whose single facet is the empty face.
"""

from __future__ import annotations

import itertools
import json
from typing import Iterable, Iterator, Optional, Sequence

from .errors import ComplexError, UniverseTooLarge

Mask = int


def bits(mask: Mask) -> Iterator[int]:
    """Yield the set bit positions of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> Mask:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def face_key(mask: Mask) -> tuple:
    """Total order on faces: size first, then lexicographic on indices."""
    return (mask.bit_count(), tuple(bits(mask)))


def _reduce_antichain(masks: Iterable[Mask]) -> list[Mask]:
    """Inclusion-maximal elements of ``masks``, sorted by ``face_key``."""
    uniq = sorted(set(masks), key=lambda m: m.bit_count(), reverse=True)
    out: list[Mask] = []
    for m in uniq:
        if not any(m & big == m for big in out):
            out.append(m)
    out.sort(key=face_key)
    return out


class SimplicialComplex:
    """Immutable complex: ``labels`` fixes the universe, ``facets`` its maximal faces.

    The constructor normalizes: facets are deduplicated, reduced to an
    antichain and sorted.  All operations return new values; nothing is
    mutated after construction.
    """

    __slots__ = ("labels", "facets", "_label_index")

    def __init__(self, labels: Sequence[str], facets: Iterable[Mask]):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise ComplexError("duplicate labels in vertex universe")
        facets = _reduce_antichain(facets)
        limit = 1 << len(labels)
        for f in facets:
            if f < 0 or f >= limit:
                raise ComplexError("facet bits outside the vertex universe")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "facets", tuple(facets))
        object.__setattr__(self, "_label_index", {lab: i for i, lab in enumerate(labels)})

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("SimplicialComplex is immutable")

    # -- basic queries ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def is_irrelevant(self) -> bool:
        return self.facets == (0,)

    @property
    def is_full_simplex(self) -> bool:
        return self.facets == ((1 << self.n) - 1,) and self.n > 0

    def dim(self) -> Optional[int]:
        """Dimension; ``None`` for the void complex, -1 for ``{null}``."""
        if not self.facets:
            return None
        return max(f.bit_count() for f in self.facets) - 1

    def is_pure(self) -> bool:
        if not self.facets:
            return True
        sizes = {f.bit_count() for f in self.facets}
        return len(sizes) == 1

    def index_of(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise ComplexError(f"unknown label {label!r}") from None

    def mask(self, labels: Iterable) -> Mask:
        return mask_of(self.index_of(str(x)) for x in labels)

    def labels_of(self, mask: Mask) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in bits(mask))

    def has_face(self, mask: Mask) -> bool:
        return any(mask & f == mask for f in self.facets)

    def vertex_support(self) -> Mask:
        sup = 0
        for f in self.facets:
            sup |= f
        return sup

    # -- face enumeration ------------------------------------------------

    def faces(self) -> Iterator[Mask]:
        """All faces, each once, size ascending then lex.  Includes the empty
        face unless the complex is void."""
        if not self.facets:
            return
        top = max(f.bit_count() for f in self.facets)
        for k in range(top + 1):
            yield from self.faces_of_size(k)

    def faces_of_size(self, k: int) -> list[Mask]:
        if not self.facets or k < 0:
            return []
        found = set()
        for f in self.facets:
            vs = list(bits(f))
            if len(vs) < k:
                continue
            for combo in itertools.combinations(vs, k):
                found.add(mask_of(combo))
        return sorted(found, key=face_key)

    def face_count(self) -> int:
        return sum(1 for _ in self.faces())

    def f_vector(self) -> list[int]:
        """Counts of faces by size, index k = faces of size k (dim k-1)."""
        if not self.facets:
            return []
        top = max(f.bit_count() for f in self.facets)
        return [len(self.faces_of_size(k)) for k in range(top + 1)]

    # -- constructions (links, duals, skeleta, joins, deletions) ---------

    def link(self, face: Mask) -> "SimplicialComplex":
        if not self.has_face(face):
            raise ComplexError("link of a non-face")
        if face == 0:
            return self
        return SimplicialComplex(
            self.labels, [f & ~face for f in self.facets if f & face == face]
        )

    def alexander_dual(self) -> "SimplicialComplex":
        """Dual complex on the same universe: F is a face iff its complement
        is a non-face."""
        full = (1 << self.n) - 1
        duals = [full & ~nf for nf in self.minimal_nonfaces()]
        return SimplicialComplex(self.labels, duals)

    def minimal_nonfaces(self) -> list[Mask]:
        """Inclusion-minimal subsets of the universe that are not faces.

        Computed as the minimal transversals of the facet complements
        (Berge's sequential algorithm); output sorted by ``face_key``.
        """
        full = (1 << self.n) - 1
        trans: list[Mask] = [0]
        for f in self.facets:
            edge = full & ~f
            if edge == 0:
                return []  # full simplex: no nonfaces
            hit = [t for t in trans if t & edge]
            miss = [t for t in trans if not (t & edge)]
            cand = set(hit)
            for t in miss:
                for v in bits(edge):
                    cand.add(t | (1 << v))
            trans = _minimize(cand)
        if not self.facets:
            trans = [0]  # void: the empty set is already a nonface
        return sorted(trans, key=face_key)

    def skeleton(self, r: int) -> "SimplicialComplex":
        if r < -1:
            raise ComplexError("skeleton dimension must be >= -1")
        gens: list[Mask] = []
        for f in self.facets:
            if f.bit_count() <= r + 1:
                gens.append(f)
            else:
                vs = list(bits(f))
                gens.extend(mask_of(c) for c in itertools.combinations(vs, r + 1))
        return SimplicialComplex(self.labels, gens)

    def join(self, other: "SimplicialComplex") -> "SimplicialComplex":
        if set(self.labels) & set(other.labels):
            raise ComplexError("join requires disjoint label sets")
        shift = self.n
        facets = [a | (b << shift) for a in self.facets for b in other.facets]
        return SimplicialComplex(self.labels + other.labels, facets)

    def induced(self, labels: Iterable) -> "SimplicialComplex":
        """Induced subcomplex on a label subset; the universe shrinks."""
        keep = {str(x) for x in labels}
        unknown = keep - set(self.labels)
        if unknown:
            raise ComplexError(f"unknown labels {sorted(unknown)!r}")
        new_labels = tuple(lab for lab in self.labels if lab in keep)
        old_pos = [i for i, lab in enumerate(self.labels) if lab in keep]
        umask = mask_of(old_pos)
        remap = {old: new for new, old in enumerate(old_pos)}

        def compress(m: Mask) -> Mask:
            return mask_of(remap[v] for v in bits(m))

        return SimplicialComplex(new_labels, [compress(f & umask) for f in self.facets])

    def restrict_to_support(self) -> "SimplicialComplex":
        """Drop universe vertices that appear in no facet."""
        sup = self.vertex_support()
        return self.induced(self.labels[i] for i in bits(sup))

    def delete_face(self, face: Mask) -> "SimplicialComplex":
        """All faces not containing ``face``; the universe is kept."""
        if face == 0:
            raise ComplexError("cannot delete the empty face")
        new: list[Mask] = []
        for f in self.facets:
            if face & ~f:
                new.append(f)
            else:
                new.extend(f & ~(1 << v) for v in bits(face))
        return SimplicialComplex(self.labels, new)

    def is_cone(self) -> Optional[int]:
        """Index of a vertex lying in every facet (smallest index), else None."""
        if not self.facets:
            return None
        common = self.facets[0]
        for f in self.facets[1:]:
            common &= f
        if common == 0:
            return None
        return (common & -common).bit_length() - 1

    # -- structural equality / canonical form ----------------------------

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.labels == other.labels
            and self.facets == other.facets
        )

    def __hash__(self):
        return hash((self.labels, self.facets))

    def __repr__(self):
        shown = [",".join(self.labels_of(f)) or "null" for f in self.facets[:8]]
        tail = "..." if len(self.facets) > 8 else ""
        return f"SimplicialComplex(n={self.n}, facets=[{'; '.join(shown)}{tail}])"

    def canonical_key(self) -> tuple:
        return (self.n, _minimal_facet_matrix(self.n, self.facets)[0])

    def canonical_form(self) -> "SimplicialComplex":
        best, perm = _minimal_facet_matrix(self.n, self.facets)
        if best == self.facets:
            return self
        new_labels = tuple(self.labels[perm[pos]] for pos in range(self.n))
        return SimplicialComplex(new_labels, best)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "facets": [list(self.labels_of(f)) for f in self.facets],
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @staticmethod
    def from_json(data) -> "SimplicialComplex":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "labels" not in data or "facets" not in data:
            raise ComplexError("complex JSON must have 'labels' and 'facets'")
        return from_facets(data["labels"], data["facets"])


def _minimize(masks: Iterable[Mask]) -> list[Mask]:
    """Inclusion-minimal elements."""
    uniq = sorted(set(masks), key=lambda m: m.bit_count())
    out: list[Mask] = []
    for m in uniq:
        if not any(m & small == small for small in out):
            out.append(m)
    return out


# -- constructors ---------------------------------------------------------


def from_facets(labels: Sequence, generators: Iterable[Iterable]) -> SimplicialComplex:
    """Smallest complex on ``labels`` containing every generator set.

    Generators may be redundant (non-antichain); they are reduced.  Labels
    define the universe even if some label appears in no generator.
    """
    labels = [str(x) for x in labels]
    cpx = SimplicialComplex(labels, [])
    masks = [cpx.mask(g) for g in generators]
    return SimplicialComplex(labels, masks)


def void_complex(labels: Sequence = ()) -> SimplicialComplex:
    return SimplicialComplex([str(x) for x in labels], [])


def irrelevant_complex(labels: Sequence = ()) -> SimplicialComplex:
    return SimplicialComplex([str(x) for x in labels], [0])


def full_simplex(labels: Sequence) -> SimplicialComplex:
    labels = [str(x) for x in labels]
    return SimplicialComplex(labels, [(1 << len(labels)) - 1])


def boundary_simplex(n: int, labels: Optional[Sequence] = None) -> SimplicialComplex:
    """Boundary of the (n-1)-simplex on n vertices."""
    if labels is None:
        labels = [str(i + 1) for i in range(n)]
    labels = [str(x) for x in labels]
    if len(labels) != n:
        raise ComplexError("boundary_simplex needs exactly n labels")
    full = (1 << n) - 1
    return SimplicialComplex(labels, [full & ~(1 << v) for v in range(n)])


def skeleton_of_set(labels: Sequence, r: int) -> SimplicialComplex:
    return full_simplex(labels).skeleton(r)


def all_faces(cpx: SimplicialComplex):
    """Every face of the complex, each exactly once, sizes ascending."""
    return cpx.faces()


def faces_of_size(cpx: SimplicialComplex, k: int) -> list[Mask]:
    return cpx.faces_of_size(k)


def are_isomorphic(a: SimplicialComplex, b: SimplicialComplex) -> bool:
    """True when some relabeling of the universe carries one complex to the
    other (unused universe vertices count)."""
    if a.n != b.n or len(a.facets) != len(b.facets):
        return False
    if sorted(f.bit_count() for f in a.facets) != sorted(f.bit_count() for f in b.facets):
        return False
    return a.canonical_key() == b.canonical_key()


# -- free pairs and collapsing ---------------------------------------------


def facet_intersection_closure(cpx: SimplicialComplex) -> frozenset[Mask]:
    """All intersections of nonempty facet subsets.

    Faces outside this closure have links that are cones, hence acyclic:
    the intersection of all facets containing such a face strictly contains
    it, and the extra vertex cones the link.
    """
    facets = cpx.facets
    cur = set(facets)
    frontier = set(facets)
    while frontier:
        new = set()
        for a in frontier:
            for f in facets:
                x = a & f
                if x not in cur:
                    new.add(x)
        cur |= new
        frontier = new
    return frozenset(cur)


def find_free_pair(cpx: SimplicialComplex) -> Optional[tuple[Mask, Mask]]:
    """First (size, lex) nonempty face g whose containing facets share a
    strictly larger common face, paired with the smallest such superface f.

    A nonempty face g qualifies exactly when it is not an intersection of
    facets; deleting it is a deformation retraction.
    """
    if not cpx.facets:
        return None
    closure = facet_intersection_closure(cpx)
    top = max(f.bit_count() for f in cpx.facets)
    for k in range(1, top + 1):
        for g in cpx.faces_of_size(k):
            if g in closure:
                continue
            t = -1  # all-ones sentinel
            for f in cpx.facets:
                if f & g == g:
                    t &= f
            extra = t & ~g
            v = (extra & -extra).bit_length() - 1
            return (g, g | (1 << v))
    return None


def collapse(cpx: SimplicialComplex) -> SimplicialComplex:
    """Repeatedly delete free faces until none remains.

    Each step is a deformation retraction, so reduced homology over every
    field is preserved.
    """
    while True:
        pair = find_free_pair(cpx)
        if pair is None:
            return cpx
        cpx = cpx.delete_face(pair[0])


# -- canonical form ---------------------------------------------------------

_CANONICAL_CLASS_LIMIT = 12
_CANONICAL_NODE_BUDGET = 5_000_000


def _twin_classes(n: int, facets: Sequence[Mask]) -> list[list[int]]:
    """Group universe vertices by identical facet-membership vectors."""
    groups: dict[tuple, list[int]] = {}
    for v in range(n):
        vec = tuple(1 if f >> v & 1 else 0 for f in facets)
        groups.setdefault(vec, []).append(v)
    return list(groups.values())


def _refined_colors(k: int, qfacets: list[int], weights: list[int]) -> list[int]:
    """Iterated invariant coloring of the twin-free quotient, weights folded
    into the initial color, compressed to dense ranks."""
    wsize = [sum(weights[v] for v in bits(f)) for f in qfacets]
    struct = [
        (weights[v], tuple(sorted(wsize[t] for t, f in enumerate(qfacets) if f >> v & 1)))
        for v in range(k)
    ]
    order = sorted(set(struct))
    ranks = [order.index(c) for c in struct]
    for _ in range(k):
        fcol = [
            (wsize[t], tuple(sorted(ranks[v] for v in bits(f))))
            for t, f in enumerate(qfacets)
        ]
        nxt_struct = [
            (ranks[v], tuple(sorted(fcol[t] for t, f in enumerate(qfacets) if f >> v & 1)))
            for v in range(k)
        ]
        order = sorted(set(nxt_struct))
        nxt = [order.index(c) for c in nxt_struct]
        if nxt == ranks:
            break
        ranks = nxt
    return ranks


def _minimal_facet_matrix(n: int, facets: tuple[Mask, ...]) -> tuple[tuple[Mask, ...], list[int]]:
    """Canonical facet matrix and an achieving permutation (new position ->
    old vertex).

    Twin vertices are collapsed to a weighted quotient first; the quotient
    is relabeled to sort an iterated invariant coloring and to minimize its
    facet matrix within color blocks, and the result is expanded back.  The
    outcome is a complete isomorphism invariant: complexes with equal
    canonical matrices are both isomorphic to that matrix.
    """
    if not facets or facets == (0,):
        return facets, list(range(n))

    classes = _twin_classes(n, facets)
    classes.sort(key=lambda cls: cls[0])
    k = len(classes)
    if k > _CANONICAL_CLASS_LIMIT:
        raise UniverseTooLarge(
            f"{k} twin classes exceed the canonical-form search bound "
            f"{_CANONICAL_CLASS_LIMIT}"
        )
    weights = [len(cls) for cls in classes]
    rep_index = {cls[0]: i for i, cls in enumerate(classes)}
    qfacets = sorted(
        {mask_of(rep_index[cls[0]] for cls in classes if f & (1 << cls[0])) for f in facets}
    )
    colors = _refined_colors(k, qfacets, weights)
    pos_color = sorted(colors)
    qset = set(qfacets)
    vlists = [tuple(bits(f)) for f in qfacets]

    best_keys: list | None = None
    best_order: list[int] | None = None
    budget = [_CANONICAL_NODE_BUDGET]
    pos_of: dict[int, int] = {}

    def swap_is_automorphism(u: int, w: int) -> bool:
        if weights[u] != weights[w]:
            return False
        bu, bw = 1 << u, 1 << w
        for f in qfacets:
            if bool(f & bu) != bool(f & bw) and (f ^ bu ^ bw) not in qset:
                return False
        return True

    def descend(remaining: list[int]):
        nonlocal best_keys, best_order
        budget[0] -= 1
        if budget[0] < 0:
            raise UniverseTooLarge("canonical-form search exceeded its node budget")
        if not remaining:
            keys = sorted(
                (len(vl), tuple(sorted(pos_of[v] for v in vl))) for vl in vlists
            )
            if best_keys is None or keys < best_keys:
                best_keys = keys
                best_order = sorted(pos_of, key=pos_of.__getitem__)
            return
        depth = len(pos_of)
        want = pos_color[depth]
        tried: list[int] = []
        for idx, v in enumerate(remaining):
            if colors[v] != want:
                continue
            if any(swap_is_automorphism(u, v) for u in tried):
                continue
            tried.append(v)
            pos_of[v] = depth
            descend(remaining[:idx] + remaining[idx + 1:])
            del pos_of[v]

    descend(list(range(k)))
    assert best_order is not None

    # expand the quotient order back to original vertices, class members in
    # index order
    perm: list[int] = []
    for qv in best_order:
        perm.extend(classes[qv])
    final_pos = {old: pos for pos, old in enumerate(perm)}
    best_masks = tuple(
        sorted(
            (mask_of(final_pos[v] for v in bits(f)) for f in facets), key=face_key
        )
    )
    return best_masks, perm

