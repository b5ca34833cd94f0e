"""Betti diagrams of Stanley-Reisner ideals and the pure-resolution predicate.

The dual form of Hochster's formula drives everything: the (i,d) entry for
the ideal of the dual complex is the total dimension of (i-1)-st link
homology over faces of size n-d.  Only faces that arise as intersections of
facets can contribute (any other face has a coned, acyclic link), which
keeps the face scan tractable on the bigger pipeline complexes.

The direct form is implemented with homology exponent d-i-2.  The sources
that state the formula with exponent d-i are inconsistent with the dual
form on the boundary of a simplex (whose ideal is principal); the duality
identity betti_direct(K) == betti_dual(K*) is the arbiter and is enforced
by tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .complexes import (
    Mask,
    SimplicialComplex,
    face_key,
    facet_intersection_closure,
)
from .errors import ComplexError, DiagramError, ZeroIdealError
from .homology import QQ, FieldSpec, HomologyVector, homology_fast

IndexSet = frozenset


def boxplus(a: Iterable[int], b: Iterable[int]) -> IndexSet:
    """Sumset {x + y}; empty if either argument is empty."""
    return frozenset(x + y for x in a for y in b)


class BettiDiagram:
    """Sparse table of graded Betti numbers beta_{i,d} of a squarefree ideal.

    Rendered in the standard convention: row r, column j holds beta_{j,r+j},
    with '.' for zero.
    """

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: dict[tuple[int, int], int]):
        clean = {}
        for (i, d), v in entries.items():
            if v == 0:
                continue
            if v < 0 or i < 0 or d < 0:
                raise DiagramError("Betti entries must be positive with i,d >= 0")
            if i > n:
                raise DiagramError(f"beta_{{{i},{d}}} nonzero violates the syzygy bound i <= {n}")
            clean[(int(i), int(d))] = int(v)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("BettiDiagram is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, BettiDiagram)
            and self.n == other.n
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.n, tuple(self.entries.items())))

    def __repr__(self):
        return f"BettiDiagram(n={self.n}, entries={self.entries})"

    def beta(self, i: int, d: int) -> int:
        return self.entries.get((i, d), 0)

    def projective_dimension(self) -> int:
        return max(i for i, _ in self.entries)

    def row_range(self) -> tuple[int, int]:
        rs = [d - i for i, d in self.entries]
        return min(rs), max(rs)

    def is_pure(self) -> bool:
        return self.purity_diagnosis() == "pure"

    def purity_diagnosis(self) -> str:
        """'pure', 'multiple-shifts', or 'index-gap'.

        An index gap (some i between 0 and the projective dimension with no
        entry) cannot occur for an actual Stanley-Reisner ideal, so it
        signals corrupted data rather than an interesting diagram.
        """
        by_i: dict[int, list[int]] = {}
        for (i, d) in self.entries:
            by_i.setdefault(i, []).append(d)
        if any(len(ds) > 1 for ds in by_i.values()):
            return "multiple-shifts"
        p = max(by_i)
        if set(by_i) != set(range(p + 1)):
            return "index-gap"
        return "pure"

    def shift_type(self) -> Optional[tuple[int, ...]]:
        """(c_p, ..., c_0) for a pure diagram, else None."""
        if not self.is_pure():
            return None
        shifts = {i: d for (i, d) in self.entries}
        p = max(shifts)
        return tuple(shifts[i] for i in range(p, -1, -1))

    def degree_type(self) -> Optional[tuple[int, ...]]:
        """(d_p, ..., d_1) = consecutive shift differences, else None."""
        st = self.shift_type()
        if st is None:
            return None
        return tuple(st[k] - st[k + 1] for k in range(len(st) - 1))

    # -- vector/grid view used by the cone computations --------------------

    def grid_vector(self, row_lo: int, row_hi: int, col_hi: int) -> tuple[int, ...]:
        """Flatten onto the (row, column) grid, rows row_lo..row_hi, columns
        0..col_hi, row-major."""
        out = []
        for r in range(row_lo, row_hi + 1):
            for j in range(col_hi + 1):
                out.append(self.beta(j, r + j))
        return tuple(out)

    # -- rendering ----------------------------------------------------------

    def render(self) -> str:
        lo, hi = self.row_range()
        lo = max(lo, 0)
        p = self.projective_dimension()
        lines = []
        for r in range(lo, hi + 1):
            cells = []
            for j in range(p + 1):
                v = self.beta(j, r + j)
                cells.append(str(v) if v else ".")
            lines.append(f"{r} | " + " ".join(cells))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"n": self.n, "entries": [[i, d, v] for (i, d), v in self.entries.items()]}

    @staticmethod
    def from_json(data) -> "BettiDiagram":
        return BettiDiagram(data["n"], {(i, d): v for i, d, v in data["entries"]})


def diagram_is_pure(b: BettiDiagram) -> bool:
    return b.is_pure()


def diagram_shift_type(b: BettiDiagram) -> Optional[tuple[int, ...]]:
    return b.shift_type()


def diagram_degree_type(b: BettiDiagram) -> Optional[tuple[int, ...]]:
    return b.degree_type()


def diagram_from_rows(text: str, n: int) -> BettiDiagram:
    """Parse rows in the rendered format, e.g. ``"3 | 3 . . ; 4 | . 3 1"``."""
    entries: dict[tuple[int, int], int] = {}
    for raw in text.split(";"):
        raw = raw.strip()
        if not raw:
            continue
        head, _, body = raw.partition("|")
        r = int(head.strip())
        for j, cell in enumerate(body.split()):
            if cell == ".":
                continue
            entries[(j, r + j)] = int(cell)
    return BettiDiagram(n, entries)


# -- link homology bookkeeping ----------------------------------------------


class LinkTable:
    """Memoized link homology over the facet-intersection closure.

    Faces outside the closure have coned links, so their homology index set
    is empty; the table never computes them.
    """

    def __init__(self, cpx: SimplicialComplex, field: FieldSpec):
        self.cpx = cpx
        self.field = field
        self.closure = facet_intersection_closure(cpx)
        self._hom: dict[Mask, HomologyVector] = {}

    def homology(self, face: Mask) -> HomologyVector:
        if face not in self.closure:
            return HomologyVector()
        got = self._hom.get(face)
        if got is None:
            got = homology_fast(self.cpx.link(face), self.field)
            self._hom[face] = got
        return got

    def h_set(self, face: Mask) -> IndexSet:
        return self.homology(face).support()

    def carriers(self) -> list[tuple[Mask, HomologyVector]]:
        """Closure faces with nonzero link homology, in (size, lex) order."""
        out = []
        for face in sorted(self.closure, key=face_key):
            hom = self.homology(face)
            if not hom.is_zero():
                out.append((face, hom))
        return out


def h_set(cpx: SimplicialComplex, face: Mask, field: FieldSpec = QQ) -> IndexSet:
    """Degrees where the link of ``face`` has nonzero reduced homology."""
    if not cpx.has_face(face):
        raise ComplexError("h_set of a non-face")
    return LinkTable(cpx, field).h_set(face)


def hh_set(cpx: SimplicialComplex, m: int, field: FieldSpec = QQ) -> IndexSet:
    """Union of h_set over all faces of size ``m``."""
    if m < 0:
        raise ComplexError("face size must be >= 0")
    table = LinkTable(cpx, field)
    out: set[int] = set()
    for face in table.closure:
        if face.bit_count() == m:
            out |= table.h_set(face)
    return frozenset(out)


# -- Hochster's formula -------------------------------------------------------


def _require_proper(cpx: SimplicialComplex, dual: bool) -> None:
    if cpx.n == 0:
        raise ZeroIdealError("no variables: Betti diagram undefined")
    if dual:
        if cpx.is_void:
            raise ZeroIdealError("void complex: dual ideal is the whole ring")
        if cpx.is_full_simplex:
            raise ZeroIdealError("full simplex: dual ideal is zero")
    else:
        if cpx.is_void:
            raise ZeroIdealError("void complex: ideal is the whole ring")
        if cpx.is_full_simplex:
            raise ZeroIdealError("full simplex: ideal is zero")


def betti_dual(cpx: SimplicialComplex, field: FieldSpec = QQ) -> BettiDiagram:
    """Betti diagram of the Stanley-Reisner ideal of the Alexander dual.

    beta_{i,d} sums dim of (i-1)-st link homology over faces of size n-d,
    the empty face contributing at d = n.
    """
    _require_proper(cpx, dual=True)
    n = cpx.n
    table = LinkTable(cpx, field)
    entries: dict[tuple[int, int], int] = {}
    for face, hom in table.carriers():
        d = n - face.bit_count()
        for j, dim in hom.items():
            i = j + 1
            if i >= 0:
                entries[(i, d)] = entries.get((i, d), 0) + dim
    return BettiDiagram(n, entries)


def betti_direct(cpx: SimplicialComplex, field: FieldSpec = QQ) -> BettiDiagram:
    """Betti diagram of the Stanley-Reisner ideal of the complex itself.

    beta_{i,d} sums dim of (d-i-2)-nd homology of induced subcomplexes on
    vertex subsets W of size d.  Equals betti_dual of the Alexander dual on
    every input.
    """
    _require_proper(cpx, dual=False)
    n = cpx.n
    full = (1 << n) - 1
    entries: dict[tuple[int, int], int] = {}
    for w in range(1, full + 1):
        sub = SimplicialComplex(
            [str(k) for k in range(w.bit_count())], _restrict_masks(cpx.facets, w)
        )
        hom = homology_fast(sub, field)
        if hom.is_zero():
            continue
        d = w.bit_count()
        for j, dim in hom.items():
            i = d - j - 2
            if i >= 0:
                entries[(i, d)] = entries.get((i, d), 0) + dim
    return BettiDiagram(n, entries)


def _restrict_masks(facets: tuple[Mask, ...], w: Mask) -> list[Mask]:
    """Facet masks intersected with w and compressed onto w's bit positions."""
    positions = {}
    idx = 0
    ww = w
    while ww:
        low = ww & -ww
        positions[low.bit_length() - 1] = idx
        idx += 1
        ww ^= low
    out = []
    for f in facets:
        m = f & w
        c = 0
        while m:
            low = m & -m
            c |= 1 << positions[low.bit_length() - 1]
            m ^= low
        out.append(c)
    return out


# -- the PR predicate ---------------------------------------------------------


@dataclass(frozen=True)
class PrSummary:
    """Outcome of the pure-resolution test.

    When ``is_pr`` holds: ``sizes`` is (s_p, ..., s_0) ascending, the face
    sizes carrying homology at degrees -1, ..., p-1; ``degree_type`` is
    (d_p, ..., d_1) with d_i = s_{i-1} - s_i; ``offset`` is s_p.  On failure
    ``witness`` is the first (size, lex) pair of faces of different sizes
    whose homology index sets meet.
    """

    is_pr: bool
    degree_type: Optional[tuple[int, ...]] = None
    offset: Optional[int] = None
    sizes: Optional[tuple[int, ...]] = None
    witness: Optional[tuple[Mask, Mask]] = None

    def shift_type(self, n: int) -> Optional[tuple[int, ...]]:
        """(c_p, ..., c_0) of the dual ideal's pure diagram: c_i = n - s_i."""
        if not self.is_pr or not self.sizes:
            return None
        return tuple(n - s for s in self.sizes)


def is_pr(cpx: SimplicialComplex, field: FieldSpec = QQ) -> PrSummary:
    """Decide whether links of faces of different sizes never share a
    homology degree; when they never do, extract degree type and offset."""
    if cpx.is_void:
        raise ComplexError("PR test on the void complex")
    table = LinkTable(cpx, field)
    carriers = table.carriers()

    size_of_degree: dict[int, int] = {}
    for face, hom in carriers:
        size = face.bit_count()
        for deg in hom:
            other = size_of_degree.get(deg)
            if other is None:
                size_of_degree[deg] = size
            elif other != size:
                witness = _first_witness(carriers)
                return PrSummary(is_pr=False, witness=witness)

    # facets always carry (-1)-st link homology, so carriers is nonempty
    assert carriers, "nonvoid complex without homology carriers"
    p = max(max(hom) for _, hom in carriers) + 1
    sizes = [None] * (p + 1)  # sizes[i] = s_i, homology degree i-1
    for face, hom in carriers:
        for deg in hom:
            sizes[deg + 1] = face.bit_count()
    if any(s is None for s in sizes):
        raise ComplexError("internal: homology degrees of a PR complex have a gap")
    degree_type = tuple(sizes[i - 1] - sizes[i] for i in range(p, 0, -1))
    _check_hh_table(table, p, sizes)
    return PrSummary(
        is_pr=True,
        degree_type=degree_type,
        offset=sizes[p],
        sizes=tuple(sizes[::-1]),
    )


def _first_witness(carriers) -> tuple[Mask, Mask]:
    for a in range(len(carriers)):
        fa, ha = carriers[a]
        for b in range(a + 1, len(carriers)):
            fb, hb = carriers[b]
            if fa.bit_count() != fb.bit_count() and ha.support() & hb.support():
                return (fa, fb)
    raise ComplexError("internal: PR failure without witness")


def _check_hh_table(table: LinkTable, p: int, sizes: list[int]) -> None:
    """Cross-check the complete homology index sets against the degree-type
    table: hh(m) = {r-2} exactly at m = s + sum of the top p-r+1 degree
    steps, empty elsewhere."""
    expect: dict[int, frozenset[int]] = {}
    for r in range(1, p + 2):
        expect[sizes[r - 1]] = frozenset({r - 2})
    got: dict[int, set[int]] = {}
    for face in table.closure:
        hs = table.h_set(face)
        if hs:
            got.setdefault(face.bit_count(), set()).update(hs)
    if {m: frozenset(v) for m, v in got.items()} != expect:
        raise ComplexError("internal: hh table disagrees with degree-type extraction")


def is_cohen_macaulay(cpx: SimplicialComplex, field: FieldSpec = QQ) -> bool:
    """Reisner's criterion: every link has homology only in its top degree."""
    if cpx.is_void:
        raise ComplexError("Cohen-Macaulay test on the void complex")
    d = cpx.dim()
    table = LinkTable(cpx, field)
    for face in table.closure:
        top = d - face.bit_count()
        if any(deg != top for deg in table.h_set(face)):
            return False
    return True


def chain_descend(
    cpx: SimplicialComplex, sigma: Mask, j: int, field: FieldSpec = QQ
) -> list[Mask]:
    """A chain sigma = t_j < t_{j-1} < ... < t_{-1} of faces with the link of
    t_i carrying homology in degree i.  Existence is guaranteed whenever the
    precondition (nonzero degree-j homology at sigma, j >= 0) holds, so a
    failed search raises."""
    if j < 0:
        raise ComplexError("chain_descend needs j >= 0")
    table = LinkTable(cpx, field)
    if j not in table.h_set(sigma):
        raise ComplexError("chain_descend precondition: link of sigma must have degree-j homology")
    chain = [sigma]
    cur = sigma
    closure_sorted = sorted(table.closure, key=face_key)
    for i in range(j - 1, -2, -1):
        nxt = None
        for cand in closure_sorted:
            if cand != cur and cand & cur == cur and i in table.h_set(cand):
                nxt = cand
                break
        if nxt is None:
            raise ComplexError("internal: descending homology chain broke off")
        chain.append(nxt)
        cur = nxt
    return chain
