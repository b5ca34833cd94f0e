"""Census of small complexes up to isomorphism, their Betti diagrams, and
the extremal rays of the rational cone those diagrams span.

Enumeration walks all labeled antichains of nonempty vertex subsets and
keeps the canonical representative of each isomorphism class.  The
canonical labeling sorts vertices by an invariant color first (facet-size
profile) and minimizes the facet matrix among color-consistent relabelings,
which prunes the permutation scan hard; a numba kernel handles n = 6.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from math import gcd
from typing import Iterator, Optional, Sequence

import numpy as np

from ._backend import numba_enabled
from .betti import BettiDiagram
from .complexes import SimplicialComplex, face_key
from .errors import DomainError
from .exactlp import is_in_cone, nonneg_solution_on_support
from .homology import QQ, FieldSpec
from . import _kernels

CENSUS_MAX_N = 6


@dataclass(frozen=True)
class CensusFilter:
    """Which labeled complexes enter the census.

    The four flags mirror the separation conditions of completely
    separating systems: every vertex used, no vertex in all facets, no two
    vertices with identical facet membership, and no full simplex.
    """

    n: int
    require_all_vertices: bool = True
    forbid_cone_vertex: bool = True
    forbid_twin_vertices: bool = True
    exclude_full_simplex: bool = True

    @staticmethod
    def css(n: int) -> "CensusFilter":
        return CensusFilter(n)

    @staticmethod
    def catalog(n: int) -> "CensusFilter":
        """The small-vertex catalogue family: all vertices used, proper
        nonzero ideal; cone vertices and twins allowed."""
        return CensusFilter(n, True, False, False, True)

    @staticmethod
    def none(n: int) -> "CensusFilter":
        return CensusFilter(n, False, False, False, False)

    @staticmethod
    def named(name: str, n: int) -> "CensusFilter":
        key = name.strip().lower()
        if key == "css":
            return CensusFilter.css(n)
        if key == "catalog":
            return CensusFilter.catalog(n)
        if key == "none":
            return CensusFilter.none(n)
        raise DomainError(f"unknown filter name {name!r} (use css, catalog, none)")

    def flag_tuple(self) -> tuple[bool, bool, bool, bool]:
        return (
            self.require_all_vertices,
            self.forbid_cone_vertex,
            self.forbid_twin_vertices,
            self.exclude_full_simplex,
        )


def _passes(facets: tuple[int, ...], n: int, flags: tuple[bool, bool, bool, bool]) -> bool:
    require_all, forbid_cone, forbid_twin, exclude_full = flags
    full = (1 << n) - 1
    union = 0
    inter = full
    for f in facets:
        union |= f
        inter &= f
    if require_all and union != full:
        return False
    if forbid_cone and facets and inter != 0:
        return False
    if exclude_full and facets == (full,) and n > 0:
        return False
    if forbid_twin:
        seen = set()
        for v in range(n):
            vec = 0
            for idx, f in enumerate(facets):
                if f >> v & 1:
                    vec |= 1 << idx
            if vec in seen:
                return False
            seen.add(vec)
    return True


# -- canonical labeling for the census ---------------------------------------


def _vertex_colors(facets: Sequence[int], n: int) -> list[int]:
    """Iso-invariant vertex color: the multiset of incident facet sizes,
    packed as counts in 5-bit fields by size."""
    colors = []
    for v in range(n):
        c = 0
        for f in facets:
            if f >> v & 1:
                c += 1 << (5 * f.bit_count())
        colors.append(c)
    return colors


def _census_key(facets: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Canonical labeled facet list: vertices sorted by color, facet matrix
    minimized among color-consistent relabelings."""
    if not facets:
        return facets
    colors = _vertex_colors(facets, n)
    order = sorted(range(n), key=lambda v: (colors[v], v))
    groups: list[list[int]] = []
    prev = None
    for v in order:
        if prev is None or colors[v] != prev:
            groups.append([])
            prev = colors[v]
        groups[-1].append(v)

    best: Optional[list] = None
    best_masks: Optional[tuple[int, ...]] = None
    for arrangement in itertools.product(*(itertools.permutations(g) for g in groups)):
        old_at_pos = [v for grp in arrangement for v in grp]
        pos_of = {old: pos for pos, old in enumerate(old_at_pos)}
        mapped = sorted(
            (sum(1 << pos_of[v] for v in _bits(f)) for f in facets),
            key=face_key,
        )
        keys = [face_key(m) for m in mapped]
        if best is None or keys < best:
            best = keys
            best_masks = tuple(mapped)
    assert best_masks is not None
    return best_masks


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _is_census_canonical(facets: tuple[int, ...], n: int) -> bool:
    return _census_key(facets, n) == tuple(sorted(facets, key=face_key))


# -- enumeration ---------------------------------------------------------------


def count_labeled_antichains(n: int) -> int:
    """Number of labeled complexes on [n] (antichains of nonempty subsets,
    counting the empty antichain), cross-referenced against OEIS A014466."""
    count = 0
    for _ in _labeled_antichains(n):
        count += 1
    return count


def _labeled_antichains(n: int) -> Iterator[tuple[int, ...]]:
    """All antichains of nonempty subsets of [n], the empty one first."""
    masks = list(range(1, 1 << n))
    comp = {}
    for m in masks:
        comp[m] = [x for x in masks if x > m and (x & m == m or x & m == x)]

    chosen: list[int] = []

    def rec(avail: list[int]) -> Iterator[tuple[int, ...]]:
        yield tuple(chosen)
        for i, m in enumerate(avail):
            chosen.append(m)
            bad = set(comp[m])
            yield from rec([x for x in avail[i + 1:] if x not in bad])
            chosen.pop()

    yield from rec(masks)


def _scan_python(n: int, flags) -> tuple[int, list[tuple[int, ...]]]:
    labeled = 0
    reps: list[tuple[int, ...]] = []
    for ac in _labeled_antichains(n):
        labeled += 1
        if not _passes(ac, n, flags):
            continue
        if _is_census_canonical(ac, n):
            # the empty antichain stands for the irrelevant complex {null}
            reps.append(tuple(sorted(ac, key=face_key)) if ac else (0,))
    return labeled, reps


def _scan(n: int, flags) -> tuple[int, list[tuple[int, ...]]]:
    if numba_enabled():
        try:
            from ._fastscan import scan_numba

            return scan_numba(n, flags)
        except ImportError:  # pragma: no cover
            pass
    return _scan_python(n, flags)


def enumerate_complexes(flt: CensusFilter) -> list[SimplicialComplex]:
    """One canonical representative per isomorphism class passing the
    filter, sorted by (facet count, facet keys)."""
    if flt.n > CENSUS_MAX_N:
        raise DomainError(f"census enumeration capped at n = {CENSUS_MAX_N}")
    if flt.n < 1:
        raise DomainError("census needs n >= 1")
    _, reps = _scan(flt.n, flt.flag_tuple())
    labels = [str(i + 1) for i in range(flt.n)]
    reps.sort(key=lambda fs: (len(fs), [face_key(f) for f in fs]))
    return [SimplicialComplex(labels, fs) for fs in reps]


# -- census diagrams -----------------------------------------------------------


_HOM_CACHE: dict = {}


def _induced_homology_dims(
    facets: tuple[int, ...], w: int, field: FieldSpec
) -> tuple[tuple[int, int], ...]:
    """Reduced homology of the induced subcomplex on the vertex set w,
    memoized on the compressed maximal-face key."""
    positions = {}
    idx = 0
    ww = w
    while ww:
        low = ww & -ww
        positions[low.bit_length() - 1] = idx
        idx += 1
        ww ^= low
    restricted = set()
    for f in facets:
        m = f & w
        c = 0
        while m:
            low = m & -m
            c |= 1 << positions[low.bit_length() - 1]
            m ^= low
        restricted.add(c)
    maximal = tuple(
        sorted(
            (m for m in restricted if not any(m != o and m & o == m for o in restricted)),
            key=face_key,
        )
    )
    inter = -1
    for m in maximal:
        inter &= m
    if maximal and inter != 0:
        return ()  # coned, acyclic
    key = (maximal, str(field))
    got = _HOM_CACHE.get(key)
    if got is None:
        sub = SimplicialComplex([str(i) for i in range(w.bit_count())], maximal)
        from .homology import reduced_homology

        got = tuple(sorted(reduced_homology(sub, field).items()))
        _HOM_CACHE[key] = got
    return got


def census_diagram(cpx: SimplicialComplex, field: FieldSpec = QQ) -> BettiDiagram:
    """Betti diagram of the ideal of the complex (direct Hochster sum,
    memoized per induced subcomplex)."""
    n = cpx.n
    full = (1 << n) - 1
    entries: dict[tuple[int, int], int] = {}
    for w in range(1, full + 1):
        d = w.bit_count()
        for j, dim in _induced_homology_dims(cpx.facets, w, field):
            i = d - j - 2
            if i >= 0:
                entries[(i, d)] = entries.get((i, d), 0) + dim
    return BettiDiagram(n, entries)


@dataclass
class CensusReport:
    """Counts plus the diagram multiset of one census run."""

    flt: CensusFilter
    field: FieldSpec
    labeled_count: int
    class_count: int
    distinct_diagram_count: int
    pure_diagram_count: int
    diagrams: list[tuple[BettiDiagram, SimplicialComplex, int]] = dc_field(repr=False, default_factory=list)
    skipped_zero_ideal: int = 0

    def distinct_diagrams(self) -> list[BettiDiagram]:
        return [d for d, _, _ in self.diagrams]

    def to_json(self) -> dict:
        return {
            "filter": {
                "n": self.flt.n,
                "require_all_vertices": self.flt.require_all_vertices,
                "forbid_cone_vertex": self.flt.forbid_cone_vertex,
                "forbid_twin_vertices": self.flt.forbid_twin_vertices,
                "exclude_full_simplex": self.flt.exclude_full_simplex,
            },
            "field": str(self.field),
            "labeled_count": self.labeled_count,
            "class_count": self.class_count,
            "distinct_diagram_count": self.distinct_diagram_count,
            "pure_diagram_count": self.pure_diagram_count,
            "skipped_zero_ideal": self.skipped_zero_ideal,
            "diagrams": [
                {
                    "diagram": diag.to_json(),
                    "representative": rep.to_json(),
                    "class_multiplicity": mult,
                    "pure": diag.is_pure(),
                }
                for diag, rep, mult in self.diagrams
            ],
        }

    def to_csv(self) -> str:
        lines = ["rows;multiplicity;pure"]
        for diag, _, mult in self.diagrams:
            rows = " ; ".join(diag.render().splitlines())
            lines.append(f"{rows};{mult};{int(diag.is_pure())}")
        return "\n".join(lines) + "\n"


def _rep_hex_key(facets: tuple[int, ...], n: int) -> str:
    blob = bytes([n, len(facets)]) + b"".join(
        int(f).to_bytes(2, "little") for f in facets
    )
    return blob.hex()


def census(
    flt: CensusFilter,
    field: FieldSpec = QQ,
    jobs: int = 1,
    resume_path: Optional[str] = None,
) -> CensusReport:
    """Enumerate classes, compute each Betti diagram, aggregate.

    Parallel runs split the class list into fixed chunks and merge in input
    order, so reports are byte-identical for any job count.  ``resume_path``
    names a checkpoint: a sorted hex-key file, with computed diagrams kept
    in a JSONL sidecar.
    """
    labeled, reps = _scan(flt.n, flt.flag_tuple())
    reps.sort(key=lambda fs: (len(fs), [face_key(f) for f in fs]))
    labels = [str(i + 1) for i in range(flt.n)]
    full = (1 << flt.n) - 1

    done: dict[str, BettiDiagram] = {}
    sidecar = None
    if resume_path:
        import os

        sidecar = resume_path + ".results.jsonl"
        if os.path.exists(sidecar):
            with open(sidecar) as fh:
                for line in fh:
                    rec = json.loads(line)
                    done[rec["key"]] = BettiDiagram.from_json(rec["diagram"])

    todo: list[tuple[str, tuple[int, ...]]] = []
    skipped = 0
    keyed: list[tuple[str, tuple[int, ...], bool]] = []
    for fs in reps:
        key = _rep_hex_key(fs, flt.n)
        zero_ideal = fs == (full,) or not fs and flt.n == 0
        keyed.append((key, fs, zero_ideal))
        if zero_ideal:
            skipped += 1
        elif key not in done:
            todo.append((key, fs))

    results = _compute_diagrams(todo, flt.n, field, jobs)
    new_records = []
    for (key, _), diag in zip(todo, results):
        done[key] = diag
        new_records.append({"key": key, "diagram": diag.to_json()})

    if resume_path and new_records:
        with open(sidecar, "a") as fh:
            for rec in new_records:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
        with open(resume_path, "w") as fh:
            for key in sorted(done):
                fh.write(key + "\n")

    bucket: dict[BettiDiagram, tuple[SimplicialComplex, int]] = {}
    for key, fs, zero_ideal in keyed:
        if zero_ideal:
            continue
        diag = done[key]
        if diag in bucket:
            rep, mult = bucket[diag]
            bucket[diag] = (rep, mult + 1)
        else:
            bucket[diag] = (SimplicialComplex(labels, fs), 1)

    ordered = sorted(
        ((diag, rep, mult) for diag, (rep, mult) in bucket.items()),
        key=lambda t: (t[0].projective_dimension(), sorted(t[0].entries.items())),
    )
    pure = sum(1 for diag, _, _ in ordered if diag.is_pure())
    return CensusReport(
        flt=flt,
        field=field,
        labeled_count=labeled,
        class_count=len(reps),
        distinct_diagram_count=len(ordered),
        pure_diagram_count=pure,
        diagrams=ordered,
        skipped_zero_ideal=skipped,
    )


def _compute_diagrams(todo, n, field, jobs) -> list[BettiDiagram]:
    labels = [str(i + 1) for i in range(n)]
    if jobs <= 1 or len(todo) < 64:
        return [census_diagram(SimplicialComplex(labels, fs), field) for _, fs in todo]
    import multiprocessing as mp

    chunks = [todo[i::jobs] for i in range(jobs)]
    with mp.Pool(jobs) as pool:
        parts = pool.starmap(
            _diagram_chunk, [(chunk, n, str(field)) for chunk in chunks]
        )
    merged: dict[str, BettiDiagram] = {}
    for part in parts:
        for key, data in part:
            merged[key] = BettiDiagram.from_json(data)
    return [merged[key] for key, _ in todo]


def _diagram_chunk(chunk, n, field_text):
    field = FieldSpec.parse(field_text)
    labels = [str(i + 1) for i in range(n)]
    out = []
    for key, fs in chunk:
        diag = census_diagram(SimplicialComplex(labels, fs), field)
        out.append((key, diag.to_json()))
    return out


def pure_diagram_list(report: CensusReport) -> list[BettiDiagram]:
    """Deduplicated pure diagrams sorted by (projective dimension, shifts)."""
    pures = [d for d, _, _ in report.diagrams if d.is_pure()]
    pures.sort(key=lambda d: (d.projective_dimension(), d.shift_type()))
    return pures


# -- cone geometry --------------------------------------------------------------


@dataclass(frozen=True)
class RaySet:
    """Extremal rays of the cone spanned by a diagram list, on the minimal
    common (row, column) grid."""

    row_range: tuple[int, int]
    col_range: tuple[int, int]
    rays: tuple[tuple[int, ...], ...]
    rank: int

    def to_json(self) -> dict:
        return {
            "row_range": list(self.row_range),
            "col_range": list(self.col_range),
            "rays": [list(r) for r in self.rays],
            "rank": self.rank,
        }


def _primitive(vec: tuple[int, ...]) -> tuple[int, ...]:
    g = 0
    for x in vec:
        g = gcd(g, x)
    return vec if g in (0, 1) else tuple(x // g for x in vec)


def diagram_grid(diagrams: Sequence[BettiDiagram]) -> tuple[tuple[int, int], tuple[int, int]]:
    lo = min(d.row_range()[0] for d in diagrams)
    hi = max(d.row_range()[1] for d in diagrams)
    cols = max(d.projective_dimension() for d in diagrams)
    return (lo, hi), (0, cols)


def diagram_vectors(diagrams: Sequence[BettiDiagram]) -> tuple[tuple[tuple[int, ...], ...], tuple, tuple]:
    (lo, hi), (c0, c1) = diagram_grid(diagrams)
    vecs = tuple(d.grid_vector(lo, hi, c1) for d in diagrams)
    return vecs, (lo, hi), (c0, c1)


def cone_rank(vectors: Sequence[tuple[int, ...]]) -> int:
    mat = np.array(vectors, dtype=np.int64)
    return _kernels.rank_over_q(mat)


def _member_of(vec, gens, exact_only=False) -> bool:
    """Cone membership with a float screen; every decision is certified by
    exact arithmetic (either a rational certificate or the exact LP)."""
    if not gens:
        return all(x == 0 for x in vec)
    if not exact_only:
        try:
            from scipy.optimize import linprog

            a_eq = np.array(gens, dtype=float).T
            res = linprog(
                c=np.zeros(len(gens)),
                A_eq=a_eq,
                b_eq=np.array(vec, dtype=float),
                bounds=(0, None),
                method="highs",
            )
            if res.status == 0 and res.x is not None:
                support = [k for k, x in enumerate(res.x) if x > 1e-9]
                if nonneg_solution_on_support(vec, gens, support) is not None:
                    return True
        except Exception:
            pass
    return is_in_cone(vec, gens)


def extremal_rays(diagrams: Sequence[BettiDiagram]) -> RaySet:
    """Primitive generators not expressible from the others.

    Redundant generators are removed iteratively (largest first); the
    surviving set is exactly the extremal-ray set of the pointed cone, and
    does not depend on the removal order.
    """
    if not diagrams:
        raise DomainError("extremal_rays needs at least one diagram")
    vecs, rows, cols = diagram_vectors(diagrams)
    prim = sorted({_primitive(v) for v in vecs if any(v)})
    rank = cone_rank(prim)
    work = sorted(prim, key=lambda v: (-sum(v), v))
    keep = list(work)
    for v in work:
        others = [g for g in keep if g != v]
        if not others:
            continue
        if _member_of(v, others):
            keep = others
    rays = tuple(sorted(keep))
    return RaySet(row_range=rows, col_range=cols, rays=rays, rank=rank)
