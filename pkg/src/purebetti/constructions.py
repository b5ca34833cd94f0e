"""Two generator families with pure resolutions, plus their predicted data.

Intersection complexes: n symmetric facets whose i-fold meets are controlled
by a vector of multiplicities m = (m_1, ..., m_n).  Partition complexes:
orbits of lambda-generating sets on a grid of boundary vertices x_i and
partition vertices y_i^j under the symmetric group permuting the columns.

Vertex labels are deterministic ("v{1,3}^1", "x0", "y0^2") so constructed
complexes are byte-for-byte reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .complexes import SimplicialComplex, from_facets
from .errors import ComplexError
from .homology import QQ, FieldSpec, HomologyVector, homology_fast


# -- intersection complexes ---------------------------------------------------


@dataclass(frozen=True)
class IntersectionSpec:
    """Multiplicity vector m = (m_1, ..., m_n), all entries >= 0."""

    m: tuple[int, ...]

    def __post_init__(self):
        if len(self.m) < 1 or any(x < 0 for x in self.m):
            raise ComplexError("intersection spec needs a nonempty vector of nonnegatives")
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))

    @property
    def n(self) -> int:
        return len(self.m)

    def top_index(self) -> int:
        """Largest i with m_i nonzero (the theorem-side p); error if m = 0."""
        nz = [i for i, x in enumerate(self.m, start=1) if x]
        if not nz:
            raise ComplexError("zero multiplicity vector has no top index")
        return nz[-1]

    def theorem_ready(self) -> None:
        """The degree-type theorems need m nonzero with m_n = 0."""
        if all(x == 0 for x in self.m):
            raise ComplexError("intersection theorems need a nonzero vector")
        if self.m[-1] != 0:
            raise ComplexError("intersection theorems need m_n = 0 (drop the multi-cone part)")


def _subset_label(s: tuple[int, ...], r: int) -> str:
    return "v{" + ",".join(str(x) for x in s) + "}^" + str(r)


def intersection_complex(spec: IntersectionSpec) -> SimplicialComplex:
    """Vertices v_S^r for nonempty S in [n] with 1 <= r <= m_{|S|}; facet j
    collects the vertices whose subset contains j."""
    n = spec.n
    labels: list[str] = []
    members: list[tuple[tuple[int, ...], int]] = []
    for size in range(1, n + 1):
        mult = spec.m[size - 1]
        if mult == 0:
            continue
        for s in itertools.combinations(range(1, n + 1), size):
            for r in range(1, mult + 1):
                labels.append(_subset_label(s, r))
                members.append((s, r))
    facets = []
    for j in range(1, n + 1):
        facets.append({_subset_label(s, r) for (s, r) in members if j in s})
    return from_facets(labels, facets)


def intersection_meet_size(spec: IntersectionSpec, i: int) -> int:
    """Predicted size of the meet of any i facets: sum over j of C(n-i, j)
    many subsets of size i+j through a fixed i-set, each with multiplicity."""
    n = spec.n
    if not 1 <= i <= n:
        raise ComplexError("meet size needs 1 <= i <= n")
    return sum(comb(n - i, j) * spec.m[i + j - 1] for j in range(0, n - i + 1))


def intersection_predicted_degree_type(spec: IntersectionSpec) -> tuple[int, ...]:
    """(d_p, ..., d_1) with d_i a binomial combination of the multiplicities."""
    spec.theorem_ready()
    n = spec.n
    p = spec.top_index()
    d = {
        i: sum(comb(n - i - 1, j) * spec.m[i + j - 1] for j in range(0, n - i))
        for i in range(1, p + 1)
    }
    return tuple(d[i] for i in range(p, 0, -1))


def intersection_predicted_betti(spec: IntersectionSpec) -> tuple[int, ...]:
    """(beta_0, ..., beta_p): C(n, i+1) below the top step, C(n-1, p) at it."""
    spec.theorem_ready()
    n = spec.n
    p = spec.top_index()
    return tuple(comb(n, i + 1) for i in range(p)) + (comb(n - 1, p),)


def enp_spec(n: int, p: int) -> IntersectionSpec:
    """The unit vector e^n_p (all zeros when p = 0)."""
    if not 0 <= p <= n - 1:
        raise ComplexError("e^n_p needs 0 <= p <= n-1")
    m = [0] * n
    if p > 0:
        m[p - 1] = 1
    return IntersectionSpec(tuple(m))


def enp_homology_check(n: int, p: int, field: FieldSpec = QQ) -> tuple[int, int]:
    """Homology of the unit-vector complex: concentrated in degree p-1 with
    dimension C(n-1, p).  Any other outcome raises."""
    cpx = intersection_complex(enp_spec(n, p))
    hom = homology_fast(cpx, field)
    expected = HomologyVector({p - 1: comb(n - 1, p)})
    if hom != expected:
        raise ComplexError(
            f"e^{n}_{p} homology {dict(hom)} differs from expected {dict(expected)}"
        )
    return (p - 1, comb(n - 1, p))


# -- difference sequences (which positive sequences are degree types) ---------


def difference_sequence(s: tuple[int, ...], r: int) -> tuple[int, ...]:
    """r-th difference sequence; sequences are written highest index first,
    so one step maps (s_k, ..., s_1) to (s_{k-1}-s_k, ..., s_1-s_2)."""
    if r < 0 or r >= len(s):
        raise ComplexError("difference order out of range")
    t = tuple(s)
    for _ in range(r):
        t = tuple(t[j + 1] - t[j] for j in range(len(t) - 1))
    return t


def intersection_degree_witness(s: tuple[int, ...]) -> tuple[int, ...] | None:
    """Nonnegative (a_1, ..., a_k) with a_k != 0 realizing s as the degree
    type of the complex built from (a_1, ..., a_k, 0); None when no such
    vector exists (some difference sequence fails to increase)."""
    if not s or any(x <= 0 for x in s):
        raise ComplexError("degree witness needs a nonempty positive sequence")
    k = len(s)
    seqs = [tuple(s)]
    for _ in range(k - 1):
        seqs.append(difference_sequence(seqs[-1], 1))
    a = [0] * (k + 1)
    for r in range(1, k + 1):
        a[r] = seqs[k - r][0]
        if a[r] < 0:
            return None
    witness = tuple(a[1:])
    # reconstruct s from the witness as a safety net
    for i in range(1, k + 1):
        val = sum(comb(k - i, j) * witness[i + j - 1] for j in range(0, k - i + 1))
        if val != s[k - i]:
            raise ComplexError("internal: witness fails to reconstruct the sequence")
    return witness


# -- partition complexes ------------------------------------------------------


@dataclass(frozen=True)
class PartitionSpec:
    """Parameters (a, p, m) with a >= 2, p >= -1, 0 <= m <= p+1; ``closed``
    adds the simplex on the boundary vertices."""

    a: int
    p: int
    m: int
    closed: bool = False

    def __post_init__(self):
        if self.a < 2 or self.p < -1 or not 0 <= self.m <= self.p + 1:
            raise ComplexError(f"bad partition spec a={self.a} p={self.p} m={self.m}")


def partition_universe(a: int, p: int) -> list[str]:
    """x_0..x_p then y_i^j ordered by (i, j)."""
    labels = [f"x{i}" for i in range(p + 1)]
    for i in range(p + 1):
        labels.extend(f"y{i}^{j}" for j in range(1, a))
    return labels


def partitions(a: int, i: int) -> list[tuple[int, ...]]:
    """Partitions of a+i-2 into exactly i positive parts, lex descending."""
    if a < 2 or i < 1:
        raise ComplexError("partitions need a >= 2, i >= 1")
    total = a + i - 2
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, parts_left: int, maximum: int, acc: list[int]):
        if parts_left == 0:
            if remaining == 0:
                out.append(tuple(acc))
            return
        lo = -(-remaining // parts_left)  # ceil: keep parts positive and ordered
        for part in range(min(maximum, remaining - parts_left + 1), lo - 1, -1):
            acc.append(part)
            rec(remaining - part, parts_left - 1, part, acc)
            acc.pop()

    rec(total, i, total, [])
    return out


def generating_set(p: int, i: int, lam: tuple[int, ...]) -> frozenset[str]:
    """Boundary tail {x_i..x_p} plus the partition staircase of lambda."""
    if i < 1 or i > p + 1:
        raise ComplexError("generating set needs 1 <= i <= p+1")
    if len(lam) != i or any(x <= 0 for x in lam) or list(lam) != sorted(lam, reverse=True):
        raise ComplexError("lambda must be a weakly decreasing positive i-tuple")
    out = {f"x{t}" for t in range(i, p + 1)}
    for r in range(i):
        out.update(f"y{r}^{j}" for j in range(1, lam[r] + 1))
    return frozenset(out)


def _apply_column_perm(label: str, perm: tuple[int, ...]) -> str:
    if label.startswith("x"):
        return f"x{perm[int(label[1:])]}"
    col, _, sup = label[1:].partition("^")
    return f"y{perm[int(col)]}^{sup}"


def partition_complex(spec: PartitionSpec) -> SimplicialComplex:
    """Orbit of all generating sets under column permutations; m = 0 gives
    the irrelevant complex (open) or the boundary-vertex simplex (closed)."""
    a, p, m = spec.a, spec.p, spec.m
    if p > 7:
        raise ComplexError("orbit enumeration over all column permutations is bounded at p <= 7")
    labels = partition_universe(a, p)
    gens: list[frozenset[str]] = []
    if m >= 1:
        base = [
            generating_set(p, i, lam)
            for i in range(1, m + 1)
            for lam in partitions(a, i)
        ]
        for perm in itertools.permutations(range(p + 1)):
            for g in base:
                gens.append(frozenset(_apply_column_perm(x, perm) for x in g))
    if spec.closed:
        gens.append(frozenset(f"x{i}" for i in range(p + 1)))
    if not gens:
        gens = [frozenset()]
    return from_facets(labels, gens)


def partition_facet_check(face_labels, spec: PartitionSpec) -> bool:
    """Facet characterization: partition complete, totally separated, size
    a+p-1, and 1..m support columns among the partition vertices.  Closed
    complexes additionally admit the boundary simplex itself."""
    a, p, m = spec.a, spec.p, spec.m
    face = {str(x) for x in face_labels}
    xs = {f"x{i}" for i in range(p + 1)}
    if spec.closed and face == xs:
        return True
    if m == 0:
        return face == (set() if not spec.closed else xs)

    y_levels: dict[int, set[int]] = {}
    for lab in face:
        if lab.startswith("y"):
            col, _, sup = lab[1:].partition("^")
            y_levels.setdefault(int(col), set()).add(int(sup))
    # partition complete
    for levels in y_levels.values():
        if levels != set(range(1, max(levels) + 1)):
            return False
    # totally separated
    for i in range(p + 1):
        if (f"x{i}" in face) == (1 in y_levels.get(i, set())):
            return False
    if len(face) != a + p - 1:
        return False
    return 1 <= len(y_levels) <= m


def partition_predicted_degree_type(spec: PartitionSpec) -> tuple[int, ...]:
    """(d_p, ..., d_1): all ones except d_m = a.  Only the open complexes
    with 1 <= m <= p carry this prediction."""
    a, p, m = spec.a, spec.p, spec.m
    if spec.closed or not (1 <= m <= p) or p < 1:
        raise ComplexError("degree-type prediction needs an open spec with 1 <= m <= p")
    return tuple(a if p - t == m else 1 for t in range(p))


def partition_homology_check(spec: PartitionSpec, field: FieldSpec = QQ) -> frozenset[int]:
    """Predicted homology index set of the (closed) partition complex,
    asserted against the computed homology (dimension 1 where nonzero)."""
    a, p, m = spec.a, spec.p, spec.m
    if not spec.closed:
        if m == 0:
            expected = HomologyVector({-1: 1})
        elif 1 <= m <= p:
            expected = HomologyVector({p - 1: 1})
        else:  # m == p+1, includes p == -1 with m == 0 handled above
            expected = HomologyVector()
    else:
        if m == 0:
            expected = HomologyVector({-1: 1} if p == -1 else {})
        elif m == p + 1:
            expected = HomologyVector({p: 1})
        else:
            expected = HomologyVector()
    got = homology_fast(partition_complex(spec), field)
    if got != expected:
        raise ComplexError(
            f"partition complex {spec} homology {dict(got)} != predicted {dict(expected)}"
        )
    return expected.support()


# -- CLI recipes ---------------------------------------------------------------


def parse_recipe(text: str) -> SimplicialComplex:
    """Build a complex from a recipe string.

    Forms: "intersection:1,1,0", "partition:a=3,p=2,m=1",
    "partition-closed:a=2,p=2,m=3", "boundary-simplex:p=3".
    """
    kind, _, args = text.partition(":")
    kind = kind.strip().lower()
    if kind == "intersection":
        try:
            m = tuple(int(x) for x in args.split(","))
        except ValueError:
            raise ComplexError(f"bad intersection recipe {text!r}") from None
        return intersection_complex(IntersectionSpec(m))
    if kind in ("partition", "partition-closed"):
        kv = {}
        for part in args.split(","):
            key, _, val = part.partition("=")
            kv[key.strip()] = int(val)
        missing = {"a", "p", "m"} - set(kv)
        if missing:
            raise ComplexError(f"partition recipe missing {sorted(missing)}")
        return partition_complex(
            PartitionSpec(kv["a"], kv["p"], kv["m"], closed=(kind == "partition-closed"))
        )
    if kind == "boundary-simplex":
        key, _, val = args.partition("=")
        if key.strip() != "p":
            raise ComplexError(f"bad boundary-simplex recipe {text!r}")
        p = int(val)
        if p < 0:
            raise ComplexError("boundary-simplex needs p >= 0")
        from .complexes import boundary_simplex

        return boundary_simplex(p + 1)
    raise ComplexError(f"unknown recipe kind {kind!r}")
