"""Exact reduced simplicial homology over the rationals or a prime field.

The reduced chain complex always includes the empty face in degree -1, so
the irrelevant complex ``{null}`` has one-dimensional homology there.  All
ranks are exact: fraction-free elimination over Q, modular elimination over
GF(p).  No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Optional

import numpy as np

from . import _kernels
from .complexes import Mask, SimplicialComplex, bits, collapse, face_key
from .errors import ComplexError, FieldError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    # deterministic Miller-Rabin for p < 3,215,031,751 with bases 2,3,5,7
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = (x * x) % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals or GF(p) for a prime p < 2**31."""

    kind: str  # "Q" or "GF"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise FieldError("rational field takes no characteristic")
        elif self.kind == "GF":
            if self.p is None or self.p >= 1 << 31 or not _is_prime(self.p):
                raise FieldError(f"GF needs a prime below 2**31, got {self.p}")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("Q")

    @staticmethod
    def gf(p: int) -> "FieldSpec":
        return FieldSpec("GF", p)

    @staticmethod
    def parse(text: str) -> "FieldSpec":
        t = text.strip().lower()
        if t == "q":
            return FieldSpec.rationals()
        if t.startswith("gf:"):
            try:
                return FieldSpec.gf(int(t[3:]))
            except ValueError:
                raise FieldError(f"bad prime in field spec {text!r}") from None
        raise FieldError(f"field must be 'q' or 'gf:P', got {text!r}")

    def __str__(self):
        return "q" if self.kind == "Q" else f"gf:{self.p}"


QQ = FieldSpec.rationals()


class HomologyVector(Mapping):
    """Sparse map degree -> dim of reduced homology; zero entries omitted."""

    __slots__ = ("_dims",)

    def __init__(self, dims: Mapping[int, int] | None = None):
        clean = {int(k): int(v) for k, v in (dims or {}).items() if v}
        object.__setattr__(self, "_dims", dict(sorted(clean.items())))

    def __getitem__(self, k: int) -> int:
        return self._dims.get(k, 0)

    def __iter__(self) -> Iterator[int]:
        return iter(self._dims)

    def __len__(self) -> int:
        return len(self._dims)

    def __eq__(self, other):
        if isinstance(other, HomologyVector):
            return self._dims == other._dims
        if isinstance(other, Mapping):
            return self._dims == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._dims.items()))

    def __repr__(self):
        return f"HomologyVector({self._dims})"

    def is_zero(self) -> bool:
        return not self._dims

    def support(self) -> frozenset[int]:
        return frozenset(self._dims)

    def to_json(self) -> dict:
        return {str(k): v for k, v in self._dims.items()}


def _faces_by_size(cpx: SimplicialComplex) -> list[list[Mask]]:
    """Faces grouped by cardinality, each list in the fixed face order."""
    if cpx.is_void:
        return []
    top = max(f.bit_count() for f in cpx.facets)
    out: list[set[Mask]] = [set() for _ in range(top + 1)]
    for f in cpx.facets:
        out[f.bit_count()].add(f)
    for k in range(top, 0, -1):
        for m in out[k]:
            for v in bits(m):
                out[k - 1].add(m & ~(1 << v))
    return [sorted(lvl, key=face_key) for lvl in out]


def boundary_matrix(cpx: SimplicialComplex, k: int, field: FieldSpec = QQ) -> np.ndarray:
    """Matrix of the boundary map from k-dimensional faces to (k-1)-dimensional
    faces: rows are faces of size k, columns faces of size k+1, signs by the
    alternating rule on sorted vertex order.  GF(p) entries are reduced mod p.
    """
    if cpx.is_void:
        raise ComplexError("boundary matrix of the void complex")
    if k < 0:
        raise ComplexError("boundary degree must be >= 0")
    levels = _faces_by_size(cpx)
    rows = levels[k] if k < len(levels) else []
    cols = levels[k + 1] if k + 1 < len(levels) else []
    mat = _boundary_from_levels(rows, cols)
    if field.kind == "GF":
        mat = np.mod(mat, field.p)
    return mat


def _boundary_from_levels(rows: list[Mask], cols: list[Mask]) -> np.ndarray:
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    row_index = {m: i for i, m in enumerate(rows)}
    for j, m in enumerate(cols):
        for pos, v in enumerate(bits(m)):
            sub = m & ~(1 << v)
            mat[row_index[sub], j] = 1 if pos % 2 == 0 else -1
    return mat


def _rank(mat: np.ndarray, field: FieldSpec) -> int:
    if mat.size == 0:
        return 0
    if field.kind == "GF":
        return _kernels.rank_mod_p(mat, field.p)
    return _kernels.rank_over_q(mat)


def _dims_from_levels(levels: list[list[Mask]], field: FieldSpec) -> dict[int, int]:
    if not levels:
        return {}
    top_dim = len(levels) - 2  # levels[k] holds faces of size k
    counts = [len(lvl) for lvl in levels]
    ranks = [0] * (len(levels) + 1)  # ranks[k+1] = rank of boundary from dim k
    for k in range(0, top_dim + 1):
        mat = _boundary_from_levels(levels[k], levels[k + 1])
        if field.kind == "GF":
            mat = np.mod(mat, field.p)
        ranks[k + 1] = _rank(mat, field)
    dims: dict[int, int] = {}
    for k in range(-1, top_dim + 1):
        n_k = counts[k + 1]
        h = n_k - ranks[k + 1] - ranks[k + 2]
        if h:
            dims[k] = h
    return dims


def reduced_homology(cpx: SimplicialComplex, field: FieldSpec = QQ) -> HomologyVector:
    """Exact dims of reduced homology; the void complex gives the zero vector."""
    if cpx.is_void:
        return HomologyVector()
    return HomologyVector(_dims_from_levels(_faces_by_size(cpx), field))


def homology_with_collapse(cpx: SimplicialComplex, field: FieldSpec = QQ) -> HomologyVector:
    """Same as :func:`reduced_homology` but collapses free faces first."""
    return reduced_homology(collapse(cpx), field)


def homology_fast(cpx: SimplicialComplex, field: FieldSpec = QQ) -> HomologyVector:
    """Internal fast path: cone shortcut, then collapse, then ranks."""
    if cpx.is_void:
        return HomologyVector()
    if cpx.is_cone() is not None:
        return HomologyVector()
    return reduced_homology(collapse(cpx), field)


def euler_characteristic_checks(cpx: SimplicialComplex, field: FieldSpec = QQ) -> tuple[int, int]:
    """Reduced Euler characteristic from face counts and from homology dims.

    The two values agree for every complex over every field; the empty face
    counts with sign (-1)^(-1) = -1.
    """
    fvec = cpx.f_vector()
    from_faces = sum(c if (k - 1) % 2 == 0 else -c for k, c in enumerate(fvec))
    hom = reduced_homology(cpx, field)
    from_hom = sum((-1) ** k * d for k, d in hom.items())
    return from_faces, from_hom
