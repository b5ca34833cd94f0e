"""Vertex-augmentation operations that steer degree types, and barycentric
subdivision.

``phi(K, i)`` adjoins a new vertex u_f for every face f of size at least
dim K + 2 - i and fills in all chain extensions; on a pure-resolution
complex of degree type (d_p, ..., d_i, 1, ..., 1) it bumps d_i by one.
Iterating from the boundary of a simplex realizes any prescribed degree
type (``build_pr_complex``).

Every application first re-indexes the current universe to fresh integer
labels ("1".."N") and names new vertices after the re-indexed face they
subdivide ("u{1,3}"), keeping labels flat after repeated applications.
"""

from __future__ import annotations

from .complexes import (
    Mask,
    SimplicialComplex,
    bits,
    boundary_simplex,
    face_key,
)
from .betti import boxplus, h_set, is_cohen_macaulay, is_pr
from .errors import ComplexError, VertexCapExceeded
from .homology import QQ, FieldSpec

DEFAULT_VERTEX_CAP = 64


def reindex_integers(cpx: SimplicialComplex) -> tuple[SimplicialComplex, dict[str, str]]:
    """Same facets, labels replaced by "1".."N"; returns the label map."""
    new_labels = [str(k + 1) for k in range(cpx.n)]
    return SimplicialComplex(new_labels, cpx.facets), dict(zip(cpx.labels, new_labels))


def _u_label(base: SimplicialComplex, face: Mask) -> str:
    return "u{" + ",".join(base.labels_of(face)) + "}"


def s_set(cpx: SimplicialComplex, i: int) -> list[Mask]:
    """Faces of size >= dim + 2 - i, in (size, lex) order; contains the empty
    face exactly when i >= dim + 2."""
    if cpx.is_void:
        raise ComplexError("s_set of the void complex")
    if i < 1:
        raise ComplexError("s_set needs i >= 1")
    d = cpx.dim()
    threshold = max(d + 2 - i, 0)
    out: list[Mask] = []
    top = d + 1
    for k in range(threshold, top + 1):
        out.extend(cpx.faces_of_size(k))
    return out


def phi_detailed(
    cpx: SimplicialComplex, i: int
) -> tuple[SimplicialComplex, dict[str, str], list[Mask]]:
    """The augmented complex plus the re-index label map and the list of
    subdivided faces (list index k names the new vertex at position N + k)."""
    if cpx.is_void:
        raise ComplexError("phi of the void complex")
    if i < 1:
        raise ComplexError("phi needs i >= 1")
    base, relabel = reindex_integers(cpx)
    d = base.dim()
    threshold = max(d + 2 - i, 0)
    eligible = s_set(base, i)
    u_index = {f: base.n + k for k, f in enumerate(eligible)}
    labels = list(base.labels) + [_u_label(base, f) for f in eligible]

    facets: list[Mask] = []

    def descend(bottom: Mask, u_mask: Mask):
        facets.append(bottom | u_mask)
        if bottom.bit_count() > threshold:
            for v in bits(bottom):
                child = bottom & ~(1 << v)
                descend(child, u_mask | (1 << u_index[child]))

    for f in base.facets:
        if f.bit_count() < threshold:
            facets.append(f)
        else:
            descend(f, 1 << u_index[f])

    return SimplicialComplex(labels, facets), relabel, eligible


def phi(cpx: SimplicialComplex, i: int) -> SimplicialComplex:
    return phi_detailed(cpx, i)[0]


def barycentric_detailed(
    cpx: SimplicialComplex,
) -> tuple[SimplicialComplex, dict[str, str], list[Mask]]:
    """Order complex of the nonempty-face poset: one vertex u_f per nonempty
    face, faces are chains.  Facets are the saturated chains from a single
    vertex up to a facet."""
    if cpx.is_void:
        raise ComplexError("barycentric subdivision of the void complex")
    if cpx.is_irrelevant:
        raise ComplexError("barycentric subdivision undefined: no nonempty faces")
    base, relabel = reindex_integers(cpx)
    faces = [f for f in base.faces() if f]
    faces.sort(key=face_key)
    u_index = {f: k for k, f in enumerate(faces)}
    labels = [_u_label(base, f) for f in faces]

    facets: list[Mask] = []

    def descend(bottom: Mask, u_mask: Mask):
        if bottom.bit_count() == 1:
            facets.append(u_mask)
            return
        for v in bits(bottom):
            child = bottom & ~(1 << v)
            descend(child, u_mask | (1 << u_index[child]))

    for f in base.facets:
        descend(f, 1 << u_index[f])

    return SimplicialComplex(labels, facets), relabel, faces


def barycentric(cpx: SimplicialComplex) -> SimplicialComplex:
    return barycentric_detailed(cpx)[0]


def build_pr_complex(
    degree_type: tuple[int, ...], vertex_cap: int = DEFAULT_VERTEX_CAP
) -> SimplicialComplex:
    """Starting from the boundary of the p-simplex, apply phi_p then
    phi_{p-1} ... then phi_1, each (d_i - 1) times.  The result has a pure
    dual resolution of exactly the requested degree type.

    Raises :class:`VertexCapExceeded` when an application would push the
    universe past ``vertex_cap`` (verification cost is exponential in
    vertex count, so growth must be explicit, never silent).
    """
    d = tuple(int(x) for x in degree_type)
    if not d:
        raise ComplexError("degree type must be nonempty")
    if any(x < 1 for x in d):
        raise ComplexError("degree type entries must be positive")
    p = len(d)
    cpx = boundary_simplex(p + 1)
    for t, d_i in enumerate(d):
        i = p - t
        for application in range(d_i - 1):
            needed = cpx.n + len(s_set(cpx, i))
            if needed > vertex_cap:
                raise VertexCapExceeded(
                    f"phi_{i} application {application + 1} would need {needed} vertices "
                    f"(cap {vertex_cap})",
                    step=f"phi_{i}#{application + 1}",
                    current=cpx.n,
                    needed=needed,
                    cap=vertex_cap,
                )
            cpx = phi(cpx, i)
    return cpx


def link_commute_check(cpx: SimplicialComplex, i: int, sigma: Mask) -> bool:
    """Verify that taking links commutes with the augmentation via the
    explicit vertex map u_f -> u_{f - sigma}."""
    if not cpx.is_pure():
        raise ComplexError("link_commute_check needs a pure complex")
    if not cpx.has_face(sigma):
        raise ComplexError("sigma must be a face")
    whole, _, u_whole = phi_detailed(cpx, i)
    left = whole.link(sigma)
    link = cpx.link(sigma)
    right, _, u_right = phi_detailed(link, i)
    u_right_index = {f: link.n + k for k, f in enumerate(u_right)}

    n_v = cpx.n
    v_mask = (1 << n_v) - 1
    mapped = set()
    for f in left.facets:
        m = f & v_mask
        rest = f >> n_v
        for k in bits(rest):
            tau = u_whole[k] & ~sigma
            if tau not in u_right_index:
                return False
            m |= 1 << u_right_index[tau]
        mapped.add(m)
    return mapped == set(right.facets)


def bary_link_hset(
    cpx: SimplicialComplex, chain: list[Mask], field: FieldSpec = QQ
) -> frozenset[int]:
    """Homology index set of a chain face of the subdivision, predicted as
    h(K, top) shifted by |top| - length and asserted against the direct
    computation."""
    if not chain:
        raise ComplexError("chain must be nonempty")
    for a, b in zip(chain, chain[1:]):
        if not (a & b == a and a != b):
            raise ComplexError("chain must be strictly increasing")
    top = chain[-1]
    if not cpx.has_face(top) or top == 0:
        raise ComplexError("chain must consist of nonempty faces")
    bary, _, faces = barycentric_detailed(cpx)
    u_index = {f: k for k, f in enumerate(faces)}
    sigma = 0
    for f in chain:
        sigma |= 1 << u_index[f]
    predicted = boxplus(h_set(cpx, top, field), {top.bit_count() - len(chain)})
    actual = h_set(bary, sigma, field)
    if predicted != actual:
        raise ComplexError(
            f"subdivision link h-set {set(actual)} differs from predicted {set(predicted)}"
        )
    return actual


def bdelta_pr_check(cpx: SimplicialComplex, field: FieldSpec = QQ) -> tuple[bool, bool, bool]:
    """(PR of the subdivision, CM of the subdivision, CM of the complex);
    the three are provably equivalent, so disagreement raises."""
    if cpx.is_void:
        raise ComplexError("bdelta_pr_check on the void complex")
    bary = barycentric(cpx)
    triple = (
        is_pr(bary, field).is_pr,
        is_cohen_macaulay(bary, field),
        is_cohen_macaulay(cpx, field),
    )
    if len(set(triple)) != 1:
        raise ComplexError(f"subdivision PR/CM equivalence violated: {triple}")
    return triple
