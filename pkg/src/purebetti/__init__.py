"""Betti diagrams of Stanley-Reisner ideals, pure-resolution complexes, and
small-vertex Betti cone censuses."""

from .betti import (
    BettiDiagram,
    PrSummary,
    betti_direct,
    betti_dual,
    boxplus,
    chain_descend,
    diagram_degree_type,
    diagram_from_rows,
    diagram_is_pure,
    diagram_shift_type,
    h_set,
    hh_set,
    is_cohen_macaulay,
    is_pr,
)
from .complexes import (
    SimplicialComplex,
    all_faces,
    are_isomorphic,
    boundary_simplex,
    collapse,
    faces_of_size,
    find_free_pair,
    from_facets,
    full_simplex,
    irrelevant_complex,
    skeleton_of_set,
    void_complex,
)
from .constructions import (
    IntersectionSpec,
    PartitionSpec,
    enp_homology_check,
    generating_set,
    intersection_complex,
    intersection_degree_witness,
    intersection_meet_size,
    intersection_predicted_betti,
    intersection_predicted_degree_type,
    parse_recipe,
    partition_complex,
    partition_facet_check,
    partition_homology_check,
    partition_predicted_degree_type,
    partitions,
)
from .errors import DomainError, VertexCapExceeded
from .homology import (
    FieldSpec,
    HomologyVector,
    boundary_matrix,
    homology_with_collapse,
    reduced_homology,
)
from .phi import (
    barycentric,
    bary_link_hset,
    bdelta_pr_check,
    build_pr_complex,
    link_commute_check,
    phi,
    s_set,
)
from .survey import (
    CensusFilter,
    CensusReport,
    RaySet,
    census,
    enumerate_complexes,
    extremal_rays,
    pure_diagram_list,
)
from .exactlp import is_in_cone

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
