"""Exact min-plus arithmetic and the polyhedral geometry of weighted DAGs.

Kleene stars and weighted digraph polyhedra, weighted transitive reductions
and facet descriptions, covector decompositions of point configurations,
central regular subdivisions of fundamental polytopes, combinatorial type
enumeration, and sampling/recovery for max-linear networks.
"""

from .arrangement import (
    Covector,
    CovectorPoset,
    PointConfig,
    affine_covector,
    coarse_type,
    covector_decomposition,
    polytrope_cell,
    tconv_cells,
    tropically_equivalent,
)
from .dag import (
    ModificationCone,
    WeightedDag,
    anti_automorphisms,
    automorphisms,
    canonical_form,
    from_matrix,
    in_open_region,
    modification_cone,
    shortest_path_trees,
    to_matrix,
    transitive_closure,
    transitive_reduction,
    weighted_transitive_reduction,
)
from .enumeration import (
    BudgetExceededError,
    count_generic_types,
    enumerate_central_subdivisions,
    enumerate_central_triangulations,
    enumerate_dags,
    enumerate_transitive_dags,
    table_report,
    triangulation_orbits,
)
from .mlbn import (
    NoiseSpec,
    SampleBatch,
    estimate_kleene,
    identifiability_report,
    sample,
)
from .polytrope import (
    FacetDescription,
    facet_description,
    polytrope_equal,
    q_membership,
    tconv_membership,
)
from .semiring import (
    INF,
    NegativeCycleError,
    TropMatrix,
    is_kleene,
    kleene_star,
)
from .subdivision import (
    PointList,
    Subdivision,
    fundamental_polytope,
    is_central,
    is_regular,
    is_triangulation,
    regular_subdivision,
    root_polytope,
    subdivision_equal,
    weight_heights,
)

__all__ = [
    "INF",
    "BudgetExceededError",
    "Covector",
    "CovectorPoset",
    "FacetDescription",
    "ModificationCone",
    "NegativeCycleError",
    "NoiseSpec",
    "PointConfig",
    "PointList",
    "SampleBatch",
    "Subdivision",
    "TropMatrix",
    "WeightedDag",
    "affine_covector",
    "anti_automorphisms",
    "automorphisms",
    "canonical_form",
    "coarse_type",
    "count_generic_types",
    "covector_decomposition",
    "enumerate_central_subdivisions",
    "enumerate_central_triangulations",
    "enumerate_dags",
    "enumerate_transitive_dags",
    "estimate_kleene",
    "facet_description",
    "from_matrix",
    "fundamental_polytope",
    "identifiability_report",
    "in_open_region",
    "is_central",
    "is_kleene",
    "is_regular",
    "is_triangulation",
    "kleene_star",
    "modification_cone",
    "polytrope_cell",
    "polytrope_equal",
    "q_membership",
    "regular_subdivision",
    "root_polytope",
    "sample",
    "shortest_path_trees",
    "subdivision_equal",
    "table_report",
    "tconv_cells",
    "tconv_membership",
    "to_matrix",
    "transitive_closure",
    "transitive_reduction",
    "triangulation_orbits",
    "tropically_equivalent",
    "weight_heights",
    "weighted_transitive_reduction",
]
