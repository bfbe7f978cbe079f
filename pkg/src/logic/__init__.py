from src.logic.subspaces import (
    Projector,
    Subspace,
    basis_labels,
    commutes,
    contains,
    coordinate_subspace,
    full_space,
    includes,
    join,
    meet,
    orthocomplement,
    projector,
    ray,
    reduced_support,
    span,
    subspace_distinguisher,
    subspaces_equal,
    zero_subspace
)
