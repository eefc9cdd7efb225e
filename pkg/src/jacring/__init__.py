"""Exact graded pieces of Jacobian rings, Hodge numbers and coupling lengths."""
from .coupling import (
    CouplingProfile,
    TowerSpec,
    build_tower,
    coupling_length,
    coupling_profile,
    cover_family_length,
    eigenspace_coupling_length,
    family_length,
    include_subspace,
    product_map_nonzero,
    tangent_subspace_full,
    tower_length_closed_form,
    tower_length_table,
)
from .errors import (
    DimensionMismatch,
    FormSyntaxError,
    HypothesisWarning,
    InhomogeneousForm,
    InvalidParameter,
    JacRingError,
    LimitExceeded,
    NotSmooth,
    RingMismatch,
    SmoothnessNotFound,
    UnknownVariable,
)
from .forms import Form, fermat_form, monomials, parse_form
from .hodge import (
    HodgeDiamond,
    HodgeVector,
    eigen_hodge,
    eigen_hodge_table,
    eigen_sum_check,
    first_hodge_rank_chain,
    hodge_diamond,
    cover_decomposition_check,
    primitive_hodge,
)
from .linalg import DEFAULT_PRIME, RATIONAL, ExactMatrix, FieldMode, rank, rref, span_reduce
from .ring import (
    DegreeSubspace,
    JacobianRing,
    KoszulCohomology,
    degree_basis,
    dim_R,
    hilbert_series,
    koszul_cohomology_dims,
    macaulay_pairing_rank,
    make_fermat,
    make_random_smooth,
    make_ring,
    multiply,
    normal_form,
    root_extension,
    smoothness_certificate,
    socle_degree,
)

__version__ = "0.1.0"
