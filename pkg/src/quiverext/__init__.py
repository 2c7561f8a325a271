"""Extension spaces and degeneration certificates over bound quivers."""

from .algebra import AdmissibilityError, AlgebraBasis, algebra_basis
from .dsl import (
    ParseError,
    Workspace,
    cast_workspace,
    parse_workspace,
    print_workspace,
    serialize_report,
)
from .ext1 import (
    ArrowCochain,
    Ext1Class,
    ExtSpace1,
    RelationCochain,
    b_space,
    ext1,
    is_split,
    middle_term,
    pullback_class,
    pushout_class,
    z_space,
)
from .ext2 import (
    Ext2Class,
    Ext2Model,
    HypothesisError,
    ProjPresentation,
    compose_cocycles,
    exhibit_phi_kernel_boundary,
    ext2_small_model,
    ext2_via_omega,
    gldim_le2_check,
    is_projective,
    phi,
    proj_presentation,
    projective_cover,
    syzygy,
    yoneda_left,
    yoneda_left_omega,
    yoneda_right,
)
from .fields import QQ, PrimeField, RationalField, field_by_name
from .fixtures import FIXTURE_NAMES, fixture_source, load_fixture
from .geometry import (
    DualNumberProbe,
    RegularityReport,
    SesWitness,
    degeneration_witness_search,
    dual_number_oracle,
    ext_tangent_pairs,
    gl_action,
    hom_tangent_pairs,
    id_le1,
    left_comp_surjectivity,
    orbit_dim,
    pd_le1,
    psi_map,
    regularity_certificate,
    scaling_family,
    tangent_block_decomposition,
    tangent_module_variety,
)
from .iso import IsoCertificate, iso_test
from .linalg import Matrix, QuotientSpace, SubspaceBasis, kernel_basis
from .quiver import (
    Arrow,
    BoundQuiver,
    Path,
    Quiver,
    QuiverError,
    RelationElement,
    a_of_d,
    chi,
    euler_form,
    gl_dim,
    is_acyclic,
    mixed_a_form,
    validate_bound_quiver,
)
from .rep import (
    Representation,
    VertexCochain,
    direct_sum,
    hom_basis,
    hom_dim,
    kernel_representation,
    simple,
    zero_rep,
)
from .suites import SuiteResult, run_suites

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "AlgebraBasis",
    "Arrow",
    "ArrowCochain",
    "BoundQuiver",
    "DualNumberProbe",
    "Ext1Class",
    "Ext2Class",
    "Ext2Model",
    "ExtSpace1",
    "FIXTURE_NAMES",
    "HypothesisError",
    "IsoCertificate",
    "Matrix",
    "ParseError",
    "Path",
    "PrimeField",
    "ProjPresentation",
    "QQ",
    "Quiver",
    "QuiverError",
    "QuotientSpace",
    "RationalField",
    "RegularityReport",
    "RelationCochain",
    "RelationElement",
    "Representation",
    "SesWitness",
    "SubspaceBasis",
    "SuiteResult",
    "VertexCochain",
    "Workspace",
    "a_of_d",
    "algebra_basis",
    "b_space",
    "cast_workspace",
    "chi",
    "compose_cocycles",
    "degeneration_witness_search",
    "direct_sum",
    "dual_number_oracle",
    "euler_form",
    "exhibit_phi_kernel_boundary",
    "ext1",
    "ext2_small_model",
    "ext2_via_omega",
    "ext_tangent_pairs",
    "field_by_name",
    "fixture_source",
    "gl_action",
    "gl_dim",
    "gldim_le2_check",
    "hom_basis",
    "hom_dim",
    "hom_tangent_pairs",
    "id_le1",
    "is_acyclic",
    "is_projective",
    "is_split",
    "iso_test",
    "kernel_basis",
    "kernel_representation",
    "left_comp_surjectivity",
    "load_fixture",
    "middle_term",
    "mixed_a_form",
    "orbit_dim",
    "parse_workspace",
    "pd_le1",
    "phi",
    "print_workspace",
    "proj_presentation",
    "projective_cover",
    "psi_map",
    "pullback_class",
    "pushout_class",
    "regularity_certificate",
    "run_suites",
    "scaling_family",
    "serialize_report",
    "simple",
    "syzygy",
    "tangent_block_decomposition",
    "tangent_module_variety",
    "validate_bound_quiver",
    "yoneda_left",
    "yoneda_left_omega",
    "yoneda_right",
    "z_space",
    "zero_rep",
]
