"""Curvature tensors and curvature-operator spectra of a warped-product
metric family on R^(2n-2) x S^1 x (0, inf), with an independent Koszul
recomputation, spectral verification suites, staged-profile certificates,
an HTTP service and a CLI."""

from .frame import (
    COSH_SINH2,
    FrameRole,
    ModelPoint,
    R_MIN,
    StructureConstants,
    WarpJet,
    WarpProfile,
    WedgeBasis,
    build_wedge_basis,
    eval_warp,
    frame_role,
    holomorphic_partner,
    radial_index,
    theta_index,
)
from .jets import Jet2
from .koszul import (
    BracketTable,
    ConnectionCoefficients,
    TensorComparison,
    bracket_table,
    compare_tensors,
    connection,
    oracle_tensor,
)
from .operators import (
    DefinitenessReport,
    EigenDecomposition,
    Spectrum,
    SymmetricMatrix,
    assemble_operator,
    block_matrices,
    cluster_spectrum,
    definiteness,
    det_holomorphic_closed_form,
    det_sym,
    eigen_sym,
    holomorphic_block,
    leading_principal_minors,
    mixed_block,
)
from .pipeline import (
    Blend,
    Certificate,
    PerturbationReport,
    PinchScan,
    ReportRow,
    StageProfile,
    SweepGrid,
    certify_nonpositive,
    curvature_extremes,
    perturbation_demo,
    pinching_radius,
    pinching_scan,
    sample_planes,
    stage_profile,
    sweep,
)
from .tensor import (
    CurvatureTensor,
    DegeneratePlaneError,
    asymptotic_component_table,
    canonical_component,
    component_table,
    curvature_table,
    first_bianchi_residual,
    plane_curvatures,
    sectional_curvature,
)

__version__ = "0.1.0"

__all__ = [
    "Blend",
    "BracketTable",
    "Certificate",
    "ConnectionCoefficients",
    "COSH_SINH2",
    "CurvatureTensor",
    "DefinitenessReport",
    "DegeneratePlaneError",
    "EigenDecomposition",
    "FrameRole",
    "Jet2",
    "ModelPoint",
    "PerturbationReport",
    "PinchScan",
    "R_MIN",
    "ReportRow",
    "Spectrum",
    "StageProfile",
    "StructureConstants",
    "SweepGrid",
    "SymmetricMatrix",
    "TensorComparison",
    "WarpJet",
    "WarpProfile",
    "WedgeBasis",
    "assemble_operator",
    "asymptotic_component_table",
    "block_matrices",
    "bracket_table",
    "build_wedge_basis",
    "canonical_component",
    "certify_nonpositive",
    "cluster_spectrum",
    "compare_tensors",
    "component_table",
    "connection",
    "curvature_extremes",
    "curvature_table",
    "definiteness",
    "det_holomorphic_closed_form",
    "det_sym",
    "eigen_sym",
    "eval_warp",
    "first_bianchi_residual",
    "frame_role",
    "holomorphic_block",
    "holomorphic_partner",
    "leading_principal_minors",
    "mixed_block",
    "oracle_tensor",
    "perturbation_demo",
    "pinching_radius",
    "pinching_scan",
    "plane_curvatures",
    "radial_index",
    "sample_planes",
    "sectional_curvature",
    "stage_profile",
    "sweep",
    "theta_index",
]
