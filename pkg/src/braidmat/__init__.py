"""Multiparameter braid matrices: construction, verification, entanglement.

The package builds the even-dimensional multiparameter braid matrices and
their unified odd/even form, in nonunitary (real-exponent) and unitary
(imaginary-exponent) modes, and machine-checks the algebra they satisfy:
the spectral-parameter braid equation, projector decompositions,
unitarity, factorization, the exponential-generator form, the reference
single-parameter family with its composition law, and the entangling
action on product states.
"""

from .braid import (
    BlockStructureReport,
    BraidFamily,
    Generator,
    ParameterSet,
    block_structure,
    canonical_keys,
    even_form_matrix,
    free_parameter_count,
    make_parameters,
    reference_matrix,
    reference_phase_matrix,
    reference_projectors,
    unitarity_defect,
)
from .config import ReferenceConfig, load_config, parse_config
from .entangle import (
    EntanglementRecord,
    PeriodResult,
    apply_to_product,
    degenerate_classes,
    detect_period,
    exceptional_scan,
    scan_products,
)
from .errors import (
    AccuracyError,
    BraidmatError,
    ConfigError,
    ConstructionError,
    DimensionError,
    DomainError,
    ModeError,
    SizeLimitError,
)
from .linalg import (
    dagger,
    kron,
    matmul,
    matrix_exponential,
    matrix_from_json,
    matrix_to_json,
    max_abs_diff,
    schmidt_coefficients,
)
from .projectors import (
    ProjectorFamily,
    ProjectorKey,
    braid_term,
    matrix_unit,
    mirror_index,
    pair_projector,
    phased_projector,
    projector_family,
)
from .verify import (
    CheckResult,
    VerificationReport,
    check_braid,
    check_composition_law,
    check_exponential,
    check_factorization,
    check_unitarity,
    normalized_residual,
    projector_checks,
    reference_checks,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "BlockStructureReport",
    "BraidFamily",
    "BraidmatError",
    "CheckResult",
    "ConfigError",
    "ConstructionError",
    "DimensionError",
    "DomainError",
    "EntanglementRecord",
    "Generator",
    "ModeError",
    "ParameterSet",
    "PeriodResult",
    "ProjectorFamily",
    "ProjectorKey",
    "ReferenceConfig",
    "SizeLimitError",
    "VerificationReport",
    "apply_to_product",
    "block_structure",
    "braid_term",
    "canonical_keys",
    "check_braid",
    "check_composition_law",
    "check_exponential",
    "check_factorization",
    "check_unitarity",
    "dagger",
    "degenerate_classes",
    "detect_period",
    "even_form_matrix",
    "exceptional_scan",
    "free_parameter_count",
    "kron",
    "load_config",
    "make_parameters",
    "matmul",
    "matrix_exponential",
    "matrix_from_json",
    "matrix_to_json",
    "matrix_unit",
    "max_abs_diff",
    "mirror_index",
    "normalized_residual",
    "pair_projector",
    "parse_config",
    "phased_projector",
    "projector_checks",
    "projector_family",
    "reference_checks",
    "reference_matrix",
    "reference_phase_matrix",
    "reference_projectors",
    "run_suite",
    "scan_products",
    "schmidt_coefficients",
    "unitarity_defect",
]
