"""Pseudospectra, condition pseudospectra and certified perturbation bounds
for dense complex matrices, plus distance-to-instability and
distance-to-singularity characterizations."""

from .distances import (
    InstabilityReport,
    SearchConfig,
    SingularityReport,
    distance_to_instability,
    distance_to_singularity,
    is_stable,
)
from .errors import (
    CondspecError,
    DimensionMismatch,
    InvalidEpsilon,
    NoConvergence,
    NotStable,
    ParseError,
    SingularMatrix,
    SingularShift,
    UnknownFixture,
    ZeroRhs,
)
from .contours import ContourSet, extract_contours
from .fixtures import FIXTURE_NAMES, Fixture, load_fixture
from .linalg import (
    NormKind,
    SpectrumResult,
    SvdResult,
    determinant,
    eigenvalues,
    inverse,
    lu_solve,
    operator_norm,
    singular_values,
    svd,
    vector_norm,
)
from .perturbation import (
    JointPerturbReport,
    OperatorPerturbReport,
    RhsPerturbReport,
    perturb_joint,
    perturb_operator,
    perturb_rhs,
    solve_shifted,
)
from .spectra import (
    GridSpec,
    InclusionCertificate,
    Lemma,
    Quantity,
    ResolventSample,
    ScalarField,
    check_inclusion,
    condspec_radius_bound,
    grid_eval,
    in_condition_pseudospectrum,
    in_pseudospectrum,
    kappa,
    kappa1,
    kappa_fields,
    sample,
    spectral_deviation,
)

__version__ = "0.1.0"

__all__ = [
    "CondspecError", "DimensionMismatch", "SingularMatrix", "SingularShift",
    "NoConvergence", "ZeroRhs", "NotStable", "InvalidEpsilon",
    "UnknownFixture", "ParseError",
    "NormKind", "SpectrumResult", "SvdResult",
    "lu_solve", "inverse", "determinant", "eigenvalues", "singular_values",
    "svd", "operator_norm", "vector_norm",
    "ResolventSample", "Quantity", "Lemma", "GridSpec", "ScalarField",
    "InclusionCertificate", "sample", "kappa", "kappa1",
    "in_pseudospectrum", "in_condition_pseudospectrum", "spectral_deviation",
    "grid_eval", "kappa_fields", "check_inclusion", "condspec_radius_bound",
    "RhsPerturbReport", "OperatorPerturbReport", "JointPerturbReport",
    "solve_shifted", "perturb_rhs", "perturb_operator", "perturb_joint",
    "SearchConfig", "InstabilityReport", "SingularityReport",
    "is_stable", "distance_to_instability", "distance_to_singularity",
    "ContourSet", "extract_contours",
    "Fixture", "FIXTURE_NAMES", "load_fixture",
    "__version__",
]
