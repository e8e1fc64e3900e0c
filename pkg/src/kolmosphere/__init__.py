"""Exact tools for polynomial vector fields whose components factor through
their own coordinate and which keep the unit sphere invariant: invariance
tests, Darboux first integrals built from cofactor bookkeeping, Hamiltonian
structure tests, and floating-point cross-checks of the exact certificates.
"""

from .polyring import (
    NEG_INF,
    DimensionMismatchError,
    Monomial,
    ParseError,
    Poly,
    VariableIndexError,
    ZeroDenominatorError,
    degree_info,
    divide_exact,
    parse,
)
from .exactla import (
    NotSquareError,
    RationalMatrix,
    determinant,
    nullspace,
    rank,
)
from .field_forms import (
    CubicKolmogorovForm,
    HomogeneousReport,
    KolmogorovForm,
    NotSkewError,
    PolyVectorField,
    SphereKolmogorovReport,
    assemble_cubic,
    classify_homogeneous,
    construct_from_form,
    cubic_form_from_dict,
    cubic_form_to_dict,
    field_from_dict,
    field_from_json,
    field_to_dict,
    field_to_json,
    is_kolmogorov_on_sphere,
    lie_derivative,
    recover_cubic_form,
    sphere_polynomial,
)
from .invariance import (
    BadRadiusError,
    Cofactor,
    ConeReport,
    GreatSphereReport,
    HyperplaneClassification,
    HyperplaneSpec,
    Hypersurface,
    NotHomogeneousError,
    NotInvariantError,
    PreconditionError,
    SecondSphereReport,
    StructuredView,
    classify_hyperplane,
    cofactor,
    cone_invariance,
    great_sphere_conditions,
    second_sphere_check,
)
from .darboux import (
    CompleteIntegrabilityCertificate,
    DarbouxIntegral,
    DegreeMismatchError,
    HypothesisFailedError,
    IntegrabilityCertificate,
    NotASyzygyError,
    SamplePoint,
    UnstructuredCofactorError,
    ZeroSeedError,
    build_matrix_B,
    complete_integrability_check,
    construct_completely_integrable,
    construct_linear_fi_field,
    coordinate_cofactor,
    decompose_syzygy,
    find_darboux,
    hypothesis_matrix,
    standard_sample_points,
    syzygy_first_integral,
    verify_first_integral,
)
from .hamiltonian import (
    HamiltonianReport,
    OddDimensionError,
    hamiltonian_constraint_space,
    is_hamiltonian,
    parameter_count,
)
from .numeric_validate import (
    DEFAULT_DOMAIN_FLOOR,
    DomainViolationError,
    NonFiniteError,
    Trajectory,
    compile_poly,
    conservation_report,
    integrate_rk4,
    trajectory_to_csv,
)
from .suites import SUITES, SuiteReport, run_suite

__all__ = [name for name in dir() if not name.startswith("_")]
