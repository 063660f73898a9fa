"""Best coapproximations to square matrices out of subspaces of diagonal matrices."""

from .errors import (
    CoapproxError,
    DependentBasis,
    DimensionMismatch,
    InputError,
    NumericalError,
)
from .linalg import Interval, LPResult, LPStatus, rank, solve_lp, spectral_norm, symmetric_eigen_interval
from .numrange import real_numerical_range, star_associated_matrix
from .oracle import bj_orthogonal_diag, verify_bj_directions, verify_by_definition
from .solver import (
    CoapproxReport,
    ConstraintSystem,
    SolutionKind,
    SolutionSet,
    build_constraint_system,
    coapprox,
    linf_coapprox,
    reduce_via_orthogonal,
    solve_constraints,
)
from .subspace import (
    Basis,
    Classification,
    ComponentTable,
    DiagonalMatrix,
    EquivClass,
    StarReport,
    build_component_table,
    classify_subspace,
    star_fast_path,
    star_property_witness,
    star_report,
)

__version__ = "0.1.0"
