"""exactdet: exact-arithmetic determinant identities with checkable proofs.

Builds structured matrix families (power/derivative, shifted, block-wise
binomial, Pascal), evaluates their determinants by closed-form product
formulas, replays the inductive evaluations as certificate-producing
reductions, and verifies everything against independent brute-force
determinant oracles over big rationals and multivariate polynomials.
"""

__version__ = "0.1.0"

from .exact_arith import (
    ExactDivisionError,
    Integer,
    Rational,
    binomial,
    exact_div,
    format_rational,
    parse_rational,
)
from .families import (
    SYMBOLIC,
    FamilyKind,
    FamilySpec,
    VerificationReport,
    binomial_block_matrix,
    build,
    closed_form_det,
    closed_form_exponents,
    family_values,
    pascal_matrix,
    power_derivative_matrix,
    shifted_power_matrix,
    verify_identity,
)
from .grids import GridSpec, RunReport, random_assignment, run_bench, run_verify
from .matrix_core import (
    AddScaledColumn,
    AddScaledRow,
    DeleteRowCol,
    FactorOutColumn,
    FactorOutRow,
    Matrix,
    MoveRow,
    ShapeError,
    SizeGuardError,
    SwapRows,
    apply,
    det_bareiss,
    det_cofactor,
)
from .multipoly import MultiPoly
from .reduction import (
    ENGINES,
    BinomialReduction,
    ExtractedFactor,
    FactorCertificate,
    ReductionTrace,
    check_certificate,
    reduce_binomial_induction_l,
    reduce_binomial_induction_m,
    reduce_family,
    reduce_pascal,
    reduce_power_derivative,
    reduce_shifted,
)
from .rings import QQ, ZZ, PolyRing

__all__ = [
    "__version__",
    "AddScaledColumn",
    "AddScaledRow",
    "BinomialReduction",
    "DeleteRowCol",
    "ENGINES",
    "ExactDivisionError",
    "ExtractedFactor",
    "FactorCertificate",
    "FactorOutColumn",
    "FactorOutRow",
    "FamilyKind",
    "FamilySpec",
    "GridSpec",
    "Integer",
    "Matrix",
    "MoveRow",
    "MultiPoly",
    "PolyRing",
    "QQ",
    "Rational",
    "ReductionTrace",
    "RunReport",
    "SYMBOLIC",
    "ShapeError",
    "SizeGuardError",
    "SwapRows",
    "VerificationReport",
    "ZZ",
    "apply",
    "binomial",
    "binomial_block_matrix",
    "build",
    "check_certificate",
    "closed_form_det",
    "closed_form_exponents",
    "det_bareiss",
    "det_cofactor",
    "exact_div",
    "family_values",
    "format_rational",
    "parse_rational",
    "pascal_matrix",
    "power_derivative_matrix",
    "random_assignment",
    "reduce_binomial_induction_l",
    "reduce_binomial_induction_m",
    "reduce_family",
    "reduce_pascal",
    "reduce_power_derivative",
    "reduce_shifted",
    "run_bench",
    "run_verify",
    "shifted_power_matrix",
    "verify_identity",
]
