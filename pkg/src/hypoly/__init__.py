"""Polynomials of hypergeometric type and the algebras of their ladder operators.

The six canonical classes of ``sigma y'' + tau y' + lambda y = 0`` are described
by :class:`EquationClass`.  Polynomial solutions, associated functions
``kappa**m d^m Psi_l/ds^m``, the first-order ladder operators and the Lie
algebras they generate are all represented exactly as polynomial data; norms
and inner products use double-exponential quadrature.
"""
__version__ = "0.1.0"

from .eqclass import Cutoff, EquationClass, SigmaKind, parse_class_spec, validate
from .errors import (
    CutoffExceeded,
    DegenerateRecurrence,
    DomainError,
    HypolyError,
    NotDivisible,
    OracleUnavailable,
    ParameterOutOfRange,
    PoleError,
    QuadratureDivergence,
    RepMismatch,
    ToleranceExceeded,
    TruncationInsufficient,
    UnsupportedClass,
)
from .polynomial import Polynomial
from .polyalg import build_psi, classical_oracle, rodrigues_oracle, three_term
from .quad import QuadratureSpec, Transform, integrate
from .report import CheckResult
from .specfun import LadderRep, NormTable, build_psi_lm, eval_rep, norm, normalized
from .operators import (
    MatrixKind,
    OperatorMatrix,
    apply_A,
    apply_A_plus,
    apply_H,
    commutator_check,
    intertwining_check,
    ladder_chain,
    shift_matrices,
)
from .algebra import (
    AlgebraKind,
    SurfaceRep,
    apply_L0,
    apply_L_minus,
    apply_L_plus,
    casimir_check,
    commutator_case_check,
    k_normal_form,
)
from .coherent import (
    CoherentState,
    RadialMeasure,
    bessel_I,
    bessel_K,
    eigen_residual,
    hyp0f1,
    identity_resolution_check,
    make_coherent,
    norm_check,
)
from .suites import SUITES, run_suite

__all__ = [name for name in dir() if not name.startswith("_")]
