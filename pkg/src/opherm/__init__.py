"""Exact normal ordering of two-mode boson operators and verification of
operator Hermite polynomial identities.

Scalars live in Q(i, sqrt2) (:mod:`opherm.scalars`); operator expressions
are normal-ordered term maps (:mod:`opherm.boson`); :mod:`opherm.identities`
checks identities exactly or numerically and :mod:`opherm.integrals`
evaluates Gaussian integrals of Hermite polynomials.
"""

from .boson import (
    FockKet,
    LinearForm,
    NormalMonomial,
    OperatorExpr,
    apply_to_vacuum,
    commuting_multiply,
    hermite_of_operator,
    make_linear_form,
    normal_order_multiply,
    normal_symbol_hermite,
    normal_symbol_power,
    operator_power,
    two_var_hermite_of_operators,
)
from .errors import (
    DegenerateParameters,
    DegreeTooLarge,
    ExprSyntaxError,
    NonCommutingArguments,
    NonLinearHermiteArgument,
    NotRepresentable,
    OpHermError,
    QuadratureDegree,
    UnknownIdentity,
    UnknownSymbol,
)
from .frontend import elaborate, parse_expression, parse_scalar, render_expression
from .identities import IDENTITIES, IdentityReport, SuiteReport, run_suite, verify_identity
from .integrals import ClosedForm, closed_form_rhs, gaussian_moment, integral_lhs, quadrature_check
from .kernels import BACKEND
from .polynomials import (
    hermite_coefficients,
    hermite_eval,
    two_var_hermite_coefficients,
    two_var_hermite_eval,
    wavefunction_eval,
)
from .scalars import ExactScalar, as_scalar, sqrt_in_ring

__version__ = "0.1.0"
