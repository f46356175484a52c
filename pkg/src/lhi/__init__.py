"""
Laplace transforms of t^nu times a Bessel function (complete
Lipschitz-Hankel integrals), their Legendre-function closed forms, a
quadrature oracle and an audit of published table errata.
"""
from .errors import (AccuracyError, ConvergenceError, ConventionDegenerate,
                     DegenerateParameters, DomainError, ExistenceError, LHIError,
                     NonConvergence, ParameterError, PoleError, UnsupportedOrder)
from .special import BesselKind, bessel, gamma, gauss_2f1, hyp2f1_regularized
from .legendre import (QConvention, convert_q, ferrers_p, ferrers_q, legendre_p,
                       olver_q, q_in_convention)
from .transforms import (IdentityId, TransformQuery, laplace_transform, lt_closed,
                         lt_k_at_one, rhs_trig, trig_of_s)
from .quadrature import QuadratureResult, generic_lhs, ilhi, lt_oracle
from .errata import AuditRecord, ErratumCase, audit, builtin_cases

__version__ = "0.1.0"
