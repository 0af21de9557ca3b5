"""deltah: the compactly supported inverse Mellin transform of a balanced
gamma ratio (a delta-neutral Fox H function; Meijer G at unit weights),
computed by two independent routes, plus a verification suite for the
identities the family satisfies.
"""

from .backend import HAVE_COMPILED, active_backend, set_backend
from .coefficients import (CoefficientTable, NoerlundGTable, coefficient_table,
                           compute_a, compute_c, compute_g, compute_l,
                           compute_l_determinant, compute_l_explicit,
                           compute_q, compute_q_tilde, noerlund_g)
from .errors import (ConvergenceError, DeltaNeutralityError, DomainError,
                     ParameterError, PoleError)
from .evaluator import (BranchProbeReport, ContourSpec, EvaluationResult,
                        SeriesSpec, branch_probe, eval_auto, eval_contour,
                        eval_grid, eval_series_log, eval_series_t1)
from .gammaratio import (AsymptoticExpansion, W, W_asymptotic,
                         asymptotic_expansion, digamma, log_W, log_gamma)
from .hypergeometric import (HypSeriesSpec, g11_closed, g22_closed, pfq)
from .params import DerivedConstants, ParameterSet, derive, validate
from .polynomials import (BernoulliCache, bernoulli_number, bernoulli_poly,
                          noerlund_poly, pochhammer, stirling_noncentral)
from .verify import (MeasureRepresentation, VerificationReport,
                     integral_kernel, integrate_h, mellin_transform_h,
                     representing_measure, run_all, verify_bernstein,
                     verify_digamma_relation, verify_integral_equation,
                     verify_mellin_polynomial_g, verify_mellin_subtracted,
                     verify_psi_weighted_expansion, verify_weak_limit_moments)

__version__ = "0.1.0"
