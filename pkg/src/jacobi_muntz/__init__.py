"""Jacobi-Müntz functions, Erdélyi-Kober fractional calculus and spectral solvers."""

__version__ = "0.1.0"

from .errors import (ConvergenceError, DomainError, IntegrationError, MuntzError,
                     NonFiniteError, ParameterError, PoleError, SingularMatrixError)
from .jmf import (JmfParams, SpectralCoeffs, jmf_batch, jmf_eigenvalue, jmf_eval, jmf_norm,
                  prefactor, require_valid, validate_params)
from .ek import (ek_caputo_numeric, ek_int_numeric, ek_jacobi_closed, ek_jmf_derivative,
                 ek_monomial_closed)
from .quadrature import gjm_base_rule, gjmqr_rule, integrate
from .projection import error_norms, project, project_eval
from .ivp import IvpProblem, Trajectory, dp54_integrate
from .solvers import (ExperimentConfig, MuntzBasis, build_collocation_system, grid_error_report,
                      solve_burgers, solve_fractional_diffusion, solve_muntz_monomial_ode,
                      solve_steady_ode)
