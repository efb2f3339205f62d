"""Spectral collocation solvers built on JMF bases.

Three problems are covered: a steady EK-fractional ODE (with a raw Müntz
monomial variant for comparison), a time-dependent EK-fractional diffusion
equation, and viscous Burgers' equation.  All collocate at the base-rule
nodes x_j^{(alpha, beta, sigma)}.  The time-dependent problems become
ODE systems for the coefficient vector, integrated by :mod:`ivp`.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .ek import ek_jmf_derivative, ek_monomial_closed
from .errors import ParameterError
from .ivp import IvpProblem, dp54_integrate
from .jmf import JmfParams, SpectralCoeffs, jmf_batch, jmf_deriv_matrix, require_valid
from .linalg import condition_number, lu_factor
from .projection import probe_grid, project_eval
from .quadrature import gjm_base_rule

MIN_GRID = 64
BURGERS_MAX_STEPS = 5_000_000


@dataclass(frozen=True)
class CollocationSystem:
    nodes: np.ndarray = field(repr=False)
    M: np.ndarray = field(repr=False)
    Dmu: np.ndarray = field(repr=False)
    params: JmfParams

    @property
    def size(self):
        return len(self.nodes)


@dataclass(frozen=True)
class MuntzBasis:
    """Raw Müntz monomials x^{lambda_k}, lambda_k = sigma(beta - eta - mu + k)."""

    exponents: np.ndarray
    b: float = 1.0

    def __post_init__(self):
        e = np.asarray(self.exponents, dtype=float)
        if e.ndim != 1 or np.any(np.diff(e) <= 0):
            raise ValueError("Müntz exponents must be strictly increasing")
        object.__setattr__(self, "exponents", e)

    @classmethod
    def from_params(cls, n, p):
        return cls(p.sigma * (p.beta - p.eta - p.mu + np.arange(n + 1)), p.b)

    def values(self, x):
        return np.asarray(x, dtype=float)[:, None] ** self.exponents[None, :]


@dataclass
class ExperimentConfig:
    """Problem data shared by the solvers.  Unused fields are ignored."""

    K1: float = 1.0
    K2: float = 1.0
    nu: float = 3.0
    epsilon: float = 0.1
    T: float = 1.0
    d: Optional[Callable] = None  # d(x, t)
    s: Optional[Callable] = None  # s(x, t), or f(x) for the steady problem
    f: Optional[Callable] = None  # initial data f(x)
    exact: Optional[Callable] = None

    def __post_init__(self):
        for name in ("K1", "K2", "nu", "epsilon", "T"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")
        if not self.T > 0:
            raise ParameterError(f"T must be positive, got {self.T}")


@dataclass
class SteadyResult:
    coeffs: SpectralCoeffs
    nodes: np.ndarray
    values: np.ndarray
    cond: float


@dataclass
class EvolutionResult:
    coeffs: SpectralCoeffs  # at the final time
    nodes: np.ndarray
    times: np.ndarray
    nodal: np.ndarray  # nodal values at every accepted time, shape (steps, n+1)
    max_error: Optional[float] = None  # max nodal error at T when an exact solution is known
    n_rhs: int = 0


def collocation_nodes(n, p):
    return gjm_base_rule(n, p.alpha, p.beta, p.sigma, p.b).nodes


def build_collocation_system(n, p):
    """Mass matrix m_jk = J_k(x_j) and EK-derivative matrix for kind-1 JMFs."""
    if p.kind != 1:
        raise ParameterError("the fractional collocation system uses kind-1 JMFs")
    require_valid(p)
    x = collocation_nodes(n, p)
    M = jmf_batch(n, p, x).T
    _, shifted = ek_jmf_derivative(1, 0, p)
    S = jmf_batch(n, shifted, x).T
    scales = np.array([ek_jmf_derivative(1, k, p)[0] for k in range(n + 1)])
    Dmu = S * scales[None, :]
    lu_factor(M)  # raises SingularMatrixError if M cannot be inverted
    return CollocationSystem(x, M, Dmu, p)


def manufactured_rhs(terms, cfg, p):
    """Right-hand side f = K2 D^mu y + K1 y for y = sum c_i x^{p_i}.

    ``terms`` is a sequence of (c_i, p_i).  D^mu is the left EK derivative
    with the family's (mu, sigma, eta), applied in closed form.
    """
    terms = [(float(c), float(q)) for c, q in terms]
    scales = [ek_monomial_closed(q, p.mu, p.sigma, p.eta, derivative=True) for _, q in terms]

    def f(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape)
        for (c, q), sc in zip(terms, scales):
            out = out + c * (cfg.K2 * sc + cfg.K1) * x ** q
        return out

    return f


def monomial_exact(terms):
    terms = [(float(c), float(q)) for c, q in terms]

    def y(x):
        x = np.asarray(x, dtype=float)
        return sum(c * x ** q for c, q in terms)

    return y


def example_terms(p, nu):
    """Exact solution x^{sigma nu} + 7 x^{2 sigma nu} as monomial terms."""
    return [(1.0, p.sigma * nu), (7.0, 2 * p.sigma * nu)]


def solve_steady_ode(cfg, n, p):
    """Solve K2 D^mu y + K1 y = f by collocation with kind-1 JMFs."""
    sysm = build_collocation_system(n, p)
    A = cfg.K2 * sysm.Dmu + cfg.K1 * sysm.M
    F = np.asarray(cfg.s(sysm.nodes), dtype=float)
    a = lu_factor(A).solve(F)
    return SteadyResult(SpectralCoeffs(p, a), sysm.nodes, sysm.M @ a, condition_number(A))


def solve_muntz_monomial_ode(cfg, n, basis, p):
    """Same problem with the raw Müntz monomials as trial functions."""
    x = collocation_nodes(n, p)
    lam = basis.exponents
    if len(lam) != n + 1:
        raise ValueError(f"basis has {len(lam)} functions, expected {n + 1}")
    M = basis.values(x)
    scales = np.array([ek_monomial_closed(e, p.mu, p.sigma, p.eta, derivative=True) for e in lam])
    A = cfg.K2 * M * scales[None, :] + cfg.K1 * M
    F = np.asarray(cfg.s(x), dtype=float)
    a = lu_factor(A).solve(F)
    return SteadyResult(SpectralCoeffs(p, a), x, M @ a, condition_number(A))


def _final_error(cfg, nodes, T, values):
    if cfg.exact is None:
        return None
    return float(np.max(np.abs(values - cfg.exact(nodes, T))))


def solve_fractional_diffusion(cfg, n, p, rtol=1e-10, atol=1e-12):
    """u_t = d(x,t) D^mu u + s(x,t), u(x,0) = f(x), with kind-1 JMFs in x."""
    sysm = build_collocation_system(n, p)
    x = sysm.nodes
    lu = lu_factor(sysm.M)
    Dmu = sysm.Dmu

    def rhs(t, a):
        return lu.solve(cfg.d(x, t) * (Dmu @ a) + cfg.s(x, t))

    f0 = np.zeros(x.shape) if cfg.f is None else np.asarray(cfg.f(x), dtype=float)
    a0 = lu.solve(f0)
    traj = dp54_integrate(IvpProblem(rhs, 0.0, cfg.T, a0), rtol=rtol, atol=atol)
    nodal = traj.states @ sysm.M.T
    return EvolutionResult(SpectralCoeffs(p, traj.final), x, traj.times, nodal,
                           _final_error(cfg, x, cfg.T, nodal[-1]), traj.n_rhs)


def diffusion_example(p, nu=7.0, T=5.0):
    """Config for u = x^{sigma nu} sin(t^2) with d = -1/(1+xt)."""
    q = p.sigma * nu
    sc = ek_monomial_closed(q, p.mu, p.sigma, p.eta, derivative=True)

    def d(x, t):
        return -1.0 / (1.0 + x * t)

    def s(x, t):
        return x ** q * (2 * t * math.cos(t * t) + sc * math.sin(t * t) / (1.0 + x * t))

    def exact(x, t):
        return np.asarray(x, dtype=float) ** q * math.sin(t * t)

    return ExperimentConfig(nu=nu, T=T, d=d, s=s, f=lambda x: exact(x, 0.0), exact=exact)


def solve_burgers(cfg, n, p, rtol=1e-10, atol=1e-12):
    """u_t = eps u_xx - u u_x + s(x,t) with kind-2 JMFs in x.

    The product u u_x is formed pointwise at the collocation nodes.
    """
    if p.kind != 2:
        raise ParameterError("Burgers' solver uses kind-2 JMFs")
    if not (p.eta > 0 and p.alpha > 0):
        raise ParameterError("Burgers' solver needs eta > 0 and alpha > 0 for zero boundary values")
    require_valid(p)
    x = collocation_nodes(n, p)
    M = jmf_batch(n, p, x).T
    D1 = jmf_deriv_matrix(n, p, x, 1)
    D2 = jmf_deriv_matrix(n, p, x, 2)
    lu = lu_factor(M)
    # the system is small and the rhs runs ~10^6 times: apply M^{-1} as a dense
    # matrix built once from the LU factors
    Minv = lu.solve(np.eye(n + 1))
    A2 = cfg.epsilon * (Minv @ D2)
    MD1 = np.vstack([M, D1])
    m = n + 1
    src = cfg.s if cfg.s is not None else (lambda x, t: 0.0)

    def rhs(t, a):
        v = MD1 @ a
        return A2 @ a + Minv @ (src(x, t) - v[:m] * v[m:])

    f0 = np.zeros(x.shape) if cfg.f is None else np.asarray(cfg.f(x), dtype=float)
    a0 = lu.solve(f0)
    # explicit steps are bounded by the diffusion stiffness, which grows fast with n
    traj = dp54_integrate(IvpProblem(rhs, 0.0, cfg.T, a0), rtol=rtol, atol=atol,
                          max_steps=BURGERS_MAX_STEPS)
    nodal = traj.states @ M.T
    return EvolutionResult(SpectralCoeffs(p, traj.final), x, traj.times, nodal,
                           _final_error(cfg, x, cfg.T, nodal[-1]), traj.n_rhs)


def burgers_profile(case):
    """Spatial factor g(x) = G(sqrt x) of the two manufactured solutions and its derivatives.

    G(s) = s sqrt(1-s) sin(s) (case 1) or s sqrt(1-s) cos(s) (case 2).
    Returns a function x -> (g, g', g'') valid on the open interval (0, 1).
    """
    if case not in (1, 2):
        raise ValueError(f"case must be 1 or 2, got {case}")

    def h_derivs(s):
        if case == 1:
            return np.sin(s), np.cos(s), -np.sin(s)
        return np.cos(s), -np.sin(s), -np.cos(s)

    def profile(x):
        s = np.sqrt(np.asarray(x, dtype=float))
        r = np.sqrt(1.0 - s)
        q = s * r
        q1 = r - s / (2 * r)
        q2 = -1.0 / r - s / (4 * r ** 3)
        h0, h1, h2 = h_derivs(s)
        G0 = q * h0
        G1 = q1 * h0 + q * h1
        G2 = q2 * h0 + 2 * q1 * h1 + q * h2
        g1 = G1 / (2 * s)
        g2 = G2 / (4 * s * s) - G1 / (4 * s ** 3)
        return G0, g1, g2

    return profile


def burgers_example(case, epsilon=0.1, T=10.0):
    """Config for u = g(x) cos(t^2) on [0, 1], source derived in closed form."""
    raw = burgers_profile(case)
    cache = {}

    def prof(x):
        # the solver passes the same node array on every call
        if cache.get("x") is not x:
            g, g1, g2 = raw(x)
            cache["x"], cache["val"] = x, (g, g1, g2, g * g1)
        return cache["val"]

    def s(x, t):
        g, _, g2, gg1 = prof(x)
        c = math.cos(t * t)
        return (-2 * t * math.sin(t * t)) * g + (-epsilon * c) * g2 + (c * c) * gg1

    def exact(x, t):
        return prof(x)[0] * math.cos(t * t)

    return ExperimentConfig(epsilon=epsilon, T=T, s=s, f=lambda x: exact(x, 0.0), exact=exact)


def grid_error_report(numeric, exact, grid_size=MIN_GRID, b=1.0):
    """(E2, Einf) on the interior uniform grid x_i = (i + 1/2) b / grid_size.

    ``numeric`` is a callable of x or a SpectralCoeffs expansion.
    """
    if grid_size < MIN_GRID:
        raise ValueError(f"grid_size must be at least {MIN_GRID}, got {grid_size}")
    xg = probe_grid(b, grid_size)
    vals = project_eval(numeric, xg) if isinstance(numeric, SpectralCoeffs) else numeric(xg)
    err = np.abs(np.asarray(vals, dtype=float) - np.asarray(exact(xg), dtype=float))
    h = b / grid_size
    return float(np.sqrt(h * np.sum(err ** 2))), float(np.max(err))


def burgers_sweep(case, ns: Sequence[int], p, epsilon=0.1, T=10.0, rtol=1e-10, atol=1e-12,
                  grid_size=256):
    """(n, E2, Einf) rows for a Burgers case over the degrees ``ns``."""
    cfg = burgers_example(case, epsilon, T)
    rows = []
    for n in ns:
        res = solve_burgers(cfg, n, p, rtol, atol)
        e2, einf = grid_error_report(res.coeffs, lambda x: cfg.exact(x, T), grid_size, p.b)
        rows.append((n, e2, einf))
    return rows
