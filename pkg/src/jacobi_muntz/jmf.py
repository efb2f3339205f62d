"""Jacobi-Müntz functions (JMFs) of the first and second kinds.

For parameters (alpha, beta, mu, sigma, eta) on [0, b] write
t = (x/b)^sigma and y = 2t - 1.  Then

    kind 1:  J_n(x) = x^{sigma(beta-eta-mu)}               P_n^{(alpha,beta)}(y)
    kind 2:  J_n(x) = x^{sigma*eta} (b^sigma-x^sigma)^alpha P_n^{(alpha,beta)}(y)

Both families are orthogonal on (0, b) under x^{sigma-1} w(x), with w the
Sturm-Liouville weight returned by :func:`sl_coefficients`, and are
eigenfunctions of Erdélyi-Kober fractional Sturm-Liouville operators with
eigenvalues :func:`jmf_eigenvalue`.
"""

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError, ParameterError
from .orthopoly import gamma_ratio, jacobi_batch, jacobi_deriv, jacobi_eval, jacobi_norm

# relative slack used to call a constraint "on the boundary" rather than violated
BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class JmfParams:
    alpha: float
    beta: float
    mu: float
    sigma: float
    eta: float
    b: float = 1.0
    kind: int = 1

    def __post_init__(self):
        if self.kind not in (1, 2):
            raise ParameterError(f"kind must be 1 or 2, got {self.kind}")
        if not self.sigma > 0:
            raise ParameterError(f"sigma must be positive, got {self.sigma}")
        if not self.b > 0:
            raise ParameterError(f"b must be positive, got {self.b}")

    def with_kind(self, kind):
        return replace(self, kind=kind)

    @property
    def prefactor_power(self):
        """Exponent of x in the prefactor (kind 1: sigma(beta-eta-mu); kind 2: sigma*eta)."""
        if self.kind == 1:
            return self.sigma * (self.beta - self.eta - self.mu)
        return self.sigma * self.eta

    @property
    def tail_power(self):
        """Exponent of (b^sigma - x^sigma) in the prefactor."""
        return 0.0 if self.kind == 1 else self.alpha


@dataclass(frozen=True)
class SpectralCoeffs:
    """Expansion coefficients a_0..a_N of a function in one JMF family."""

    params: JmfParams
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 1 or not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be a finite 1-D array")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self):
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class Constraint:
    name: str
    margin: float
    status: str  # "ok", "boundary" or "violated"
    hard: bool


@dataclass(frozen=True)
class ValidityReport:
    params: JmfParams
    constraints: tuple

    @property
    def ok(self):
        return all(c.status == "ok" for c in self.constraints)

    @property
    def violations(self):
        return [c for c in self.constraints if c.status != "ok"]

    @property
    def hard_violations(self):
        return [c for c in self.constraints if c.hard and c.status == "violated"]

    def summary(self):
        if self.ok:
            return "all constraints satisfied"
        return "; ".join(f"{c.name}: {c.status} (margin {c.margin:.3g})"
                         for c in self.violations)


def _constraint(name, lhs, rhs, hard):
    margin = lhs - rhs
    scale = max(1.0, abs(lhs), abs(rhs))
    if margin > BOUNDARY_TOL * scale:
        status = "ok"
    elif margin >= -BOUNDARY_TOL * scale:
        status = "boundary"
    else:
        status = "violated"
    return Constraint(name, margin, status, hard)


def validate_params(p):
    """Check a parameter bundle; never raises.

    Hard constraints (alpha, beta > -1) are needed for orthogonality at all.
    The kind-specific eigenproblem constraints (kind 1: alpha > mu-1 and
    beta > eta+mu; kind 2: alpha > 0 and beta > eta-mu+1) are soft: breaking
    them loses the Sturm-Liouville boundary behaviour, not the basis itself.
    """
    cs = [
        _constraint("alpha > -1", p.alpha, -1.0, True),
        _constraint("beta > -1", p.beta, -1.0, True),
    ]
    if p.kind == 1:
        cs.append(_constraint("alpha > mu - 1", p.alpha, p.mu - 1, False))
        cs.append(_constraint("beta > eta + mu", p.beta, p.eta + p.mu, False))
    else:
        cs.append(_constraint("alpha > 0", p.alpha, 0.0, False))
        cs.append(_constraint("beta > eta - mu + 1", p.beta, p.eta - p.mu + 1, False))
    return ValidityReport(p, tuple(cs))


def require_valid(p):
    """Raise on hard violations, warn on soft or boundary ones."""
    report = validate_params(p)
    if report.hard_violations:
        raise ParameterError(f"invalid JMF parameters: {report.summary()}")
    if not report.ok:
        warnings.warn(f"JMF parameters outside the eigenproblem range: {report.summary()}",
                      stacklevel=2)
    return report


def _as_points(x, b, open_interval=False):
    x = np.asarray(x, dtype=float)
    tol = 4 * np.finfo(float).eps * b
    if np.any(x < -tol) or np.any(x > b + tol):
        raise DomainError(f"points must lie in [0, {b}]")
    if open_interval and (np.any(x <= 0) or np.any(x >= b)):
        raise DomainError(f"points must lie strictly inside (0, {b})")
    return np.clip(x, 0.0, b)


def _power(base, e, what):
    """base**e for base >= 0, treating 0**0 as 1 and flagging 0**negative."""
    base = np.asarray(base, dtype=float)
    if e < 0 and np.any(base == 0):
        raise DomainError(f"{what} is singular at this point (exponent {e:g})")
    with np.errstate(divide="ignore"):
        return np.where(base == 0, 1.0 if e == 0 else 0.0,
                        np.exp(e * np.log(np.where(base == 0, 1.0, base))))


def mapped_variable(p_or_sigma, x, b=None):
    """y = 2 (x/b)^sigma - 1."""
    if isinstance(p_or_sigma, JmfParams):
        sigma, b = p_or_sigma.sigma, p_or_sigma.b
    else:
        sigma = p_or_sigma
    return 2.0 * (np.asarray(x, dtype=float) / b) ** sigma - 1.0


def mapped_form(n, alpha, beta, sigma, b, x, x_power=0.0, tail_power=0.0):
    """x^{x_power} (b^sigma - x^sigma)^{tail_power} P_n^{(alpha,beta)}(2(x/b)^sigma - 1).

    Every closed-form Erdélyi-Kober identity in the package maps one function
    of this shape to another.
    """
    x = _as_points(x, b)
    pre = _power(x, x_power, "x-power prefactor")
    if tail_power != 0.0:
        pre = pre * _power(b ** sigma - x ** sigma, tail_power, "tail prefactor")
    out = pre * jacobi_eval(n, alpha, beta, mapped_variable(sigma, x, b))
    return out if out.ndim else float(out)


def prefactor(p, x):
    """The non-polynomial factor of the family at x."""
    x = _as_points(x, p.b)
    pre = _power(x, p.prefactor_power, "JMF prefactor")
    if p.kind == 2:
        pre = pre * _power(p.b ** p.sigma - x ** p.sigma, p.alpha, "JMF prefactor")
    return pre if pre.ndim else float(pre)


def jmf_eval(n, p, x):
    """Value of the degree-n JMF of family ``p`` at x in [0, b]."""
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    return mapped_form(n, p.alpha, p.beta, p.sigma, p.b, x,
                       p.prefactor_power, p.tail_power)


def jmf_batch(N, p, x):
    """Matrix with row k = J_k(x) for k = 0..N (Jacobi recurrence in y)."""
    x = _as_points(x, p.b)
    pre = np.asarray(prefactor(p, x))
    return jacobi_batch(N, p.alpha, p.beta, mapped_variable(p, x)) * pre


def jmf_recurrence_batch(N, p, x):
    """J_0..J_N at x by the recurrence written directly in x^sigma.

    A_n J_{n+1} = (B*_n x^sigma - C*_n) J_n - E_n J_{n-1}, with
    B*_n = 2 B_n / b^sigma and C*_n = B_n + C_n, seeded by J_0 = prefactor and
    J_1 = prefactor * ((alpha+beta+2) x^sigma / b^sigma - (beta+1)).
    """
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    a, bb, s = p.alpha, p.beta, p.sigma
    x = _as_points(x, p.b)
    xs = x ** s
    bs = p.b ** s
    out = np.empty((N + 1,) + x.shape)
    out[0] = prefactor(p, x)
    out[1] = out[0] * ((a + bb + 2) * xs / bs - (bb + 1))
    ab = a + bb
    for n in range(1, N):
        q = 2 * n + ab
        A = 2.0 * (n + 1) * (n + ab + 1) * q
        B = q * (q + 1) * (q + 2)
        C = (bb * bb - a * a) * (q + 1)
        E = 2.0 * (n + a) * (n + bb) * (q + 2)
        out[n + 1] = ((2 * B / bs * xs - (B + C)) * out[n] - E * out[n - 1]) / A
    return out


def norm_scale(p, alpha=None, beta=None):
    """(1/sigma) (b^sigma/2)^{alpha+beta+1}, the Jacobian factor of the map."""
    a = p.alpha if alpha is None else alpha
    bb = p.beta if beta is None else beta
    return (p.b ** p.sigma / 2.0) ** (a + bb + 1) / p.sigma


def jmf_norm(n, p):
    """Squared weighted norm of J_n under x^{sigma-1} w (same formula for both kinds)."""
    if p.alpha <= -1 or p.beta <= -1:
        raise DomainError(f"norm needs alpha, beta > -1 (got {p.alpha}, {p.beta})")
    return norm_scale(p) * jacobi_norm(n, p.alpha, p.beta)


def jmf_frac_norm(n, l, p):
    """Squared norm theta_{n,l} of the order-(mu+l) EK derivative of J_n.

    The norm is taken under the shifted weight that makes those derivatives
    orthogonal (see :func:`frac_derivative_weight`).
    """
    if l < 0 or int(l) != l:
        raise ValueError(f"l must be a non-negative integer, got {l}")
    nu = p.mu + l
    if p.kind == 1:
        a_out, b_out = p.alpha + nu, p.beta - nu
        ratio = gamma_ratio(n + p.beta + 1, n + p.beta - nu + 1)
    else:
        a_out, b_out = p.alpha - nu, p.beta + nu
        ratio = gamma_ratio(n + p.alpha + 1, n + p.alpha - nu + 1)
    if a_out <= -1 or b_out <= -1:
        raise DomainError(
            f"shifted Jacobi exponents ({a_out:g}, {b_out:g}) leave the orthogonality range")
    return norm_scale(p) * ratio ** 2 * jacobi_norm(n, a_out, b_out)


def jmf_eigenvalue(kind, n, p):
    """Eigenvalue of the kind-1 or kind-2 EK fractional Sturm-Liouville problem."""
    a, bb, mu = p.alpha, p.beta, p.mu
    if kind == 1:
        return gamma_ratio(n + bb + 1, n + bb - mu + 1) * gamma_ratio(n + a + mu + 1, n + a + 1)
    if kind == 2:
        return gamma_ratio(n + a + 1, n + a - mu + 1) * gamma_ratio(n + bb + mu + 1, n + bb + 1)
    raise ParameterError(f"kind must be 1 or 2, got {kind}")


def sl_coefficients(p, x):
    """Sturm-Liouville weight w and coefficient p at interior points x.

    kind 1:  w = x^{sigma(2(eta+mu)-beta)} (b^s-x^s)^alpha,
             p = x^{sigma(2eta+mu-beta)} (b^s-x^s)^{mu+alpha}
    kind 2:  w = x^{sigma(beta-2eta)} (b^s-x^s)^{-alpha},
             p = x^{-sigma(mu+2eta-beta)} (b^s-x^s)^{mu-alpha}
    """
    a, bb, mu, s, eta = p.alpha, p.beta, p.mu, p.sigma, p.eta
    x = _as_points(x, p.b)
    tail = p.b ** s - x ** s
    if p.kind == 1:
        w = _power(x, s * (2 * (eta + mu) - bb), "weight") * _power(tail, a, "weight")
        c = _power(x, s * (2 * eta + mu - bb), "coefficient") * _power(tail, mu + a, "coefficient")
    else:
        w = _power(x, s * (bb - 2 * eta), "weight") * _power(tail, -a, "weight")
        c = (_power(x, -s * (mu + 2 * eta - bb), "coefficient")
             * _power(tail, mu - a, "coefficient"))
    if w.ndim == 0:
        return float(w), float(c)
    return w, c


def frac_derivative_weight(p, l, x):
    """Weight x^{sigma-1} w(shifted params) under which order-(mu+l) EK derivatives are orthogonal."""
    nu = p.mu + l
    if p.kind == 1:
        q = JmfParams(p.alpha + nu, p.beta - nu, p.mu, p.sigma, p.eta - nu, p.b, 1)
    else:
        q = JmfParams(p.alpha - nu, p.beta + nu, p.mu, p.sigma, p.eta + nu, p.b, 2)
    w, _ = sl_coefficients(q, x)
    return np.asarray(x, dtype=float) ** (p.sigma - 1) * w


def _prefactor_derivs(p, x):
    """Prefactor F and its first two derivatives at interior points."""
    s = p.sigma
    c = p.prefactor_power
    xc = x ** c
    F0 = xc
    F1 = c * x ** (c - 1)
    F2 = c * (c - 1) * x ** (c - 2)
    if p.kind == 1:
        return F0, F1, F2
    a = p.alpha
    tail = p.b ** s - x ** s
    G0 = tail ** a
    G1 = -a * s * x ** (s - 1) * tail ** (a - 1)
    G2 = (-a * s * (s - 1) * x ** (s - 2) * tail ** (a - 1)
          + a * (a - 1) * s * s * x ** (2 * s - 2) * tail ** (a - 2))
    return F0 * G0, F1 * G0 + F0 * G1, F2 * G0 + 2 * F1 * G1 + F0 * G2


def jmf_ordinary_deriv(n, p, x, order=1):
    """First or second ordinary derivative of J_n at interior points (product/chain rule)."""
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")
    x = _as_points(x, p.b, open_interval=True)
    s, bs = p.sigma, p.b ** p.sigma
    y = 2.0 * x ** s / bs - 1.0
    y1 = 2.0 * s * x ** (s - 1) / bs
    P0 = jacobi_eval(n, p.alpha, p.beta, y)
    P1 = jacobi_deriv(n, p.alpha, p.beta, y, 1)
    F0, F1, F2 = _prefactor_derivs(p, x)
    if order == 1:
        out = F1 * P0 + F0 * P1 * y1
    else:
        y2 = 2.0 * s * (s - 1) * x ** (s - 2) / bs
        P2 = jacobi_deriv(n, p.alpha, p.beta, y, 2)
        out = F2 * P0 + 2 * F1 * P1 * y1 + F0 * (P2 * y1 * y1 + P1 * y2)
    out = np.asarray(out)
    return out if out.ndim else float(out)


def jmf_deriv_matrix(N, p, x, order=1):
    """Matrix with entry [j, k] = d^order/dx^order J_k at x_j."""
    x = np.asarray(x, dtype=float)
    return np.stack([jmf_ordinary_deriv(k, p, x, order) for k in range(N + 1)], axis=1)


def boundary_values(p):
    """Values of J_n at x = 0 and x = b implied by the prefactor alone.

    Returns (at_zero, at_b) where each entry is 0.0 when the prefactor forces
    the value to vanish, and None otherwise.
    """
    at_zero = 0.0 if p.prefactor_power > 0 else None
    at_b = 0.0 if (p.kind == 2 and p.alpha > 0) else None
    return at_zero, at_b


def eigen_growth(kind, n, p):
    """Ratio Lambda_n / n^{2 mu}, which tends to 1 as n grows."""
    return jmf_eigenvalue(kind, n, p) / math.pow(n, 2 * p.mu)
