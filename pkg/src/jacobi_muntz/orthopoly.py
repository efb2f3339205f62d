"""Gamma-function helpers, Jacobi polynomials and Gauss-Jacobi quadrature on [-1, 1].

Everything in the package that touches a Jacobi polynomial goes through this
module.  Polynomials are evaluated by the three-term recurrence; the
hypergeometric representation is kept as an independent evaluation route.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError, PoleError
from .linalg import symtridiag_eigen

# Γ(x) overflows a double just above this point.
GAMMA_OVERFLOW = 171.6243769563027


@dataclass(frozen=True)
class JacobiParams:
    """Exponents (alpha, beta) of the Jacobi weight (1-x)^alpha (1+x)^beta."""

    alpha: float
    beta: float

    def check_orthogonal(self):
        if self.alpha <= -1 or self.beta <= -1:
            raise DomainError(
                f"orthogonality needs alpha, beta > -1 (got {self.alpha}, {self.beta})")


def _is_pole(x):
    return x <= 0 and float(x).is_integer()


def gamma_fn(x):
    """Euler gamma function.

    Raises PoleError at non-positive integers and OverflowError once the
    result exceeds the double range (x > 171.62...).
    """
    x = float(x)
    if _is_pole(x):
        raise PoleError(f"gamma has a pole at {x}")
    if x > GAMMA_OVERFLOW:
        raise OverflowError(f"gamma({x}) overflows double precision")
    return math.gamma(x)


def _gamma_sign(x):
    if x > 0:
        return 1.0
    # Γ alternates sign between consecutive negative integers
    return -1.0 if math.floor(x) % 2 else 1.0


def gamma_ratio(a, b):
    """Γ(a)/Γ(b) without intermediate overflow.

    Integer offsets up to 64 are done as an exact product, moderate arguments
    directly, and everything else through a log-gamma difference.
    """
    a = float(a)
    b = float(b)
    if _is_pole(a):
        raise PoleError(f"gamma has a pole at {a}")
    if _is_pole(b):
        raise PoleError(f"gamma has a pole at {b}")
    diff = a - b
    if diff.is_integer() and abs(diff) <= 64:
        k = int(diff)
        if k >= 0:
            return float(math.prod(b + i for i in range(k)))
        return 1.0 / math.prod(a + i for i in range(-k))
    if 0 < a < 160 and 0 < b < 160:
        return math.gamma(a) / math.gamma(b)
    sign = _gamma_sign(a) * _gamma_sign(b)
    return sign * math.exp(math.lgamma(a) - math.lgamma(b))


def pochhammer(theta, j):
    """Rising factorial (theta)_j = theta (theta+1) ... (theta+j-1); (theta)_0 = 1."""
    if j < 0 or int(j) != j:
        raise ValueError(f"j must be a non-negative integer, got {j}")
    out = 1.0
    for i in range(int(j)):
        out *= theta + i
    return out


def hyp2f1_terminating(a, b, c, x):
    """Terminating Gauss hypergeometric series 2F1(a, b; c; x) with a = -n.

    Evaluated in nested (Horner) form, so ``x`` may be an array.
    """
    if a > 0 or not float(a).is_integer():
        raise ParameterError(f"terminating 2F1 needs a non-positive integer a, got {a}")
    n = -int(a)
    for j in range(n):
        if c + j == 0:
            raise PoleError(f"(c)_j vanishes at j={j} for c={c}")
    x = np.asarray(x, dtype=float)
    acc = np.ones_like(x)
    for j in range(n - 1, -1, -1):
        acc = 1.0 + x * ((a + j) * (b + j) / ((c + j) * (j + 1))) * acc
    return acc if acc.ndim else float(acc)


def jacobi_eval(n, alpha, beta, x):
    """P_n^{(alpha, beta)}(x) by forward three-term recurrence.

    Any real alpha, beta are accepted; ``x`` may be a scalar or an array.
    """
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev if x.ndim else float(p_prev)
    ab = alpha + beta
    p = 0.5 * (ab + 2.0) * x + 0.5 * (alpha - beta)
    for k in range(1, n):
        s = 2 * k + ab
        a_k = 2.0 * (k + 1) * (k + ab + 1) * s
        b_k = s * (s + 1) * (s + 2)
        c_k = (beta * beta - alpha * alpha) * (s + 1)
        e_k = 2.0 * (k + alpha) * (k + beta) * (s + 2)
        p, p_prev = ((b_k * x - c_k) * p - e_k * p_prev) / a_k, p
    return p if x.ndim else float(p)


def jacobi_batch(n_max, alpha, beta, x):
    """All of P_0 .. P_{n_max} at ``x``; row k holds P_k."""
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0
    if n_max == 0:
        return out
    ab = alpha + beta
    out[1] = 0.5 * (ab + 2.0) * x + 0.5 * (alpha - beta)
    for k in range(1, n_max):
        s = 2 * k + ab
        a_k = 2.0 * (k + 1) * (k + ab + 1) * s
        b_k = s * (s + 1) * (s + 2)
        c_k = (beta * beta - alpha * alpha) * (s + 1)
        e_k = 2.0 * (k + alpha) * (k + beta) * (s + 2)
        out[k + 1] = ((b_k * x - c_k) * out[k] - e_k * out[k - 1]) / a_k
    return out


def jacobi_deriv(n, alpha, beta, x, order=1):
    """k-th derivative of P_n^{(alpha, beta)} at ``x``.

    Uses d/dx P_n^{(a,b)} = (n+a+b+1)/2 * P_{n-1}^{(a+1,b+1)} repeatedly.
    """
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    x = np.asarray(x, dtype=float)
    if order > n:
        out = np.zeros_like(x)
        return out if x.ndim else 0.0
    scale = 1.0
    for i in range(1, order + 1):
        scale *= 0.5 * (n + alpha + beta + i)
    return scale * jacobi_eval(n - order, alpha + order, beta + order, x)


def jacobi_norm(n, alpha, beta):
    """Squared norm gamma_n of P_n^{(alpha, beta)} under (1-x)^alpha (1+x)^beta."""
    JacobiParams(alpha, beta).check_orthogonal()
    c = 2.0 ** (alpha + beta + 1)
    if n == 0:
        # (a+b+1) Γ(a+b+1) = Γ(a+b+2) keeps alpha + beta = -1 finite
        return c * gamma_fn(alpha + 1) * gamma_ratio(beta + 1, alpha + beta + 2)
    return (c / (2 * n + alpha + beta + 1)
            * gamma_ratio(n + alpha + 1, n + 1)
            * gamma_ratio(n + beta + 1, n + alpha + beta + 1))


def jacobi_matrix(size, alpha, beta):
    """Diagonal and off-diagonal of the symmetric Jacobi matrix of order ``size``."""
    ab = alpha + beta
    diag = np.empty(size)
    diag[0] = (beta - alpha) / (ab + 2.0)
    for k in range(1, size):
        s = 2 * k + ab
        diag[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0))
    off = np.empty(size - 1)
    if size > 1:
        off[0] = math.sqrt(4.0 * (1 + alpha) * (1 + beta) / ((2 + ab) ** 2 * (3 + ab)))
    for k in range(2, size):
        s = 2 * k + ab
        off[k - 1] = math.sqrt(
            4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1) * (s - 1)))
    return diag, off


def gauss_jacobi_rule(n, alpha, beta):
    """(n+1)-point Gauss-Jacobi nodes and weights on [-1, 1] (Golub-Welsch).

    Exact for polynomials of degree <= 2n+1 against (1-x)^alpha (1+x)^beta.
    Returns ``(nodes, weights)`` with nodes strictly increasing.
    """
    JacobiParams(alpha, beta).check_orthogonal()
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    diag, off = jacobi_matrix(n + 1, alpha, beta)
    nodes, first = symtridiag_eigen(diag, off)
    mass = jacobi_norm(0, alpha, beta)
    weights = mass * first ** 2
    return nodes, weights
