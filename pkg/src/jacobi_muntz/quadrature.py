"""Gauss-Jacobi-Müntz quadrature on (0, b).

The base rule maps Gauss-Jacobi nodes y_j on [-1, 1] to

    x_j = b ((1 + y_j) / 2)^{1/sigma},   w_j = (1/sigma) (b^sigma/2)^{alpha+beta+1} w_j^GJ

and integrates f against x^{sigma(beta+1)-1} (b^sigma - x^sigma)^alpha exactly
for f in span{x^{k sigma}, k <= 2n+1}.  The two reweighted rules integrate
against the kind-1 and kind-2 orthogonality measures x^{sigma-1} w(x).
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.special import betaln

from .errors import NonFiniteError
from .jmf import JmfParams
from .orthopoly import gauss_jacobi_rule

BASE = "base"
GJMQR1 = "gjmqr1"
GJMQR2 = "gjmqr2"


@dataclass(frozen=True)
class QuadRule:
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    kind: str
    alpha: float
    beta: float
    sigma: float
    b: float
    params: Optional[JmfParams] = None

    def __len__(self):
        return len(self.nodes)


def gjm_base_rule(n, alpha, beta, sigma, b):
    """(n+1)-point base rule for the weight x^{sigma(beta+1)-1} (b^sigma - x^sigma)^alpha."""
    y, w = gauss_jacobi_rule(n, alpha, beta)
    nodes = b * (0.5 * (1.0 + y)) ** (1.0 / sigma)
    weights = w * (b ** sigma / 2.0) ** (alpha + beta + 1) / sigma
    return QuadRule(nodes, weights, BASE, alpha, beta, sigma, b)


def log_weight_multiplier(kind, p, nodes):
    """log of the factor turning base weights into GJMQR-1/2 weights."""
    s = p.sigma
    logx = np.log(nodes)
    if kind == 1:
        return 2 * s * (p.eta + p.mu - p.beta) * logx
    return -2 * p.alpha * np.log(p.b ** s - nodes ** s) - 2 * s * p.eta * logx


def gjmqr_rule(kind, n, p):
    """Gauss-Jacobi-Müntz rule of the first or second type.

    kind 1 integrates against x^{sigma(2(eta+mu)-beta+1)-1} (b^s-x^s)^alpha,
    kind 2 against x^{sigma(beta-2eta+1)-1} (b^s-x^s)^{-alpha}.  Nodes are
    the base-rule nodes; weights are reweighted in log space.
    """
    if kind not in (1, 2):
        raise ValueError(f"kind must be 1 or 2, got {kind}")
    base = gjm_base_rule(n, p.alpha, p.beta, p.sigma, p.b)
    logw = np.log(base.weights) + log_weight_multiplier(kind, p, base.nodes)
    if np.any(logw > np.log(np.finfo(float).max)):
        raise OverflowError("GJMQR weight multiplier exceeds the double range")
    weights = np.exp(logw)
    return QuadRule(base.nodes, weights, GJMQR1 if kind == 1 else GJMQR2,
                    p.alpha, p.beta, p.sigma, p.b, p)


def integrate(rule, f):
    """Sum of w_j f(x_j); ``f`` is called once with the node array."""
    vals = np.asarray(f(rule.nodes), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise NonFiniteError("integrand is not finite at every node")
    return float(np.dot(rule.weights, vals))


def base_total_mass(alpha, beta, sigma, b):
    """∫_0^b x^{sigma(beta+1)-1} (b^sigma - x^sigma)^alpha dx = b^{sigma(alpha+beta+1)} B(beta+1, alpha+1)/sigma."""
    return np.exp(sigma * (alpha + beta + 1) * np.log(b) + betaln(beta + 1, alpha + 1)) / sigma
