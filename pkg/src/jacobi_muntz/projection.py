"""Weighted orthogonal projection onto finite JMF spaces and error measurement."""

from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteError
from .jmf import SpectralCoeffs, jmf_batch, jmf_norm
from .quadrature import gjmqr_rule

MIN_PROBE = 64


@dataclass(frozen=True)
class ProjectionReport:
    N: int
    coeffs: SpectralCoeffs
    l2_error: float
    linf_error: float
    decay_slope: float


def _values(u, x):
    vals = np.asarray(u(x), dtype=float)
    if vals.shape != x.shape:
        vals = np.broadcast_to(vals, x.shape)
    if not np.all(np.isfinite(vals)):
        raise NonFiniteError("function is not finite at every quadrature node")
    return vals


def project(u, N, p, quad_size=None):
    """Coefficients a_k = (u, J_k)_w / gamma_k for k = 0..N.

    Inner products use the GJMQR rule of the family's kind with
    ``quad_size`` nodes (default 2N+2).
    """
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    quad_size = 2 * N + 2 if quad_size is None else int(quad_size)
    if quad_size < N + 1:
        raise ValueError(f"quad_size must be at least N+1 = {N + 1}, got {quad_size}")
    rule = gjmqr_rule(p.kind, quad_size - 1, p)
    basis = jmf_batch(N, p, rule.nodes)
    wu = rule.weights * _values(u, rule.nodes)
    gam = np.array([jmf_norm(k, p) for k in range(N + 1)])
    return SpectralCoeffs(p, basis @ wu / gam)


def project_eval(c, x):
    """Sum of a_k J_k(x), accumulated from k = 0 upward."""
    x = np.asarray(x, dtype=float)
    basis = jmf_batch(c.degree, c.params, x)
    out = np.zeros(x.shape)
    for k in range(c.degree + 1):
        out = out + c.coeffs[k] * basis[k]
    return out if out.ndim else float(out)


def probe_grid(b, size):
    """Uniform grid of (0, b) offset by half a step from both ends."""
    return (np.arange(size) + 0.5) * (b / size)


def weighted_norm(u, p, size):
    """Weighted L2 norm of u under the family measure, by a GJMQR rule of ``size`` nodes."""
    rule = gjmqr_rule(p.kind, size - 1, p)
    return float(np.sqrt(np.dot(rule.weights, _values(u, rule.nodes) ** 2)))


def error_norms(u, c, probe_size=MIN_PROBE):
    """(weighted L2, max abs) errors of the expansion ``c`` against u."""
    if probe_size < MIN_PROBE:
        raise ValueError(f"probe_size must be at least {MIN_PROBE}, got {probe_size}")
    p = c.params
    size = max(probe_size, 2 * c.degree)
    rule = gjmqr_rule(p.kind, size - 1, p)
    diff = _values(u, rule.nodes) - project_eval(c, rule.nodes)
    l2 = float(np.sqrt(np.dot(rule.weights, diff ** 2)))
    xg = probe_grid(p.b, 4 * probe_size)
    linf = float(np.max(np.abs(_values(u, xg) - project_eval(c, xg))))
    return l2, linf


def fit_slope(xs, ys):
    """Least-squares slope of ys against xs."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    return float(np.polyfit(xs, ys, 1)[0])


def coefficient_decay_slope(c, lo=None, hi=None, log_k=True):
    """Slope of log|a_k| against log k (or k) over indices lo..hi.

    Defaults to the top half of the indices.  Exactly zero coefficients are
    skipped.
    """
    N = c.degree
    lo = max(1, (N + 1) // 2) if lo is None else lo
    hi = N if hi is None else hi
    k = np.arange(lo, hi + 1)
    a = np.abs(c.coeffs[lo:hi + 1])
    keep = a > 0
    if keep.sum() < 2:
        return float("nan")
    xs = np.log(k[keep]) if log_k else k[keep]
    return fit_slope(xs, np.log(a[keep]))


def projection_report(u, N, p, quad_size=None, probe_size=MIN_PROBE):
    c = project(u, N, p, quad_size)
    l2, linf = error_norms(u, c, probe_size)
    return ProjectionReport(N, c, l2, linf, coefficient_decay_slope(c))


def convergence_study(u, Ns, p, quad_size=None, probe_size=MIN_PROBE):
    """Weighted L2 errors for each N plus the fitted exponent of error vs N."""
    errs = np.array([error_norms(u, project(u, N, p, quad_size), probe_size)[0] for N in Ns])
    rate = fit_slope(np.log(Ns), np.log(errs))
    return errs, rate
