"""Erdélyi-Kober fractional integrals and derivatives on (0, b).

Left integral of order mu > 0 with map exponent sigma and shift eta::

    I[f](x) = sigma x^{-sigma(eta+mu)} / Γ(mu) ∫_0^x (x^s - t^s)^{mu-1} t^{sigma(eta+1)-1} f(t) dt

Right integral::

    I[f](x) = sigma x^{sigma eta} / Γ(mu) ∫_x^b (t^s - x^s)^{mu-1} t^{-sigma(eta+mu-1)-1} f(t) dt

The numeric routines substitute u = (t/x)^sigma (left) or
t^sigma = x^sigma + (b^sigma - x^sigma) v (right) so that the kernel
singularity becomes a Jacobi weight, then apply a Gauss-Jacobi rule.
Closed forms act on Müntz monomials and on the mapped-Jacobi shapes that
JMFs are built from.
"""

import os

import numpy as np

from .errors import DomainError, NonFiniteError, ParameterError
from .jmf import JmfParams, mapped_form
from .orthopoly import gamma_fn, gamma_ratio, gauss_jacobi_rule

DEFAULT_NODES = 64
NODES_ENV = "MUNTZ_QUAD_NODES"

LEFT = "left"
RIGHT = "right"


def default_nodes():
    """Node count for numeric EK operators; MUNTZ_QUAD_NODES overrides 64."""
    raw = os.environ.get(NODES_ENV)
    if raw is None:
        return DEFAULT_NODES
    try:
        n = int(raw)
    except ValueError:
        raise ParameterError(f"{NODES_ENV} must be an integer, got {raw!r}") from None
    if n < 1:
        raise ParameterError(f"{NODES_ENV} must be positive, got {n}")
    return n


def _unit_rule(n_nodes, a, b):
    """Gauss-Jacobi rule for ∫_0^1 (1-u)^a u^b h(u) du."""
    if a <= -1 or b <= -1:
        raise DomainError(
            f"integrand exponents ({a:g}, {b:g}) are not integrable; "
            "pass lead/tail powers that absorb the endpoint behaviour")
    y, w = gauss_jacobi_rule(n_nodes - 1, a, b)
    return 0.5 * (1.0 + y), w / 2.0 ** (a + b + 1)


def _check_side(side):
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def _points(x, b, side):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if side == LEFT:
        if np.any(x <= 0) or (b is not None and np.any(x > b)):
            raise DomainError("left EK operators need x in (0, b]")
    else:
        if b is None:
            raise ValueError("right EK operators need the endpoint b")
        if np.any(x < 0) or np.any(x >= b):
            raise DomainError("right EK operators need x in [0, b)")
    return x


def _finite(values):
    if not np.all(np.isfinite(values)):
        raise NonFiniteError("function produced non-finite samples")
    return values


def _shape_out(out, x_in):
    return float(out[0]) if np.ndim(x_in) == 0 else out


def ek_int_numeric(f, x, mu, sigma, eta, b=None, side=LEFT, n_nodes=None,
                   lead=0.0, tail=0.0):
    """Numeric left or right EK fractional integral of ``f`` at x.

    ``f`` must accept numpy arrays.  ``lead`` declares f(t) ~ t^lead near 0
    (left side) and ``tail`` declares f(t) ~ (b^sigma - t^sigma)^tail near b
    (right side); those powers are moved into the quadrature weight so the
    remaining integrand is smooth.
    """
    _check_side(side)
    if mu <= 0:
        raise DomainError(f"order mu must be positive, got {mu}")
    n_nodes = n_nodes or default_nodes()
    xv = _points(x, b, side)

    if side == LEFT:
        e = eta + lead / sigma
        u, w = _unit_rule(n_nodes, mu - 1.0, e)
        t = xv[:, None] * u[None, :] ** (1.0 / sigma)
        vals = _finite(np.asarray(f(t), dtype=float)) / u[None, :] ** (lead / sigma)
        out = vals @ w / gamma_fn(mu)
        return _shape_out(out, x)

    bs = b ** sigma
    v, w = _unit_rule(n_nodes, tail, mu - 1.0)
    out = np.empty_like(xv)
    for i, xi in enumerate(xv):
        if xi == 0.0:
            if eta > 0:
                out[i] = 0.0
                continue
            raise DomainError("right EK integral at x = 0 is only handled for eta > 0")
        xs = xi ** sigma
        s = xs + (bs - xs) * v
        vals = _finite(np.asarray(f(s ** (1.0 / sigma)), dtype=float))
        h = s ** (-(eta + mu)) * vals / (1.0 - v) ** tail
        out[i] = xs ** eta * (bs - xs) ** mu * (h @ w) / gamma_fn(mu)
    return _shape_out(out, x)


def ek_caputo_numeric(f, fprime, x, mu, sigma, eta, b=None, side=LEFT, n_nodes=None,
                      lead=0.0, tail=0.0):
    """Numeric Caputo-type EK derivative of order 0 < mu < 1.

    Left:  x^{-sigma eta}/Γ(1-mu) ∫_0^x (x^s - t^s)^{-mu} d/dt(t^{sigma(eta+mu)} f) dt
    Right: -x^{sigma(eta+mu)}/Γ(1-mu) ∫_x^b (t^s - x^s)^{-mu} d/dt(t^{-sigma eta} f) dt

    ``fprime`` is the ordinary derivative of ``f``.  ``lead``/``tail`` play
    the same role as in :func:`ek_int_numeric`; on the right side the
    derivative behaves like (b^s - t^s)^{tail-1}, so tail must be positive
    when given.
    """
    _check_side(side)
    if not 0 < mu < 1:
        raise DomainError(f"Caputo EK derivative needs 0 < mu < 1, got {mu}")
    n_nodes = n_nodes or default_nodes()
    xv = _points(x, b, side)
    c = 1.0 / gamma_fn(1.0 - mu)

    if side == LEFT:
        u, w = _unit_rule(n_nodes, -mu, eta + mu - 1.0 + lead / sigma)
        t = xv[:, None] * u[None, :] ** (1.0 / sigma)
        fv = _finite(np.asarray(f(t), dtype=float))
        dv = _finite(np.asarray(fprime(t), dtype=float))
        h = ((eta + mu) * fv + t * dv / sigma) / u[None, :] ** (lead / sigma)
        return _shape_out(c * (h @ w), x)

    bs = b ** sigma
    tail_w = tail - 1.0 if tail else 0.0
    v, w = _unit_rule(n_nodes, tail_w, -mu)
    out = np.empty_like(xv)
    for i, xi in enumerate(xv):
        if xi == 0.0:
            raise DomainError("right Caputo EK derivative needs x in (0, b)")
        xs = xi ** sigma
        s = xs + (bs - xs) * v
        t = s ** (1.0 / sigma)
        fv = _finite(np.asarray(f(t), dtype=float))
        dv = _finite(np.asarray(fprime(t), dtype=float))
        h = t ** (-sigma * (eta + 1)) * (-eta * fv + t * dv / sigma) / (1.0 - v) ** tail_w
        out[i] = -c * xs ** (eta + mu) * (bs - xs) ** (1.0 - mu) * (h @ w)
    return _shape_out(out, x)


def ek_monomial_closed(power, mu, sigma, eta, derivative=False):
    """Scale s with I[x^p] = s x^p (or D[x^p] = s x^p) for the left EK operator.

    integral:   Γ(p/sigma + eta + 1) / Γ(p/sigma + eta + 1 + mu)
    derivative: Γ(p/sigma + eta + mu + 1) / Γ(p/sigma + eta + 1)
    """
    q = power / sigma + eta + 1.0
    if derivative:
        return gamma_ratio(q + mu, q)
    return gamma_ratio(q, q + mu)


def ek_jacobi_closed(n, alpha, beta, mu, side=LEFT, derivative=False):
    """Closed-form EK action on a mapped Jacobi shape.

    Returns ``(scale, out_alpha, out_beta)``.  The input must have the
    canonical shape for the chosen operator:

    ========================  =============================================  ===============
    operator                  input                                          output exponents
    ========================  =============================================  ===============
    left integral             x^{s(beta-eta)} P_n^{(a,b)}                     (a-mu, b+mu)
    right integral            x^{s(eta+mu)} (b^s-x^s)^a P_n^{(a,b)}          (a+mu, b-mu)
    left derivative           x^{s(beta-eta-mu)} P_n^{(a,b)}                  (a+mu, b-mu)
    right derivative          x^{s eta} (b^s-x^s)^a P_n^{(a,b)}              (a-mu, b+mu)
    ========================  =============================================  ===============

    The output prefactor is given by :func:`closed_form_shapes`.
    """
    _check_side(side)
    if side == LEFT and not derivative:
        return gamma_ratio(n + beta + 1, n + beta + mu + 1), alpha - mu, beta + mu
    if side == RIGHT and not derivative:
        return gamma_ratio(n + alpha + 1, n + alpha + mu + 1), alpha + mu, beta - mu
    if side == LEFT:
        return gamma_ratio(n + beta + 1, n + beta - mu + 1), alpha + mu, beta - mu
    return gamma_ratio(n + alpha + 1, n + alpha - mu + 1), alpha - mu, beta + mu


def closed_form_shapes(alpha, beta, mu, sigma, eta, side=LEFT, derivative=False):
    """(input, output) prefactor exponents as ((x_power, tail_power), (x_power, tail_power))."""
    _check_side(side)
    if side == LEFT and not derivative:
        e = sigma * (beta - eta)
        return (e, 0.0), (e, 0.0)
    if side == RIGHT and not derivative:
        return (sigma * (eta + mu), alpha), (sigma * eta, alpha + mu)
    if side == LEFT:
        e = sigma * (beta - eta - mu)
        return (e, 0.0), (e, 0.0)
    return (sigma * eta, alpha), (sigma * (eta + mu), alpha - mu)


def ek_jacobi_apply(n, alpha, beta, mu, sigma, eta, b, x, side=LEFT, derivative=False):
    """Evaluate the closed-form EK image of the canonical input shape at x."""
    scale, a_out, b_out = ek_jacobi_closed(n, alpha, beta, mu, side, derivative)
    _, (xp, tp) = closed_form_shapes(alpha, beta, mu, sigma, eta, side, derivative)
    return scale * np.asarray(mapped_form(n, a_out, b_out, sigma, b, x, xp, tp))


def ek_jmf_derivative(kind, n, jp, order=None):
    """EK derivative of a JMF in closed form, as (scale, output family).

    kind 1 (left derivative, shift eta):
        D[J_n^{(a,b,mu,s,eta)}] = Γ(n+b+1)/Γ(n+b-nu+1) J_n^{(a+nu, b-nu, mu, s, eta-nu)}
    kind 2 (right derivative, shift eta):
        D[J_n^{(a,b,s,eta)}]    = Γ(n+a+1)/Γ(n+a-nu+1) J_n^{(a-nu, b+nu, s, eta+nu)}

    ``order`` (nu) defaults to mu and may exceed 1.  For kind 1 with nu != mu
    the operator acts with shift eta + mu - nu, the unique shift under which
    the family's prefactor x^{s(b-eta-mu)} is the canonical input; the output
    keeps that prefactor.
    """
    if kind != jp.kind:
        raise ParameterError(f"kind {kind} does not match params of kind {jp.kind}")
    nu = jp.mu if order is None else order
    if nu <= 0:
        raise ParameterError(f"derivative order must be positive, got {nu}")
    a, bb = jp.alpha, jp.beta
    if kind == 1:
        if bb - nu <= -1:
            raise ParameterError(f"kind-1 EK derivative needs beta - nu > -1 (got {bb - nu:g})")
        scale = gamma_ratio(n + bb + 1, n + bb - nu + 1)
        out = JmfParams(a + nu, bb - nu, jp.mu, jp.sigma, jp.eta - nu, jp.b, 1)
        return scale, out
    if a - nu <= -1:
        raise ParameterError(f"kind-2 EK derivative needs alpha - nu > -1 (got {a - nu:g})")
    scale = gamma_ratio(n + a + 1, n + a - nu + 1)
    out = JmfParams(a - nu, bb + nu, jp.mu, jp.sigma, jp.eta + nu, jp.b, 2)
    return scale, out


def fsl_apply_closed(n, jp, x):
    """(w)^{-1} D[p D J_n] at x for the family's fractional Sturm-Liouville operator.

    Composes the closed forms: the inner EK derivative (left Caputo for
    kind 1, right Caputo for kind 2), multiplication by the coefficient p,
    the outer derivative on the opposite side, and division by the weight w.
    The result should equal Lambda_n J_n(x).  Returns (values, scale).
    """
    from .jmf import prefactor, sl_coefficients

    s1, inner = ek_jmf_derivative(jp.kind, n, jp)
    a, bb, mu, sg, eta = inner.alpha, inner.beta, jp.mu, jp.sigma, jp.eta
    if jp.kind == 1:
        # p * x^{s(beta-eta-mu)} = x^{s eta} (b^s - x^s)^{alpha+mu}: right-derivative shape
        s2, a_out, b_out = ek_jacobi_closed(n, a, bb, mu, RIGHT, derivative=True)
        _, (xp, tp) = closed_form_shapes(a, bb, mu, sg, eta, RIGHT, derivative=True)
    else:
        # p * x^{s(eta+mu)} (b^s - x^s)^{alpha-mu} = x^{s(beta-eta)}: left-derivative shape
        s2, a_out, b_out = ek_jacobi_closed(n, a, bb, mu, LEFT, derivative=True)
        _, (xp, tp) = closed_form_shapes(a, bb, mu, sg, eta, LEFT, derivative=True)
    outer = s1 * s2 * np.asarray(mapped_form(n, a_out, b_out, sg, jp.b, x, xp, tp))
    w, _ = sl_coefficients(jp, x)
    scale = s1 * s2
    # sanity: the outer shape divided by w is the original family member
    check = np.asarray(prefactor(jp, x)) * w
    if not np.allclose(check, np.asarray(mapped_form(0, a_out, b_out, sg, jp.b, x, xp, tp)),
                       rtol=1e-10, atol=0):
        raise ParameterError("closed-form chain did not return to the original family")
    return outer / w, scale
