import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from jacobi_muntz.ek import (LEFT, RIGHT, default_nodes, ek_caputo_numeric, ek_int_numeric,
                             ek_jacobi_apply, ek_jacobi_closed, ek_jmf_derivative,
                             ek_monomial_closed, fsl_apply_closed)
from jacobi_muntz.errors import DomainError, ParameterError
from jacobi_muntz.jmf import JmfParams, jmf_eigenvalue, jmf_eval, jmf_ordinary_deriv, mapped_form
from jacobi_muntz.orthopoly import gamma_fn, gamma_ratio

XS = np.linspace(0.05, 0.95, 10)


def vec(fun, **kw):
    """Wrap a numeric EK operator so it accepts arrays of any shape."""
    def g(t):
        t = np.asarray(t, dtype=float)
        return np.asarray(fun(x=t.ravel(), **kw)).reshape(t.shape)
    return g


def test_constant_reduction():
    assert ek_int_numeric(lambda t: np.ones_like(t), 0.7, 1.0, 1.0, 0.0) == pytest.approx(1.0)


def test_mu_one_reduction():
    # mu = 1, sigma = 1, eta = 0: (1/x) ∫_0^x f
    x = np.array([0.2, 0.5, 0.9])
    got = ek_int_numeric(np.cos, x, 1.0, 1.0, 0.0)
    assert np.allclose(got, np.sin(x) / x, rtol=1e-10, atol=0)


@pytest.mark.parametrize("p,mu,sigma,eta", [(1.5, 0.5, 0.5, -0.3), (0.0, 1.3, 1.0, 0.2),
                                            (3.0, 0.7, 0.5, 2.0), (2.2, 2.5, 0.25, -1.0)])
def test_monomial_integral_numeric(p, mu, sigma, eta):
    scale = ek_monomial_closed(p, mu, sigma, eta)
    assert scale == pytest.approx(gamma_ratio(p / sigma + eta + 1, p / sigma + eta + 1 + mu))
    got = ek_int_numeric(lambda t: t ** p, XS, mu, sigma, eta, lead=p)
    assert np.allclose(got, scale * XS ** p, rtol=1e-10, atol=0)


def test_monomial_closed_examples():
    mu, eta = 0.6, 0.4
    assert ek_monomial_closed(0.0, mu, 0.5, eta, derivative=True) == pytest.approx(
        gamma_fn(eta + mu + 1) / gamma_fn(eta + 1))
    assert ek_monomial_closed(2.0, 1.0, 1.0, 0.0) == pytest.approx(1 / 3)
    # example scale used by the steady solver: nu = 3, sigma = 0.5, mu = 1.5, eta = -3
    assert ek_monomial_closed(1.5, 1.5, 0.5, -3.0, derivative=True) == pytest.approx(
        gamma_fn(2.5) / gamma_fn(1.0))


@settings(max_examples=20, deadline=None)
@given(p=st.floats(0, 4), mu1=st.floats(0.1, 2), mu2=st.floats(0.1, 2),
       sigma=st.floats(0.2, 2), eta=st.floats(-0.5, 2))
def test_semigroup_scales(p, mu1, mu2, sigma, eta):
    inner = ek_monomial_closed(p, mu2, sigma, eta + mu1)
    outer = ek_monomial_closed(p, mu1, sigma, eta)
    both = ek_monomial_closed(p, mu1 + mu2, sigma, eta)
    assert inner * outer == pytest.approx(both, rel=1e-12)


@settings(max_examples=20, deadline=None)
@given(p=st.floats(0, 4), mu=st.floats(0.1, 2), sigma=st.floats(0.2, 2), eta=st.floats(-0.5, 2))
def test_left_inverse_scales(p, mu, sigma, eta):
    prod = ek_monomial_closed(p, mu, sigma, eta) * ek_monomial_closed(p, mu, sigma, eta, True)
    assert prod == pytest.approx(1.0, rel=1e-12)


def semigroup_numeric_error(mu1=0.4, mu2=0.7, sigma=0.5, eta=0.3):
    def f(t):
        return np.sin(t ** sigma)
    inner = vec(ek_int_numeric, f=f, mu=mu2, sigma=sigma, eta=eta + mu1, lead=sigma)
    composed = ek_int_numeric(inner, XS, mu1, sigma, eta, lead=sigma)
    direct = ek_int_numeric(f, XS, mu1 + mu2, sigma, eta, lead=sigma)
    return float(np.max(np.abs(composed - direct)))


def left_inverse_numeric_error(mu=0.6, sigma=0.5, eta=0.3):
    def f(t):
        return np.sin(t ** sigma)

    def fp(t):
        return sigma * t ** (sigma - 1) * np.cos(t ** sigma)

    g = vec(ek_int_numeric, f=f, mu=mu, sigma=sigma, eta=eta, lead=sigma)
    # d/dx I_{eta,mu}[f] = I_{eta+1/sigma,mu}[f'] (differentiate under the substituted integral)
    gp = vec(ek_int_numeric, f=fp, mu=mu, sigma=sigma, eta=eta + 1 / sigma, lead=sigma - 1)
    back = ek_caputo_numeric(g, gp, XS, mu, sigma, eta, lead=sigma)
    return float(np.max(np.abs(back - f(XS))))


def ibp_sides(mu=0.6, sigma=0.5, eta=0.5, p=1.5, q=2.0, b=1.0):
    """Both sides of the fractional integration-by-parts identity.

    f = x^p (left RL derivative in closed form), g = x^{sigma eta} (b^s - x^s)^q
    (right Caputo derivative numerically).  Boundary terms vanish: g(b) = 0 and
    x^s g(x) I[f](x) -> 0 at x = 0.
    """
    bs = b ** sigma
    dscale = ek_monomial_closed(p, mu, sigma, eta, derivative=True)

    def g(x):
        return x ** (sigma * eta) * (bs - x ** sigma) ** q

    def gp(x):
        return (sigma * eta * x ** (sigma * eta - 1) * (bs - x ** sigma) ** q
                - q * sigma * x ** (sigma * eta + sigma - 1) * (bs - x ** sigma) ** (q - 1))

    lhs, _ = integrate.quad(lambda x: x ** (sigma - 1) * g(x) * dscale * x ** p, 0, b,
                            epsabs=0, epsrel=1e-12, limit=200)

    def rhs_integrand(x):
        d = ek_caputo_numeric(g, gp, x, mu, sigma, eta, b=b, side=RIGHT, tail=q)
        return x ** (sigma - 1) * x ** p * d

    rhs, _ = integrate.quad(rhs_integrand, 0, b, epsabs=0, epsrel=1e-11, limit=200)
    return lhs, rhs


def test_semigroup_numeric():
    assert semigroup_numeric_error() < 1e-7


def test_left_inverse_numeric():
    assert left_inverse_numeric_error() < 1e-8


def test_integration_by_parts():
    lhs, rhs = ibp_sides()
    assert rhs == pytest.approx(lhs, rel=1e-7)


def test_caputo_constant():
    sigma, eta, mu = 0.5, 0.4, 0.5
    got = ek_caputo_numeric(lambda t: np.ones_like(t), lambda t: np.zeros_like(t), XS, mu, sigma,
                            eta)
    assert np.allclose(got, gamma_fn(eta + mu + 1) / gamma_fn(eta + 1), rtol=1e-12, atol=0)


@pytest.mark.parametrize("mu", [0.3, 0.7])
def test_caputo_monomial(mu):
    sigma, eta, p = 0.5, 0.2, 1.5
    got = ek_caputo_numeric(lambda t: t ** p, lambda t: p * t ** (p - 1), XS, mu, sigma, eta,
                            lead=p)
    scale = ek_monomial_closed(p, mu, sigma, eta, derivative=True)
    assert np.allclose(got, scale * XS ** p, rtol=1e-8, atol=0)


def test_caputo_order_range():
    with pytest.raises(DomainError):
        ek_caputo_numeric(np.sin, np.cos, 0.5, 1.2, 1.0, 0.0)


def test_domain_checks():
    with pytest.raises(DomainError):
        ek_int_numeric(np.sin, -0.1, 0.5, 1.0, 0.0)
    with pytest.raises(DomainError):
        ek_int_numeric(np.sin, 1.0, 0.5, 1.0, 0.0, b=1.0, side=RIGHT)
    with pytest.raises(DomainError):
        ek_int_numeric(np.sin, 0.5, 0.0, 1.0, 0.0)


def test_node_override(monkeypatch):
    monkeypatch.setenv("MUNTZ_QUAD_NODES", "12")
    assert default_nodes() == 12
    monkeypatch.setenv("MUNTZ_QUAD_NODES", "zero")
    with pytest.raises(ParameterError):
        default_nodes()


def test_jacobi_closed_left_derivative_n0():
    a, b, mu = 0.5, 1.5, 0.4
    scale, ao, bo = ek_jacobi_closed(0, a, b, mu, LEFT, derivative=True)
    assert scale == pytest.approx(gamma_fn(b + 1) / gamma_fn(b - mu + 1))
    assert (ao, bo) == pytest.approx((a + mu, b - mu))


def test_jacobi_closed_left_integral_elementary():
    # n = 0, mu = 1, sigma = 1, eta = 0: (1/x)∫ t^beta = x^beta / (beta + 1)
    beta = 1.7
    scale, _, _ = ek_jacobi_closed(0, 0.3, beta, 1.0, LEFT)
    assert scale == pytest.approx(1 / (beta + 1))


@pytest.mark.parametrize("n", range(7))
def test_left_integral_closed_vs_numeric(n):
    a, b, mu, sigma, eta, bb = 0.5, 1.5, 0.5, 0.5, 0.2, 1.0
    lead = sigma * (b - eta)

    def f(t):
        return mapped_form(n, a, b, sigma, bb, t, lead)

    got = ek_int_numeric(f, XS, mu, sigma, eta, lead=lead)
    ref = ek_jacobi_apply(n, a, b, mu, sigma, eta, bb, XS, LEFT)
    assert np.allclose(got, ref, rtol=0, atol=1e-9 * max(1, np.abs(ref).max()))


@pytest.mark.parametrize("n", [0, 2, 5])
def test_right_integral_closed_vs_numeric(n):
    a, b, mu, sigma, eta, bb = 0.5, 1.5, 0.5, 0.5, 0.7, 1.0

    def f(t):
        return mapped_form(n, a, b, sigma, bb, t, sigma * (eta + mu), a)

    got = ek_int_numeric(f, XS, mu, sigma, eta, b=bb, side=RIGHT, tail=a)
    ref = ek_jacobi_apply(n, a, b, mu, sigma, eta, bb, XS, RIGHT)
    assert np.allclose(got, ref, rtol=0, atol=1e-8 * max(1, np.abs(ref).max()))


@pytest.mark.parametrize("n", [0, 1, 4])
def test_kind1_derivative_vs_numeric(n):
    p = JmfParams(1.0, 2.0, 0.75, 0.5, 0.5, 1.0, 1)
    scale, out = ek_jmf_derivative(1, n, p)
    assert out.prefactor_power == pytest.approx(p.prefactor_power)
    got = ek_caputo_numeric(lambda t: jmf_eval(n, p, t), lambda t: jmf_ordinary_deriv(n, p, t),
                            XS, p.mu, p.sigma, p.eta, lead=p.prefactor_power)
    ref = scale * jmf_eval(n, out, XS)
    assert np.allclose(got, ref, rtol=0, atol=1e-8 * np.abs(ref).max())


def test_kind1_derivative_n0_scale():
    p = JmfParams(0.5, 1.5, 0.5, 0.5, -3.0, 1.0, 1)
    scale, out = ek_jmf_derivative(1, 0, p)
    assert scale == pytest.approx(gamma_fn(2.5) / gamma_fn(2.0))
    assert out.sigma * (out.beta - out.eta - out.mu) == pytest.approx(p.prefactor_power)


def test_kind2_derivative_vs_numeric():
    p = JmfParams(1.5, 1.0, 0.5, 0.5, 0.5, 1.0, 2)
    n = 3
    scale, out = ek_jmf_derivative(2, n, p)
    got = ek_caputo_numeric(lambda t: jmf_eval(n, p, t), lambda t: jmf_ordinary_deriv(n, p, t),
                            XS, p.mu, p.sigma, p.eta, b=p.b, side=RIGHT, tail=p.alpha)
    ref = scale * jmf_eval(n, out, XS)
    assert np.allclose(got, ref, rtol=0, atol=1e-8 * np.abs(ref).max())


def test_derivative_parameter_errors():
    with pytest.raises(ParameterError):
        ek_jmf_derivative(2, 0, JmfParams(0.5, 1.5, 0.5, 0.5, 0.5, 1.0, 1))
    with pytest.raises(ParameterError):
        ek_jmf_derivative(1, 0, JmfParams(0.5, 0.2, 1.5, 0.5, -3, 1.0, 1))


@pytest.mark.parametrize("kind", [1, 2])
def test_eigenrelation_chain(kind):
    p = JmfParams(1.0, 2.0, 0.75, 0.5, 0.5, 1.0, kind)
    for n in range(9):
        vals, scale = fsl_apply_closed(n, p, XS)
        lam = jmf_eigenvalue(kind, n, p)
        assert scale == pytest.approx(lam, rel=1e-13)
        ref = lam * jmf_eval(n, p, XS)
        assert np.allclose(vals, ref, rtol=1e-8, atol=0)


def test_eigenvalue_mu_one():
    p = JmfParams(0.5, 1.5, 1.0, 1.0, 0.0, 1.0, 1)
    for n in range(5):
        assert jmf_eigenvalue(1, n, p) == pytest.approx((n + p.beta) * (n + p.alpha + 1))
    assert math.isfinite(jmf_eigenvalue(2, 10_000, p))
