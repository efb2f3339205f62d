"""
Collocation for a fractional ODE with a singular solution
=========================================================

Solve D^mu y + y = f on [0, 1] with mu = 1.5, where the exact solution
x^1.5 + 7 x^3 is not smooth at the origin.  JMFs of the first kind
contain that behaviour, so the error drops to roundoff as soon as the
solution lies in the trial space.  Raw Muntz monomials span the same
space but give a far worse conditioned system.
"""

import warnings

import numpy as np

from jacobi_muntz.jmf import JmfParams
from jacobi_muntz.solvers import (ExperimentConfig, MuntzBasis, diffusion_example, example_terms,
                                  manufactured_rhs, monomial_exact, solve_fractional_diffusion,
                                  solve_muntz_monomial_ode, solve_steady_ode)

warnings.simplefilter("ignore")  # this parameter set sits on a soft constraint boundary

p = JmfParams(alpha=0.5, beta=1.5, mu=1.5, sigma=0.5, eta=-3.0)
terms = example_terms(p, nu=3.0)
cfg = ExperimentConfig(K1=1.0, K2=1.0)
cfg.s = manufactured_rhs(terms, cfg, p)
exact = monomial_exact(terms)

print(" n   max error   cond(JMF)   cond(Muntz)")
for n in (2, 3, 5, 10, 20, 40):
    r = solve_steady_ode(cfg, n, p)
    m = solve_muntz_monomial_ode(cfg, n, MuntzBasis.from_params(n, p), p)
    err = np.max(np.abs(r.values - exact(r.nodes)))
    print(f"{n:2d}   {err:9.2e}   {r.cond:9.2e}   {m.cond:9.2e}")

# the time-dependent version: u_t = d(x,t) D^mu u + s with u = x^3.5 sin(t^2)
q = JmfParams(alpha=0.5, beta=3.5, mu=1.5, sigma=0.5, eta=-1.0)
res = solve_fractional_diffusion(diffusion_example(q, nu=7.0, T=5.0), 10, q)
print(f"\ndiffusion, n=10, T=5: max nodal error {res.max_error:.2e} after {res.n_rhs} rhs calls")
