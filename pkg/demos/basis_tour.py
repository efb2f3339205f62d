"""
A first look at Jacobi-Muntz functions
======================================

Build both JMF families, check their orthogonality with the matching
Gauss-Jacobi-Muntz rule, and watch the Sturm-Liouville eigenvalues grow
like n^(2 mu).
"""

import numpy as np

from jacobi_muntz.ek import fsl_apply_closed
from jacobi_muntz.jmf import JmfParams, eigen_growth, jmf_batch, jmf_eigenvalue, jmf_eval, jmf_norm
from jacobi_muntz.quadrature import gjmqr_rule

# kind 1 carries x^{sigma(beta-eta-mu)}; kind 2 carries x^{sigma eta} (b^sigma - x^sigma)^alpha
p1 = JmfParams(alpha=1.0, beta=2.0, mu=0.75, sigma=0.5, eta=0.5, b=1.0, kind=1)
p2 = p1.with_kind(2)

x = np.linspace(0, 1, 6)
print("J_3 of kind 1 on a coarse grid:", np.round(jmf_eval(3, p1, x), 5))
print("J_3 of kind 2 on a coarse grid:", np.round(jmf_eval(3, p2, x), 5))

# Gram matrices by quadrature: off-diagonal entries sit at roundoff
for p in (p1, p2):
    rule = gjmqr_rule(p.kind, 20, p)
    B = jmf_batch(10, p, rule.nodes)
    G = (B * rule.weights) @ B.T
    gam = np.array([jmf_norm(n, p) for n in range(11)])
    print(f"kind {p.kind}: max |G - diag(gamma)| / gamma = {np.max(np.abs(G - np.diag(gam)) / gam[:, None]):.1e}")

# the closed-form operator chain maps J_n to Lambda_n J_n
xi = np.linspace(0.1, 0.9, 5)
for n in (0, 3, 6):
    vals, lam = fsl_apply_closed(n, p1, xi)
    print(f"n={n}: Lambda_n = {lam:.6f}, chain/J_n = {np.round(vals / jmf_eval(n, p1, xi), 6)}")

# sub-quadratic growth
for n in (10, 100, 1000, 10_000):
    print(f"n={n:>6}: Lambda_n = {jmf_eigenvalue(1, n, p1):.4e}, Lambda_n / n^(2mu) = {eigen_growth(1, n, p1):.5f}")
