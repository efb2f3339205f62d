"""
Spectral convergence for viscous Burgers' equation
==================================================

Method of lines with second-kind JMFs in space and Dormand-Prince in
time.  The manufactured solution behaves like x near the origin and
like sqrt(1-x) near the right end, both built into the basis, so the
error falls exponentially with n.  A short final time keeps this quick;
the explicit step size is bounded by the diffusion stiffness, which
grows fast with n.
"""

import time
import warnings

import numpy as np

from jacobi_muntz.jmf import JmfParams
from jacobi_muntz.solvers import burgers_sweep

warnings.simplefilter("ignore")  # this set lies outside the eigenproblem range, harmless here

p = JmfParams(alpha=0.5, beta=2.0, mu=0.5, sigma=0.5, eta=2.0, kind=2)
t0 = time.perf_counter()
rows = burgers_sweep(1, [4, 6, 8], p, epsilon=0.1, T=1.0)
for n, e2, einf in rows:
    print(f"n={n:2d}  E2={e2:.2e}  Einf={einf:.2e}")
slope = np.polyfit([r[0] for r in rows], np.log([r[2] for r in rows]), 1)[0]
print(f"slope of log Einf vs n: {slope:.2f}   ({time.perf_counter() - t0:.1f} s)")
