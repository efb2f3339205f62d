"""Small dense linear-algebra helpers.

LU solves and 2-norm condition numbers are thin wrappers over LAPACK (via
scipy/numpy).  The symmetric tridiagonal eigensolver used by the Golub-Welsch
quadrature construction is implemented here (implicit-shift QL) because it
only needs the first component of each eigenvector.
"""

import math
import warnings

import numpy as np
import scipy.linalg

from .errors import ConvergenceError, SingularMatrixError

PIVOT_FLOOR = 1e-300


class LUFactor:
    """LU factorization with partial pivoting, reusable for many right-hand sides."""

    def __init__(self, A):
        A = np.asarray(A, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {A.shape}")
        if not np.all(np.isfinite(A)):
            raise ValueError("matrix has non-finite entries")
        with warnings.catch_warnings():
            # exact zero pivots are reported below as SingularMatrixError
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            lu, piv = scipy.linalg.lu_factor(A, check_finite=False)
        pivots = np.abs(np.diag(lu))
        bad = np.flatnonzero(pivots < PIVOT_FLOOR)
        if bad.size:
            raise SingularMatrixError(
                f"matrix is singular: pivot {bad[0]} has magnitude {pivots[bad[0]]:.3g}")
        self.shape = A.shape
        self._lu = lu
        self._piv = piv

    def solve(self, rhs):
        rhs = np.asarray(rhs, dtype=float)
        if rhs.shape[0] != self.shape[0]:
            raise ValueError(f"rhs has {rhs.shape[0]} rows, matrix has {self.shape[0]}")
        return scipy.linalg.lu_solve((self._lu, self._piv), rhs, check_finite=False)


def lu_factor(A):
    return LUFactor(A)


def lu_solve(A, rhs):
    """Solve ``A x = rhs`` by Gaussian elimination with partial pivoting.

    ``rhs`` may be a vector or a matrix of stacked right-hand sides.  Raises
    SingularMatrixError if a pivot falls below 1e-300 in magnitude.
    """
    return LUFactor(A).solve(rhs)


def condition_number(A):
    """2-norm condition number sigma_max / sigma_min; ``inf`` if singular."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    s = np.linalg.svd(A, compute_uv=False)
    if s[-1] == 0.0 or not np.isfinite(s[0]):
        return math.inf
    return float(s[0] / s[-1])


def symtridiag_eigen(diag, offdiag, max_iter_factor=30):
    """Eigenvalues and eigenvector first components of a symmetric tridiagonal matrix.

    Implicit-shift QL iteration (Wilkinson-type shift).  Only the first row
    of the accumulated rotation matrix is tracked, which is all that the
    Golub-Welsch weights need.

    Returns ``(eigenvalues, first)`` with eigenvalues ascending and ``first[i]``
    the first component of the unit eigenvector for ``eigenvalues[i]``.
    """
    d = [float(v) for v in diag]
    n = len(d)
    if n == 0:
        raise ValueError("empty matrix")
    if len(offdiag) != n - 1:
        raise ValueError(f"offdiag must have length {n - 1}, got {len(offdiag)}")
    e = [float(v) for v in offdiag] + [0.0]
    z = [0.0] * n
    z[0] = 1.0

    eps = np.finfo(float).eps
    cap = max_iter_factor * n
    iterations = 0
    for l in range(n):
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            iterations += 1
            if iterations > cap:
                raise ConvergenceError(
                    f"QL iteration did not converge for eigenvalue {l}", index=l)
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            deflated = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0

    order = sorted(range(n), key=d.__getitem__)
    return np.array([d[i] for i in order]), np.array([z[i] for i in order])
