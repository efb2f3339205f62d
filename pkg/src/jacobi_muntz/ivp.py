"""Adaptive Dormand-Prince 5(4) integrator for method-of-lines systems."""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import IntegrationError, NonFiniteError

# Dormand-Prince tableau
C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
A = [np.array(row) for row in [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]]
B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
               187 / 2100, 1 / 40])
E = B5 - B4

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0
RTOL_FLOOR = 1e-13
ATOL_FLOOR = 1e-14


@dataclass
class IvpProblem:
    rhs: Callable
    t0: float
    tf: float
    y0: np.ndarray

    def __post_init__(self):
        if not self.tf > self.t0:
            raise ValueError(f"need tf > t0, got [{self.t0}, {self.tf}]")
        self.y0 = np.atleast_1d(np.asarray(self.y0, dtype=float))


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray = field(repr=False)
    n_rhs: int = 0
    n_rejected: int = 0

    @property
    def final(self):
        return self.states[-1]


def _rhs(fun, t, y):
    dy = np.asarray(fun(t, y), dtype=float)
    if not np.isfinite(dy).all():
        raise NonFiniteError(f"right-hand side is not finite at t={t}")
    return dy


def _initial_step(fun, t0, y0, f0, tf, rtol, atol):
    # Hairer, Norsett & Wanner, Solving ODEs I, II.4
    scale = atol + rtol * np.abs(y0)
    d0 = np.linalg.norm(y0 / scale) / np.sqrt(y0.size)
    d1 = np.linalg.norm(f0 / scale) / np.sqrt(y0.size)
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h0 = min(h0, tf - t0)
    y1 = y0 + h0 * f0
    f1 = _rhs(fun, t0 + h0, y1)
    d2 = np.linalg.norm((f1 - f0) / scale) / np.sqrt(y0.size) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1 / 5)
    return min(100 * h0, h1, tf - t0)


def dp54_integrate(prob, rtol=1e-12, atol=1e-12, max_steps=1_000_000, h0=None):
    """Integrate ``prob`` from t0 to tf with error control.

    A step is accepted when every component of the embedded error estimate is
    below atol + rtol * max(|y_n|, |y_{n+1}|).  The last step is clamped so the
    trajectory ends exactly at tf.  Returns every accepted step.
    """
    if rtol < RTOL_FLOOR or atol < ATOL_FLOOR:
        raise ValueError(
            f"tolerances below double-precision reach (rtol >= {RTOL_FLOOR}, atol >= {ATOL_FLOOR})")
    fun = prob.rhs
    t, tf = float(prob.t0), float(prob.tf)
    y = prob.y0.copy()
    f = _rhs(fun, t, y)
    n_rhs = 1
    h = h0 if h0 is not None else _initial_step(fun, t, y, f, tf, rtol, atol)
    n_rhs += 1

    times = [t]
    states = [y.copy()]
    K = np.empty((7, y.size))
    c = [float(v) for v in C]
    dot = np.dot  # small systems: call overhead dominates, np.dot is the cheapest entry
    abs_y = np.abs(y)
    rejected = 0
    steps = 0
    eps = np.finfo(float).eps
    while t < tf:
        if steps >= max_steps:
            raise IntegrationError(f"step limit {max_steps} reached at t={t}")
        h_min = 16 * eps * max(abs(t), 1.0)
        if h < h_min:
            raise IntegrationError(f"step size underflow at t={t} (problem may be stiff)")
        last = t + h >= tf
        if last:
            h = tf - t
        K[0] = f
        for i in range(1, 7):
            # finiteness is checked once per step through err_norm
            K[i] = fun(t + c[i] * h, y + h * dot(A[i], K[:i]))
        n_rhs += 6
        y_new = y + h * dot(B5, K)
        abs_new = np.abs(y_new)
        scale = atol + rtol * np.maximum(abs_y, abs_new)
        err_norm = h * (np.abs(dot(E, K)) / scale).max()
        if not np.isfinite(err_norm):
            raise NonFiniteError(f"right-hand side is not finite near t={t}")
        steps += 1
        if err_norm <= 1.0:
            t = tf if last else t + h
            y, abs_y = y_new, abs_new
            f = K[6].copy()  # first-same-as-last; K is overwritten next step
            times.append(t)
            states.append(y)
            factor = MAX_FACTOR if err_norm == 0 else min(
                MAX_FACTOR, SAFETY * err_norm ** -0.2)
        else:
            rejected += 1
            factor = max(MIN_FACTOR, SAFETY * err_norm ** -0.2)
        h *= factor
    return Trajectory(np.array(times), np.array(states), n_rhs, rejected)
