import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from jacobi_muntz.errors import IntegrationError, NonFiniteError
from jacobi_muntz.ivp import IvpProblem, dp54_integrate


def test_exponential_decay():
    traj = dp54_integrate(IvpProblem(lambda t, y: -y, 0.0, 2.0, [1.0]))
    assert traj.times[-1] == 2.0
    assert traj.final[0] == pytest.approx(math.exp(-2), rel=1e-10)
    assert traj.states.shape == (len(traj.times), 1)


def test_quartic_exact():
    traj = dp54_integrate(IvpProblem(lambda t, y: 5 * t ** 4 + 0 * y, 0.0, 1.0, [0.0]))
    assert traj.final[0] == pytest.approx(1.0, abs=1e-13)


def test_local_order_five():
    # one forced step: local error behaves like h^6
    def rhs(t, y):
        return y * np.cos(t)
    errs = []
    hs = [0.2, 0.1, 0.05]
    for h in hs:
        traj = dp54_integrate(IvpProblem(rhs, 0.0, h, [1.0]), rtol=1.0, atol=1.0, h0=h)
        assert len(traj.times) == 2
        errs.append(abs(traj.final[0] - math.exp(math.sin(h))))
    slope = np.polyfit(np.log(hs), np.log(errs), 1)[0]
    assert 5.5 < slope < 6.8


def test_rejection_recovery():
    # stiff relaxation toward cos t: forces rejected steps; the retry must reuse
    # the derivative at the accepted point, not a stage left over from the rejected one
    lam = 1000.0

    def rhs(t, y):
        return -lam * (y - np.cos(t))

    def exact(t):
        c = (lam * lam * np.cos(t) + lam * np.sin(t)) / (lam * lam + 1)
        return c + (1 - lam * lam / (lam * lam + 1)) * np.exp(-lam * t)
    traj = dp54_integrate(IvpProblem(rhs, 0.0, 2.0, [1.0]), rtol=1e-10, atol=1e-12)
    assert traj.n_rejected > 0
    assert abs(traj.final[0] - exact(2.0)) < 1e-9


def test_matches_scipy_van_der_pol():
    def rhs(t, y):
        return np.array([y[1], (1 - y[0] ** 2) * y[1] - y[0]])
    ours = dp54_integrate(IvpProblem(rhs, 0.0, 5.0, [2.0, 0.0]), rtol=1e-12, atol=1e-12)
    ref = solve_ivp(rhs, (0, 5), [2.0, 0.0], method="DOP853", rtol=1e-13, atol=1e-14)
    assert np.allclose(ours.final, ref.y[:, -1], atol=1e-9)


def test_errors():
    with pytest.raises(ValueError):
        IvpProblem(lambda t, y: y, 1.0, 1.0, [1.0])
    with pytest.raises(ValueError):
        dp54_integrate(IvpProblem(lambda t, y: y, 0.0, 1.0, [1.0]), rtol=1e-16)
    with pytest.raises(IntegrationError):
        dp54_integrate(IvpProblem(lambda t, y: -y, 0.0, 10.0, [1.0]), max_steps=3)
    with pytest.raises(NonFiniteError):
        dp54_integrate(IvpProblem(lambda t, y: y * np.nan, 0.0, 1.0, [1.0]))
    # finite-time blow-up of y' = y^2 at t = 1
    with pytest.raises((IntegrationError, NonFiniteError)):
        dp54_integrate(IvpProblem(lambda t, y: y * y, 0.0, 2.0, [1.0]), rtol=1e-8, atol=1e-8)
