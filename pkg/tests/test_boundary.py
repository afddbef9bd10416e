import math

import numpy as np
import pytest
from scipy.optimize import brentq

from gasjunction.boundary import (
    Regime,
    Region,
    boundary_trace,
    boundary_traces,
    landmarks,
    r_star,
    r_star_gradient,
    rest_density_on_reversed_2,
)
from gasjunction.errors import DomainError
from gasjunction.gas import FlowRegime, GasLaw, State, classify, eigenvalues
from gasjunction.waves import forward_curve, reversed_curve, sample, solve_riemann, shock_jump

LAWS = [GasLaw(5.0, 2.0), GasLaw(1.0, 1.4), GasLaw(0.7, 1.2), GasLaw(2.0, 2.8)]


@pytest.mark.parametrize("law", LAWS, ids=lambda l: f"g{l.gamma}")
@pytest.mark.parametrize("rho_t", [0.01, 1.0, 7.5])
def test_landmarks(law, rho_t):
    alpha, beta = landmarks(law, rho_t)
    g, k = law.gamma, law.kappa
    expected = math.sqrt(g * k) * (2 / (g + 1)) ** ((g + 1) / (g - 1)) * rho_t ** ((g + 1) / 2)
    assert alpha.momentum == pytest.approx(expected, rel=1e-13)
    assert eigenvalues(law, alpha)[0] == pytest.approx(0.0, abs=1e-12 * alpha.u)
    assert forward_curve(law, 1, State(rho_t, 0.0), alpha.rho) == pytest.approx(alpha.u, rel=1e-12)
    assert abs(eigenvalues(law, beta)[1]) <= 1e-10 * (1 + abs(beta.u))
    assert beta.rho > rho_t
    assert forward_curve(law, 1, State(rho_t, 0.0), beta.rho) == pytest.approx(beta.u, abs=1e-10 * (1 + abs(beta.u)))


def test_landmarks_vacuum(shallow):
    assert landmarks(shallow, 0.0) == (State(0.0), State(0.0))
    a, b = landmarks(shallow, 1e-12)
    assert a.rho < 1e-11 and b.rho < 1e-10
    with pytest.raises(DomainError):
        landmarks(shallow, -1.0)


def test_unperturbed_and_alpha_cases(shallow):
    bt = boundary_trace(shallow, State(1.3, 0.0), 1.3)
    assert bt.trace == State(1.3, 0.0) and bt.regime is Regime.UNPERTURBED
    # strongly outgoing data: the 1-fan of the rest state straddles x = 0
    bt = boundary_trace(shallow, State(0.5, 5.0), 1.0)
    alpha, _ = landmarks(shallow, 1.0)
    assert bt.region is Region.A and bt.regime is Regime.SONIC1_EXIT
    assert bt.trace.rho == pytest.approx(alpha.rho, rel=1e-12)
    assert bt.trace.u == pytest.approx(alpha.u, rel=1e-12)


def test_trace_is_fan_sample(shallow):
    bt = boundary_trace(shallow, State(1.0, -1.0), 1.0)
    ref = sample(solve_riemann(shallow, State(1.0, 0.0), State(1.0, -1.0)), 0.0)
    assert bt.trace == ref


def test_supersonic_incoming_data_is_kept(shallow):
    s = State(1.0, -8.0)
    bt = boundary_trace(shallow, s, 0.5)
    assert bt.region is Region.C
    assert bt.trace == s


def test_r_star_examples(shallow):
    for rho in (0.1, 1.0, 3.3):
        assert r_star(shallow, State(rho, 0.0)) == pytest.approx(rho, rel=1e-15)
    a = r_star(shallow, State(1.1776, -0.46000))
    b = r_star(shallow, State(0.9346, 0.28975))
    assert a == pytest.approx(1.0253, abs=2e-3)
    assert b == pytest.approx(1.0253, abs=2e-3)
    with pytest.raises(DomainError):
        r_star(shallow, State(0.0))


@pytest.mark.parametrize("law", LAWS, ids=lambda l: f"g{l.gamma}")
def test_r_star_monotone_along_reversed_2(law, rng):
    for _ in range(50):
        s = State(rng.uniform(0.2, 5), rng.uniform(-1, 1))
        rho0 = s.rho * rng.uniform(0.7, 1.3)
        h = 1e-6 * rho0

        def along(r):
            return r_star(law, State(r, reversed_curve(law, 2, s, r)))

        assert along(rho0 + h) > along(rho0 - h)


@pytest.mark.parametrize("law", LAWS, ids=lambda l: f"g{l.gamma}")
def test_r_star_gradient_matches_fd(law, rng):
    for _ in range(40):
        s = State(rng.uniform(0.2, 5), rng.uniform(-1.5, 1.5))
        g_rho, g_u = r_star_gradient(law, s)
        h_r, h_u = 1e-6 * s.rho, 1e-6 * (1 + abs(s.u))
        fd_rho = (r_star(law, State(s.rho + h_r, s.u)) - r_star(law, State(s.rho - h_r, s.u))) / (2 * h_r)
        fd_u = (r_star(law, State(s.rho, s.u + h_u)) - r_star(law, State(s.rho, s.u - h_u))) / (2 * h_u)
        assert g_rho == pytest.approx(fd_rho, rel=1e-6)
        assert g_u == pytest.approx(fd_u, rel=1e-6)


def test_rest_density_on_reversed_2(shallow):
    for s in (State(1.0, -1.0), State(2.0, 0.7), State(0.4, 0.0)):
        r = rest_density_on_reversed_2(shallow, s)
        assert reversed_curve(shallow, 2, s, r) == pytest.approx(0.0, abs=1e-12)
    assert rest_density_on_reversed_2(shallow, State(0.1, 5.0)) == 0.0


def test_region_consistency_ensemble(rng):
    """Both classifications agree (a disagreement raises); the trace never has
    an outgoing 1-characteristic; r_star inverts subsonic traces."""
    n = 0
    for law in LAWS:
        for _ in range(1000):
            s = State(rng.uniform(0.0, 6.0), rng.uniform(-8.0, 8.0))
            rho_t = rng.uniform(0.0, 6.0)
            bt = boundary_trace(law, s, rho_t)
            assert eigenvalues(law, bt.trace)[0] <= 1e-9 * (1 + abs(bt.trace.u))
            if bt.regime is Regime.SUBSONIC and bt.region is Region.B:
                assert r_star(law, bt.trace) == pytest.approx(rho_t, rel=1e-8)
                n += 1
    assert n > 400


def test_vectorised_traces_match_scalar(air, rng):
    rho_hat = rng.uniform(0.0, 4.0, 200)
    u_hat = np.where(rho_hat > 0, rng.uniform(-5, 5, 200), 0.0)
    for rho_t in (0.0, 0.3, 1.7):
        r, u = boundary_traces(air, rho_t, rho_hat, u_hat)
        for i in range(200):
            t = boundary_trace(air, State(rho_hat[i], u_hat[i]), rho_t).trace
            assert r[i] == pytest.approx(t.rho, rel=1e-10, abs=1e-13)
            assert r[i] * u[i] == pytest.approx(t.momentum, rel=1e-9, abs=1e-12)


def test_momentum_continuous_across_zero_speed_shock(shallow):
    data = State(1.0, -5.0)  # supersonic towards the junction

    def speed(rho_t):
        return solve_riemann(shallow, State(rho_t, 0.0), data).wave2.speed

    rho_j = brentq(speed, 0.5, 1.0, xtol=1e-15)
    below = boundary_trace(shallow, data, rho_j * (1 - 1e-9))
    above = boundary_trace(shallow, data, rho_j * (1 + 1e-9))
    assert below.trace.rho != pytest.approx(above.trace.rho, rel=1e-3)
    assert below.trace.momentum == pytest.approx(above.trace.momentum, abs=1e-6)
    at = boundary_trace(shallow, data, rho_j)
    assert at.region in (Region.J, Region.B, Region.C)
