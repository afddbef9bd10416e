import math

import numpy as np
import pytest
from scipy.optimize import root

from gasjunction.errors import DomainError
from gasjunction.euler import (
    GaussianMixture,
    competitor_entropy_flux,
    euler_entropy_check,
    exact_half_moment,
    gaussian_half_moments,
    inflow_moments,
    matched_competitor,
    solve_euler_junction,
)
from gasjunction.quadrature import gauss_legendre


def _random_inflows(rng, d):
    comps = []
    for _ in range(d):
        k = int(rng.integers(1, 3))
        comps.append(GaussianMixture(tuple((rng.uniform(0.2, 2), rng.uniform(-1.5, 1.0), rng.uniform(0.3, 3))
                                           for _ in range(k))))
    return comps


def test_half_moments():
    assert gaussian_half_moments(0.0, 1.0) == (0.0, 0.0)
    m1, m3 = gaussian_half_moments(1.0, 1.0)
    g = GaussianMixture(((1.0, 0.0, 1.0),), incoming=False)
    assert m1 == pytest.approx(gauss_legendre(lambda x: x * g(x), 0, 12, panels=24), rel=1e-10)
    assert m3 == pytest.approx(g.moment(3), rel=1e-10)
    for rho, theta in [(0.3, 0.2), (2.0, 5.0)]:
        m1, m3 = gaussian_half_moments(rho, theta)
        assert m3 / m1 == pytest.approx(2 * theta, rel=1e-14)
    with pytest.raises(DomainError):
        gaussian_half_moments(1.0, 0.0)


@pytest.mark.parametrize("n", [0, 1, 3])
def test_exact_half_moment_matches_quadrature(n):
    for rho, u, theta in [(1.0, -0.4, 0.7), (0.5, 1.2, 2.0)]:
        g = GaussianMixture(((rho, u, theta),), incoming=True)
        assert exact_half_moment(rho, u, theta, n, True) == pytest.approx(g.moment(n), rel=1e-10)


def test_single_pipe_rest_maxwellian():
    res = solve_euler_junction([1.0], [GaussianMixture(((1.0, 0.0, 1.0),))])
    assert res.rho_star == pytest.approx(1.0, rel=1e-12)
    assert res.theta_star == pytest.approx(1.0, rel=1e-12)
    assert abs(res.entropy_flux_sum) <= 1e-10


def test_zero_inflow():
    res = solve_euler_junction([1.0, 1.0], [GaussianMixture(()), GaussianMixture(((0.0, 0.0, 1.0),))])
    assert res.rho_star == 0.0 and res.theta_star is None


def test_random_inflows_against_newton_oracle(rng):
    for _ in range(20):
        d = int(rng.integers(1, 4))
        areas = list(rng.uniform(0.5, 2, d))
        inc = _random_inflows(rng, d)
        res = solve_euler_junction(areas, inc)
        f1, f3 = inflow_moments(areas, inc)
        total = sum(areas)

        def balance(x):
            m1, m3 = gaussian_half_moments(abs(x[0]), abs(x[1]))
            return [total * m1 / f1 - 1.0, total * m3 / f3 - 1.0]

        sol = root(balance, [1.0, 1.0], method="lm", options={"xtol": 1e-15, "ftol": 1e-15})
        assert max(abs(r) for r in balance(sol.x)) <= 1e-13
        assert res.rho_star == pytest.approx(abs(sol.x[0]), rel=1e-10)
        assert res.theta_star == pytest.approx(abs(sol.x[1]), rel=1e-10)
        assert abs(res.mass_residual) <= 1e-11 * f1
        assert abs(res.energy_residual) <= 1e-11 * f3
        assert res.entropy_flux_sum <= 1e-10


def test_scaling_inflows(rng):
    areas = [1.0, 0.7]
    inc = _random_inflows(rng, 2)
    base = solve_euler_junction(areas, inc)
    scaled = [GaussianMixture(tuple((3.0 * r, u, t) for r, u, t in g.components)) for g in inc]
    res = solve_euler_junction(areas, scaled)
    assert res.rho_star == pytest.approx(3.0 * base.rho_star, rel=1e-10)
    assert res.theta_star == pytest.approx(base.theta_star, rel=1e-10)


def test_competitors_dissipate_less(rng):
    areas = [1.0, 1.5, 0.5]
    inc = _random_inflows(rng, 3)
    res = solve_euler_junction(areas, inc)
    f1, f3 = inflow_moments(areas, inc)
    optimum = competitor_entropy_flux(areas, (res.rho_star, 0.0, res.theta_star))
    incoming = res.entropy_flux_sum - optimum
    assert optimum + incoming == pytest.approx(euler_entropy_check(areas, inc, res.rho_star, res.theta_star))
    for t in rng.uniform(-1.5, 1.5, 100):
        comp = matched_competitor(areas, f1, f3, float(t))
        g = GaussianMixture((comp,), incoming=False)
        assert sum(areas) * g.moment(1) == pytest.approx(f1, rel=1e-9)
        assert sum(areas) * g.moment(3) == pytest.approx(f3, rel=1e-9)
        assert competitor_entropy_flux(areas, comp) >= optimum - 1e-10
