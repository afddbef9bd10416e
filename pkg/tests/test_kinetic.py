import math

import numpy as np
import pytest
from scipy.optimize import brentq

from gasjunction.errors import DomainError
from gasjunction.gas import GasLaw, State, energy_pair, riemann_invariants
from gasjunction.kinetic import (
    MaxwellianTrace,
    Side,
    Tabulated,
    energy_integral,
    half_flux,
    half_flux_quadrature,
    kinetic_dissipation_check,
    kinetic_energy,
    kinetic_rho_star,
    maxwellian,
    moments,
    rest_energy_flux,
    subdifferential_gap,
)

GAMMAS = [1.2, 1.4, 2.0, 2.8]


@pytest.mark.parametrize("gamma", GAMMAS)
def test_moments(gamma, rng):
    law = GasLaw(1.7, gamma)
    for _ in range(10):
        s = State(rng.uniform(0.01, 10), rng.uniform(-5, 5))
        m0, m1 = moments(law, s)
        assert m0 == pytest.approx(s.rho, rel=1e-10)
        assert m1 == pytest.approx(s.momentum, rel=1e-10, abs=1e-12 * s.rho)


def test_maxwellian_support_and_vacuum(shallow):
    s = State(1.0, 0.5)
    w1, w2 = riemann_invariants(shallow, s)
    xi = np.array([w1 - 1e-9, w1 - 3.0, w2 + 1e-9, w2 + 3.0])
    m0, m1 = maxwellian(shallow, s, xi)
    assert np.all(m0 == 0.0) and np.all(m1 == 0.0)
    assert maxwellian(shallow, s, 0.5)[0] > 0.0
    z0, z1 = maxwellian(shallow, State(0.0), np.linspace(-1, 1, 5))
    assert not np.any(z0) and not np.any(z1)


@pytest.mark.parametrize("gamma", GAMMAS)
def test_half_flux_closed_form(gamma):
    law = GasLaw(5.0, gamma)
    for rho in (1e-3, 0.4, 1.0, 6.0):
        assert half_flux(law, rho) == pytest.approx(half_flux_quadrature(law, rho), rel=1e-10)
    assert half_flux(law, 0.0) == 0.0
    with pytest.raises(DomainError):
        half_flux(law, -1.0)


def test_half_flux_scaling(air):
    for c in (0.3, 2.0, 11.0):
        ratio = half_flux(air, c * 1.3) / half_flux(air, 1.3)
        assert ratio == pytest.approx(c ** ((air.gamma + 1) / 2), rel=1e-13)


def test_kinetic_rho_star_trivial_cases(shallow):
    assert kinetic_rho_star(shallow, [1.0], [MaxwellianTrace(State(0.0))]) == 0.0
    for rho in (0.2, 1.0, 3.0):
        got = kinetic_rho_star(shallow, [2.0], [MaxwellianTrace(State(rho, 0.0))])
        assert got == pytest.approx(rho, rel=1e-12)


@pytest.mark.parametrize("gamma", GAMMAS)
def test_kinetic_rho_star_vs_root_find(gamma, rng):
    law = GasLaw(1.0, gamma)
    for _ in range(10):
        d = int(rng.integers(1, 5))
        areas = list(rng.uniform(0.5, 2, d))
        inc = [MaxwellianTrace(State(rng.uniform(0.1, 4), rng.uniform(-2, 1))) for _ in range(d)]
        inflow = math.fsum(a * g.mass_flux(law) for a, g in zip(areas, inc))
        oracle = brentq(lambda r: sum(areas) * half_flux_quadrature(law, r) + inflow, 1e-12, 100.0,
                        xtol=1e-15, rtol=1e-15)
        assert kinetic_rho_star(law, areas, inc) == pytest.approx(oracle, rel=1e-10)


def test_kinetic_rho_star_monotone_in_inflow(air):
    values = [kinetic_rho_star(air, [1.0, 1.0], [MaxwellianTrace(State(1.0, u)), MaxwellianTrace(State(1.0))])
              for u in (0.5, 0.0, -0.5, -1.0)]
    assert all(a < b for a, b in zip(values, values[1:]))


def test_tabulated_matches_maxwellian_trace(air):
    s = State(1.4, -0.3)
    w1, _ = riemann_invariants(air, s)
    x, w = np.polynomial.legendre.leggauss(400)
    nodes = 0.5 * w1 * (x + 1.0)
    weights = -0.5 * w1 * w
    g0, g1 = maxwellian(air, s, nodes)
    tab = Tabulated(nodes, weights, g0, g1)
    exact = MaxwellianTrace(s, Side.INCOMING)
    assert tab.mass_flux(air) == pytest.approx(exact.mass_flux(air), rel=1e-6)
    assert tab.energy_flux(air) == pytest.approx(exact.energy_flux(air), rel=1e-6)


def test_tabulated_validation():
    with pytest.raises(DomainError):
        Tabulated([-1.0, -0.5], [1.0], [1.0, 1.0], [0.0, 0.0])
    with pytest.raises(DomainError):
        Tabulated([-1.0], [1.0], [-1.0], [0.0])
    with pytest.raises(DomainError):
        Tabulated([-1.0, 1.0], [1.0, 1.0], [1.0, 1.0], [0.0, 0.0])


def test_kinetic_energy_zero_state(air):
    assert kinetic_energy(air, (0.0, 0.0), 1.3) == 0.0


@pytest.mark.parametrize("gamma", GAMMAS)
def test_energy_integral_is_macroscopic_energy(gamma, rng):
    law = GasLaw(2.3, gamma)
    for _ in range(5):
        s = State(rng.uniform(0.05, 5), rng.uniform(-3, 3))
        assert energy_integral(law, s) == pytest.approx(energy_pair(law, s)[0], rel=1e-9)
    s = State(0.9, 0.0)
    assert 2 * rest_energy_flux(law, 0.9) == pytest.approx(
        MaxwellianTrace(s, Side.OUTGOING).energy_flux(law) - MaxwellianTrace(s, Side.INCOMING).energy_flux(law),
        rel=1e-12)


def test_subdifferential_inequality(rng):
    worst = math.inf
    for i in range(10_000):
        law = GasLaw(rng.uniform(0.5, 5), [1.2, 1.4, 2.0, 2.8][i % 4])
        s = State(rng.uniform(0.05, 5), rng.uniform(-3, 3))
        w1, w2 = riemann_invariants(law, s)
        xi = rng.uniform(w1 - 1, w2 + 1)
        g0 = rng.uniform(0, 2) * maxwellian(law, s, s.u)[0] + rng.uniform(0, 1e-3)
        g1 = rng.uniform(-3, 3) * g0
        gap = subdifferential_gap(law, (g0, g1), s, xi)
        worst = min(worst, gap)
    assert worst >= -1e-12


def test_dissipation_check(air, rng):
    areas = [1.0, 2.0, 0.5]
    inc = [MaxwellianTrace(State(rng.uniform(0.5, 2), rng.uniform(-1, 0.5))) for _ in areas]
    rho_star = kinetic_rho_star(air, areas, inc)
    (opt,) = kinetic_dissipation_check(air, areas, inc, [[State(rho_star)] * 3])
    assert opt.lhs == pytest.approx(opt.rhs, rel=1e-12)
    comps = [[State(rng.uniform(0.1, 3), rng.uniform(-1, 1)) for _ in areas] for _ in range(100)]
    results = kinetic_dissipation_check(air, areas, inc, comps)
    assert len(results) == 100
    assert all(r.ok and r.lhs >= r.rhs - 1e-10 for r in results)
    (zero,) = kinetic_dissipation_check(air, [1.0], [MaxwellianTrace(State(0.0))], [[State(1.0)]])
    assert zero.lhs == zero.rhs == 0.0
