import math

import numpy as np
import pytest
from scipy.optimize import brentq

from gasjunction.boundary import Region, r_star, rest_density_on_reversed_2
from gasjunction.errors import DomainError, NoSubsonicSolution
from gasjunction.gas import (
    GasLaw,
    State,
    cosh_generator,
    entropy_pair,
    max_principle_generator,
    riemann_invariants,
    square_generator,
)
from gasjunction.junction import (
    RIVAL_QUANTITY,
    CouplingKind,
    JunctionProblem,
    bracket,
    coupling_function,
    dissipation_report,
    mass_production,
    mass_production_grid,
    solve_junction,
    solve_rival,
    transversality,
    transversality_matrix,
)
from gasjunction.waves import WaveKind, sample, solve_riemann

TABLE2 = {
    CouplingKind.EQUAL_PRESSURE: [(1.0, -1.0), (1.0, 0.5), (1.0, 0.5)],
    CouplingKind.EQUAL_MOMENTUM_FLUX: [(0.8964, -1.1981), (1.0266, 0.5991), (1.0266, 0.5991)],
    CouplingKind.EQUAL_BERNOULLI: [(0.8518, -1.2670), (1.0356, 0.6335), (1.0356, 0.6335)],
    CouplingKind.ARTIFICIAL_DENSITY: [(1.1776, -0.5417), (0.9346, 0.2708), (0.9346, 0.2708)],
}


def _problem(law, data, areas=None):
    states = tuple(State(r, u) for r, u in data)
    return JunctionProblem(law, tuple(areas or [1.0] * len(states)), states)


def test_problem_validation(shallow):
    with pytest.raises(DomainError):
        JunctionProblem(shallow, (), ())
    with pytest.raises(DomainError):
        JunctionProblem(shallow, (1.0, 1.0), (State(1.0),))
    with pytest.raises(DomainError):
        JunctionProblem(shallow, (0.0,), (State(1.0),))


def test_coupling_aliases():
    assert CouplingKind.parse("AD") is CouplingKind.ARTIFICIAL_DENSITY
    assert CouplingKind.parse("equal density") is CouplingKind.EQUAL_PRESSURE
    assert CouplingKind.parse("stagnation-enthalpy") is CouplingKind.EQUAL_BERNOULLI
    with pytest.raises(ValueError):
        CouplingKind.parse("nonsense")


@pytest.mark.parametrize("coupling", list(TABLE2), ids=lambda c: c.value)
def test_reference_traces(table1, coupling):
    sol = solve_junction(table1.law, table1, coupling)
    for s, (rho, mom) in zip(sol.traces, TABLE2[coupling]):
        assert s.rho == pytest.approx(rho, abs=2e-3)
        assert s.momentum == pytest.approx(mom, abs=2e-3)
    assert abs(sol.mass_residual) <= 1e-9 * table1.mass_scale()


def test_reference_wave_types(table1):
    waves = {c: solve_junction(table1.law, table1, c).wave_types for c in TABLE2}
    assert waves[CouplingKind.EQUAL_PRESSURE] == [WaveKind.NONE] * 3
    for c in (CouplingKind.EQUAL_MOMENTUM_FLUX, CouplingKind.EQUAL_BERNOULLI):
        assert waves[c] == [WaveKind.RAREFACTION, WaveKind.SHOCK, WaveKind.SHOCK]
    assert waves[CouplingKind.ARTIFICIAL_DENSITY] == [WaveKind.SHOCK, WaveKind.RAREFACTION, WaveKind.RAREFACTION]


def test_rival_quantities_are_equalised(table1):
    for c in (CouplingKind.EQUAL_PRESSURE, CouplingKind.EQUAL_MOMENTUM_FLUX, CouplingKind.EQUAL_BERNOULLI):
        sol = solve_rival(table1.law, table1, c)
        q = [RIVAL_QUANTITY[c](table1.law, s) for s in sol.traces]
        assert max(q) - min(q) <= 1e-12 * max(abs(v) for v in q)


def test_artificial_density_table1(table1):
    sol = solve_junction(table1.law, table1)
    assert sol.rho_star == pytest.approx(1.0253, abs=2e-3)
    assert sol.regions == [Region.B] * 3
    for s in sol.traces:
        assert r_star(table1.law, s) == pytest.approx(sol.rho_star, rel=1e-8)


def test_dissipation_ordering_table1(table1):
    g = {c: solve_junction(table1.law, table1, c).energy_flux_sum for c in TABLE2}
    assert g[CouplingKind.EQUAL_PRESSURE] == pytest.approx(-0.375, abs=1e-12)
    ad = g.pop(CouplingKind.ARTIFICIAL_DENSITY)
    assert ad <= -1e-3
    assert all(ad < v for v in g.values())


def test_bernoulli_identity(table1):
    sol = solve_junction(table1.law, table1, CouplingKind.EQUAL_BERNOULLI)
    rep = dissipation_report(table1.law, sol)
    identity = 5.0 * sum(s.rho**2 * s.u for s in sol.traces)
    assert rep.bernoulli_identity == pytest.approx(identity, rel=1e-14)
    assert sol.energy_flux_sum == pytest.approx(identity, abs=1e-9)


def test_bracket_examples(shallow):
    assert bracket(shallow, _problem(shallow, [(1.0, 0.0)] * 3)) == (1.0, 1.0)
    p = _problem(shallow, [(1.0, -1.0)])
    lo, hi = bracket(shallow, p)
    assert lo == hi == rest_density_on_reversed_2(shallow, State(1.0, -1.0))


def test_stationary_data(shallow):
    p = _problem(shallow, [(1.7, 0.0)] * 4, areas=[1, 2, 3, 0.5])
    assert mass_production(shallow, p, 1.7) == 0.0
    sol = solve_junction(shallow, p)
    assert sol.rho_star == pytest.approx(1.7, rel=1e-14)
    assert all(w is WaveKind.NONE for w in sol.wave_types)


def test_single_pipe_is_a_wall(shallow):
    p = _problem(shallow, [(1.0, -1.0)])
    sol = solve_junction(shallow, p)
    assert abs(sol.traces[0].u) <= 1e-12
    assert sol.traces[0].rho == pytest.approx(sol.rho_star, rel=1e-12)
    assert sol.energy_flux_sum <= 1e-10


def test_all_vacuum(shallow):
    sol = solve_junction(shallow, _problem(shallow, [(0.0, 0.0)] * 3))
    assert sol.rho_star == 0.0 and sol.degenerate
    assert all(s.is_vacuum for s in sol.traces)


def test_vacuum_pipe_next_to_gas(air):
    sol = solve_junction(air, _problem(air, [(2.0, -0.5), (0.0, 0.0)]))
    assert abs(sol.mass_residual) <= 1e-9
    assert sol.traces[1].u >= 0.0


def test_rival_failure_modes(shallow):
    with pytest.raises(NoSubsonicSolution):
        solve_rival(shallow, _problem(shallow, [(1.0, -5.0), (1.0, 5.0)]), CouplingKind.EQUAL_PRESSURE)
    with pytest.raises(NoSubsonicSolution):
        solve_rival(shallow, _problem(shallow, [(0.0, 0.0), (1.0, 0.0)]), CouplingKind.EQUAL_BERNOULLI)
    with pytest.raises(NoSubsonicSolution):
        solve_rival(shallow, _problem(shallow, [(1.0, -3.0), (0.01, 0.0)]), CouplingKind.EQUAL_PRESSURE)


def test_symmetric_two_pipes_all_couplings_agree(air):
    for u in (-0.3, 0.3):
        p = _problem(air, [(1.2, u), (1.2, u)])
        traces = [solve_junction(air, p, c).traces for c in CouplingKind]
        for t in traces:
            assert abs(t[0].u) <= 1e-9
            for a, b in zip(t, traces[0]):
                assert a.rho == pytest.approx(b.rho, rel=1e-9)
                assert a.u == pytest.approx(b.u, abs=1e-9)


def test_uniqueness_from_perturbed_brackets(air, rng):
    for _ in range(30):
        d = int(rng.integers(2, 5))
        p = _problem(air, [(rng.uniform(0.2, 4), rng.uniform(-2, 2)) for _ in range(d)])
        sol = solve_junction(air, p)
        lo, hi = sol.bracket
        m = lambda r: mass_production(air, p, r)  # noqa: E731
        a = lo * (1 - 0.1 * rng.random())
        b = hi * (1 + 0.1 * rng.random()) + 1e-9
        other = brentq(m, a, b, xtol=1e-15, rtol=1e-15)
        assert other == pytest.approx(sol.rho_star, rel=1e-9)


def test_grid_matches_pointwise_mass_production(air, rng):
    p = _problem(air, [(rng.uniform(0.2, 4), rng.uniform(-3, 3)) for _ in range(4)], areas=[1, 0.5, 2, 1.5])
    grid = np.linspace(0.0, 5.0, 41)
    m = mass_production_grid(air, p, grid)
    for g, v in zip(grid, m):
        assert v == pytest.approx(mass_production(air, p, g), rel=1e-9, abs=1e-12)


def test_max_principle_entropy_at_junction(shallow, rng):
    for _ in range(20):
        p = _problem(shallow, [(rng.uniform(0.3, 3), rng.uniform(-1, 1)) for _ in range(3)])
        sol = solve_junction(shallow, p)
        om = max(max(abs(v) for v in riemann_invariants(shallow, s)) for s in p.initial)
        gen = max_principle_generator(om)
        rep = dissipation_report(shallow, sol, [gen])
        assert rep.entropy_flux_sums[gen.name] <= 1e-12
        for s in sol.traces:
            assert entropy_pair(shallow, gen, s)[0] <= 1e-12


def test_dissipation_report_fields(table1):
    sol = solve_junction(table1.law, table1)
    rep = dissipation_report(table1.law, sol, [square_generator(), cosh_generator(2.0)])
    assert rep.ok
    assert rep.enthalpy_ordering is True
    assert set(rep.entropy_flux_sums) == {"v^2", "cosh(v/2)"}


def _fd_column(law, states, areas, k, h=1e-6):
    s = states[k]
    dr = h * s.rho
    du = dr * law.sound_coeff * s.rho ** (law.theta - 1.0)
    up, dn = list(states), list(states)
    up[k] = State(s.rho + dr, s.u + du)
    dn[k] = State(s.rho - dr, s.u - du)
    return (coupling_function(law, up, areas) - coupling_function(law, dn, areas)) / (2 * dr)


def test_transversality(air, rng):
    states = [State(1.0, 0.0)] * 3
    sign, det = transversality(air, states, [1.0, 1.0, 1.0])
    assert sign != 0 and abs(det) > 0
    for _ in range(20):
        d = int(rng.integers(2, 5))
        states = [State(rng.uniform(0.3, 3), rng.uniform(-0.4, 0.4)) for _ in range(d)]
        areas = list(rng.uniform(0.5, 2, d))
        mat = transversality_matrix(air, states, areas)
        for k in range(d):
            assert np.allclose(mat[:, k], _fd_column(air, states, areas, k), rtol=1e-6, atol=1e-8)
        c = 2.7
        det_c = transversality(air, states, [c * a for a in areas])[1]
        assert det_c == pytest.approx(c * transversality(air, states, areas)[1], rel=1e-10)
    with pytest.raises(DomainError):
        transversality_matrix(air, [State(1.0, 5.0)], [1.0])


def test_traces_belong_to_boundary_set(shallow, rng):
    for _ in range(50):
        d = int(rng.integers(1, 5))
        p = _problem(shallow, [(rng.uniform(0.1, 5), rng.uniform(-6, 6)) for _ in range(d)])
        sol = solve_junction(shallow, p)
        for s in sol.traces:
            again = sample(solve_riemann(shallow, State(sol.rho_star, 0.0), s), 0.0)
            assert again.rho == pytest.approx(s.rho, abs=1e-8)
            assert again.u == pytest.approx(s.u, abs=1e-8)
