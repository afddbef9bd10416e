"""Reference values for the three-pipe benchmark.

Shallow water (``kappa = 5``, ``gamma = 2``), unit areas, equal initial
densities and zero total momentum. Traces are given to four decimals. The
dissipation row is kept for display only: it does not match the energy
flux sums evaluated at the listed traces.
"""
from __future__ import annotations

from .gas import GasLaw, State
from .junction import CouplingKind, JunctionProblem
from .waves import WaveKind

BENCHMARK_LAW = GasLaw(5.0, 2.0)
BENCHMARK_AREAS = (1.0, 1.0, 1.0)
BENCHMARK_INITIAL = ((1.0, -1.0), (1.0, 0.5), (1.0, 0.5))

# (rho, rho*u) per pipe
TRACES = {
    CouplingKind.EQUAL_PRESSURE: ((1.0000, -1.0000), (1.0000, 0.5000), (1.0000, 0.5000)),
    CouplingKind.EQUAL_MOMENTUM_FLUX: ((0.8964, -1.1981), (1.0266, 0.5991), (1.0266, 0.5991)),
    CouplingKind.EQUAL_BERNOULLI: ((0.8518, -1.2670), (1.0356, 0.6335), (1.0356, 0.6335)),
    CouplingKind.ARTIFICIAL_DENSITY: ((1.1776, -0.5417), (0.9346, 0.2708), (0.9346, 0.2708)),
}

WAVES = {
    CouplingKind.EQUAL_PRESSURE: (WaveKind.NONE,) * 3,
    CouplingKind.EQUAL_MOMENTUM_FLUX: (WaveKind.RAREFACTION, WaveKind.SHOCK, WaveKind.SHOCK),
    CouplingKind.EQUAL_BERNOULLI: (WaveKind.RAREFACTION, WaveKind.SHOCK, WaveKind.SHOCK),
    CouplingKind.ARTIFICIAL_DENSITY: (WaveKind.SHOCK, WaveKind.RAREFACTION, WaveKind.RAREFACTION),
}

# printed row; None where only "approximately zero" is given
PRINTED_DISSIPATION = {
    CouplingKind.EQUAL_PRESSURE: -7.5e-2,
    CouplingKind.EQUAL_MOMENTUM_FLUX: -1.725e-2,
    CouplingKind.EQUAL_BERNOULLI: None,
    CouplingKind.ARTIFICIAL_DENSITY: -1.3852e-1,
}

RHO_STAR = 1.0253
TRACE_TOL = 2e-3


def benchmark_problem(coupling: CouplingKind = CouplingKind.ARTIFICIAL_DENSITY) -> JunctionProblem:
    states = tuple(State.from_conserved(r, m) for r, m in BENCHMARK_INITIAL)
    return JunctionProblem(BENCHMARK_LAW, BENCHMARK_AREAS, states, coupling)


def is_benchmark(problem: JunctionProblem) -> bool:
    """True when ``problem`` is the published instance (any coupling)."""
    law = problem.law
    if (law.kappa, law.gamma) != (BENCHMARK_LAW.kappa, BENCHMARK_LAW.gamma):
        return False
    if problem.areas != BENCHMARK_AREAS:
        return False
    return all(abs(s.rho - r) <= 1e-12 and abs(s.momentum - m) <= 1e-12
               for s, (r, m) in zip(problem.initial, BENCHMARK_INITIAL)) and problem.d == 3
