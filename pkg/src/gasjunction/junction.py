"""Generalised junction Riemann problem.

The artificial-density coupling picks one rest state ``(rho*, 0)``: every
pipe carries the ``x > 0`` part of the Riemann problem ``(rho*, 0) | data_k``
and ``rho*`` is the root of the mass production

    m(rho_t) = sum_k A_k rho_k u_k      (traces at x = 0+).

``m`` is continuous and nondecreasing, so the root is bracketed between the
smallest and largest rest densities reachable on the reversed 2-curves of
the data and found with Brent's method.

The rival couplings (equal pressure, momentum flux, Bernoulli invariant)
put each trace on the reversed 2-curve of its data and solve the
equalisation plus mass balance with damped Newton iteration.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .boundary import (
    BoundaryTrace,
    Region,
    boundary_trace,
    boundary_traces,
    r_star,
    r_star_gradient,
    rest_density_on_reversed_2,
)
from .errors import DomainError, NoSubsonicSolution
from .gas import (
    EntropyGenerator,
    FlowRegime,
    GasLaw,
    State,
    bernoulli,
    classify,
    eigenvalues,
    energy_pair,
    enthalpy,
    entropy_pair,
    momentum_flux,
    pressure,
)
from .waves import RiemannSolution, WaveKind, reversed_curve, sample, solve_riemann


class CouplingKind(enum.Enum):
    ARTIFICIAL_DENSITY = "artificial_density"
    EQUAL_PRESSURE = "equal_pressure"
    EQUAL_MOMENTUM_FLUX = "equal_momentum_flux"
    EQUAL_BERNOULLI = "equal_bernoulli"

    @classmethod
    def parse(cls, text: str) -> "CouplingKind":
        key = text.strip().lower().replace("-", "_").replace(" ", "_")
        aliases = {
            "ad": cls.ARTIFICIAL_DENSITY,
            "artificial": cls.ARTIFICIAL_DENSITY,
            "pressure": cls.EQUAL_PRESSURE,
            "equal_density": cls.EQUAL_PRESSURE,
            "momentum_flux": cls.EQUAL_MOMENTUM_FLUX,
            "bernoulli": cls.EQUAL_BERNOULLI,
            "stagnation_enthalpy": cls.EQUAL_BERNOULLI,
            "equal_stagnation_enthalpy": cls.EQUAL_BERNOULLI,
        }
        if key in aliases:
            return aliases[key]
        return cls(key)


RIVAL_QUANTITY = {
    CouplingKind.EQUAL_PRESSURE: pressure,
    CouplingKind.EQUAL_MOMENTUM_FLUX: momentum_flux,
    CouplingKind.EQUAL_BERNOULLI: bernoulli,
}


@dataclass(frozen=True)
class JunctionProblem:
    law: GasLaw
    areas: tuple
    initial: tuple
    coupling: CouplingKind = CouplingKind.ARTIFICIAL_DENSITY

    def __post_init__(self):
        areas = tuple(float(a) for a in self.areas)
        initial = tuple(s if isinstance(s, State) else State(*s) for s in self.initial)
        if len(areas) < 1:
            raise DomainError("a junction needs at least one pipe")
        if len(areas) != len(initial):
            raise DomainError(f"{len(areas)} areas but {len(initial)} initial states")
        if any(not a > 0.0 for a in areas):
            raise DomainError("cross-sectional areas must be positive")
        object.__setattr__(self, "areas", areas)
        object.__setattr__(self, "initial", initial)

    @property
    def d(self) -> int:
        return len(self.areas)

    def arrays(self):
        return (
            np.array(self.areas),
            np.array([s.rho for s in self.initial]),
            np.array([s.u for s in self.initial]),
        )

    def mass_scale(self) -> float:
        return sum(a * s.rho * (1.0 + abs(s.u)) for a, s in zip(self.areas, self.initial))


@dataclass
class JunctionSolution:
    problem: JunctionProblem
    coupling: CouplingKind
    traces: list
    fans: list
    rho_star: Optional[float] = None
    mass_residual: float = 0.0
    energy_flux_sum: float = 0.0
    wave_types: list = field(default_factory=list)
    regions: Optional[list] = None
    bracket: Optional[tuple] = None
    plateau: bool = False
    degenerate: bool = False
    iterations: int = 0

    def sample(self, k: int, xi: float) -> State:
        """Exact state in pipe ``k`` at ``x/t = xi > 0``."""
        return sample(self.fans[k], xi)

    def momenta(self) -> list:
        return [s.momentum for s in self.traces]


# ---------------------------------------------------------------------------
# artificial density


def mass_production(law: GasLaw, problem: JunctionProblem, rho_tilde: float) -> float:
    areas, rho_hat, u_hat = problem.arrays()
    r, u = boundary_traces(law, float(rho_tilde), rho_hat, u_hat)
    return float(math.fsum(areas * r * u))


def mass_production_grid(law: GasLaw, problem: JunctionProblem, grid) -> np.ndarray:
    """``m`` on an array of trial densities (vectorised over grid and pipes)."""
    areas, rho_hat, u_hat = problem.arrays()
    grid = np.asarray(grid, dtype=float)
    r, u = boundary_traces(law, grid[:, None], rho_hat[None, :], u_hat[None, :])
    r = r.reshape(grid.size, -1)
    u = u.reshape(grid.size, -1)
    return (areas[None, :] * r * u).sum(axis=1)


def bracket(law: GasLaw, problem: JunctionProblem) -> tuple[float, float]:
    rests = [rest_density_on_reversed_2(law, s) for s in problem.initial]
    return min(rests), max(rests)


def _solve_artificial(law: GasLaw, problem: JunctionProblem, xtol: Optional[float]) -> tuple[float, tuple, bool]:
    lo, hi = bracket(law, problem)
    if hi == 0.0:
        return 0.0, (lo, hi), False

    def m(r):
        return mass_production(law, problem, r)

    if xtol is None:
        xtol = 4e-16 * (1.0 + hi)
    m_lo, m_hi = m(lo), m(hi)
    if m_lo >= 0.0:
        root = lo
    elif m_hi <= 0.0:
        root = hi
    else:
        root = brentq(m, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=500)
    plateau = False
    if root > lo:
        # m is strictly increasing at a nondegenerate root; a flat zero level
        # means every pipe sits inside region C
        probe = max(lo, root - 1e-6 * (1.0 + root))
        scale = 1e-12 * problem.mass_scale()
        if abs(m(probe)) <= scale:
            plateau = True
            a, b = lo, probe
            for _ in range(200):
                c = 0.5 * (a + b)
                if abs(m(c)) <= scale:
                    b = c
                else:
                    a = c
                if b - a <= xtol:
                    break
            root = b
    return root, (lo, hi), plateau


def _visible_wave2(sol: RiemannSolution) -> WaveKind:
    """Kind of the 2-wave restricted to ``x > 0``."""
    w2 = sol.wave2
    if w2.kind is WaveKind.SHOCK and w2.speed_lo > 0.0:
        return WaveKind.SHOCK
    if w2.kind is WaveKind.RAREFACTION and w2.speed_hi > 0.0:
        return WaveKind.RAREFACTION
    return WaveKind.NONE


def _finish(law, problem, coupling, traces, fans, **extra) -> JunctionSolution:
    areas = problem.areas
    residual = math.fsum(a * s.momentum for a, s in zip(areas, traces))
    energy = math.fsum(a * energy_pair(law, s)[1] for a, s in zip(areas, traces))
    waves = [_visible_wave2(f) for f in fans]
    return JunctionSolution(
        problem, coupling, list(traces), list(fans),
        mass_residual=residual, energy_flux_sum=energy, wave_types=waves, **extra,
    )


def solve_artificial_density(law: GasLaw, problem: JunctionProblem, xtol: Optional[float] = None) -> JunctionSolution:
    if all(s.is_vacuum for s in problem.initial):
        fans = [solve_riemann(law, State(0.0), s) for s in problem.initial]
        return _finish(law, problem, CouplingKind.ARTIFICIAL_DENSITY, list(problem.initial), fans,
                       rho_star=0.0, bracket=(0.0, 0.0), degenerate=True,
                       regions=[Region.A] * problem.d)
    rho_star, br, plateau = _solve_artificial(law, problem, xtol)
    bts: list[BoundaryTrace] = [boundary_trace(law, s, rho_star) for s in problem.initial]
    return _finish(
        law, problem, CouplingKind.ARTIFICIAL_DENSITY,
        [b.trace for b in bts], [b.solution for b in bts],
        rho_star=rho_star, bracket=br, plateau=plateau,
        regions=[b.region for b in bts],
    )


# ---------------------------------------------------------------------------
# rival couplings


def _is_subsonic(law: GasLaw, s: State) -> bool:
    return s.rho > 0.0 and classify(law, s) is FlowRegime.SUBSONIC


def _rival_residual(law, problem, quantity, rhos):
    states = [State(r, reversed_curve(law, 2, s0, r)) for r, s0 in zip(rhos, problem.initial)]
    q = [quantity(law, s) for s in states]
    res = [q[k] - q[k + 1] for k in range(problem.d - 1)]
    res.append(math.fsum(a * s.momentum for a, s in zip(problem.areas, states)))
    return np.array(res), states


def solve_rival(law: GasLaw, problem: JunctionProblem, coupling: CouplingKind,
                tol: float = 1e-13, maxiter: int = 100,
                quantity: Optional[Callable[[GasLaw, State], float]] = None) -> JunctionSolution:
    """Damped Newton on the trace densities along the reversed 2-curves.

    ``quantity`` overrides the function equalised across pipes; the result is
    still labelled with ``coupling``.

    Raises
    ------
    NoSubsonicSolution
        If the iteration leaves the subsonic region, fails to converge in
        ``maxiter`` steps, or produces a 2-wave that does not enter the pipe.
    """
    quantity = quantity or RIVAL_QUANTITY[coupling]
    if any(s.is_vacuum for s in problem.initial):
        raise NoSubsonicSolution("rival couplings need non-vacuum data in every pipe")
    rhos = np.array([s.rho for s in problem.initial], dtype=float)
    res, states = _rival_residual(law, problem, quantity, rhos)
    q_scale = max(1.0, max(abs(quantity(law, s)) for s in problem.initial))
    scale = np.array([q_scale] * (problem.d - 1) + [problem.mass_scale()])
    converged = False
    for it in range(maxiter):
        if np.all(np.abs(res) <= tol * scale):
            converged = True
            break
        jac = np.empty((problem.d, problem.d))
        for j in range(problem.d):
            h = 1e-7 * rhos[j]
            up, dn = rhos.copy(), rhos.copy()
            up[j] += h
            dn[j] -= h
            jac[:, j] = (_rival_residual(law, problem, quantity, up)[0]
                         - _rival_residual(law, problem, quantity, dn)[0]) / (2.0 * h)
        try:
            delta = np.linalg.solve(jac, -res)
        except np.linalg.LinAlgError as exc:
            raise NoSubsonicSolution(f"singular Newton matrix: {exc}") from exc
        step = 1.0
        current_ok = all(_is_subsonic(law, s) for s in states)
        for _ in range(60):
            trial = rhos + step * delta
            if np.all(trial > 0.0):
                t_res, t_states = _rival_residual(law, problem, quantity, trial)
                if not current_ok or all(_is_subsonic(law, s) for s in t_states):
                    break
            step *= 0.5
        else:
            raise NoSubsonicSolution("Newton step cannot stay in the subsonic region")
        if np.all(np.abs(step * delta) <= 1e-15 * rhos):
            # a full step below roundoff means the residual is at its noise
            # floor; a tiny damped step means Newton is stuck
            if step < 1.0 or np.any(np.abs(t_res) > 1e-8 * scale):
                raise NoSubsonicSolution(f"{coupling.value}: Newton iteration stagnated")
            rhos, res, states = trial, t_res, t_states
            converged = True
            break
        rhos, res, states = trial, t_res, t_states
    else:
        it = maxiter
    if not converged:
        raise NoSubsonicSolution(f"{coupling.value}: Newton did not converge in {maxiter} iterations")
    if not all(_is_subsonic(law, s) for s in states):
        raise NoSubsonicSolution(f"{coupling.value}: converged traces are not subsonic")
    fans = [solve_riemann(law, s, s0) for s, s0 in zip(states, problem.initial)]
    for k, f in enumerate(fans):
        w2 = f.wave2
        if w2.kind is WaveKind.SHOCK and w2.speed_lo <= 0.0:
            raise NoSubsonicSolution(f"{coupling.value}: 2-shock in pipe {k + 1} does not enter the pipe")
    return _finish(law, problem, coupling, states, fans, iterations=it)


def solve_junction(law: GasLaw, problem: JunctionProblem, coupling: Optional[CouplingKind] = None,
                   tol: Optional[float] = None) -> JunctionSolution:
    coupling = coupling or problem.coupling
    if coupling is CouplingKind.ARTIFICIAL_DENSITY:
        return solve_artificial_density(law, problem, xtol=tol)
    return solve_rival(law, problem, coupling, tol=tol or 1e-13)


# ---------------------------------------------------------------------------
# diagnostics


@dataclass
class DissipationReport:
    energy_flux_sum: float
    entropy_flux_sums: dict
    enthalpy_ordering: Optional[bool]
    enthalpy_star: Optional[float]
    trace_enthalpies: list
    bernoulli_values: list
    bernoulli_identity: float

    @property
    def ok(self) -> bool:
        return (self.energy_flux_sum <= 1e-10
                and all(v <= 1e-10 for v in self.entropy_flux_sums.values())
                and self.enthalpy_ordering is not False)


def dissipation_report(law: GasLaw, sol: JunctionSolution,
                       generators: Sequence[EntropyGenerator] = (), rtol: float = 1e-10) -> DissipationReport:
    """Entropy flux sums at the junction plus the stagnation-enthalpy ordering.

    ``bernoulli_identity`` is ``kappa * sum_k A_k rho_k^gamma u_k``: the energy
    flux sum whenever the Bernoulli invariant is equal across pipes and mass
    is conserved.
    """
    areas = sol.problem.areas
    sums = {}
    for gen in generators:
        sums[gen.name] = math.fsum(a * entropy_pair(law, gen, s)[1] for a, s in zip(areas, sol.traces))
    h = [enthalpy(law, s) for s in sol.traces]
    ordering = None
    h_star = None
    if sol.rho_star is not None:
        h_star = enthalpy(law, State(sol.rho_star, 0.0))
        tol = rtol * max(1.0, abs(h_star))
        ordering = True
        for s, hk in zip(sol.traces, h):
            if s.u > 0.0 and hk > h_star + tol:
                ordering = False
            if s.u < 0.0 and hk < h_star - tol:
                ordering = False
    identity = law.kappa * math.fsum(a * s.rho**law.gamma * s.u for a, s in zip(areas, sol.traces))
    return DissipationReport(
        energy_flux_sum=sol.energy_flux_sum,
        entropy_flux_sums=sums,
        enthalpy_ordering=ordering,
        enthalpy_star=h_star,
        trace_enthalpies=h,
        bernoulli_values=[bernoulli(law, s) for s in sol.traces],
        bernoulli_identity=identity,
    )


def coupling_function(law: GasLaw, states: Sequence[State], areas: Sequence[float]) -> np.ndarray:
    """``(sum A_k rho_k u_k, R*(s_1) - R*(s_2), ..., R*(s_{d-1}) - R*(s_d))``."""
    rs = [r_star(law, s) for s in states]
    out = [math.fsum(a * s.momentum for a, s in zip(areas, states))]
    out += [rs[k] - rs[k + 1] for k in range(len(states) - 1)]
    return np.array(out)


def transversality_matrix(law: GasLaw, states: Sequence[State], areas: Sequence[float]) -> np.ndarray:
    """Columns are derivatives of the coupling function along ``r2`` of each pipe.

    In conserved variables ``r2 = (1, lambda2)``, i.e. ``(drho, du) =
    (1, c rho^(theta-1))`` in primitive ones.
    """
    d = len(states)
    mat = np.zeros((d, d))
    for k, (s, a) in enumerate(zip(states, areas)):
        if not _is_subsonic(law, s):
            raise DomainError(f"transversality needs strictly subsonic states, got {s}")
        mat[0, k] = a * eigenvalues(law, s)[1]
        g_rho, g_u = r_star_gradient(law, s)
        dr = g_rho + g_u * law.sound_coeff * s.rho ** (law.theta - 1.0)
        if k < d - 1:
            mat[k + 1, k] += dr
        if k > 0:
            mat[k, k] -= dr
    return mat


def transversality(law: GasLaw, states: Sequence[State], areas: Sequence[float]) -> tuple[int, float]:
    det = float(np.linalg.det(transversality_matrix(law, states, areas)))
    return int(np.sign(det)), det
