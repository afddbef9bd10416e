"""First-order Godunov simulation of a star network of pipes.

Every pipe occupies ``0 < x < L`` with the junction at ``x = 0``. Interior
cell faces use the exact Riemann flux; the junction face of pipe ``k`` uses
the flux of its trace from a fresh generalised Riemann problem posed on the
current first-cell averages. The far end is either a transparent (copy) or
a reflecting wall boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import CFLViolation, DomainError
from .gas import GasLaw, State
from .junction import CouplingKind, JunctionProblem, solve_junction
from .waves import godunov_flux


@dataclass
class PipeGrid:
    area: float
    length: float
    rho: np.ndarray
    mom: np.ndarray

    def __post_init__(self):
        self.rho = np.array(self.rho, dtype=float)
        self.mom = np.array(self.mom, dtype=float)
        if self.rho.shape != self.mom.shape or self.rho.ndim != 1:
            raise DomainError("rho and momentum must be 1-d arrays of one length")
        if self.rho.size < 2:
            raise DomainError("a pipe needs at least two cells")
        if not self.area > 0.0 or not self.length > 0.0:
            raise DomainError("pipe area and length must be positive")
        if np.any(self.rho < 0.0) or np.any((self.rho == 0.0) & (self.mom != 0.0)):
            raise DomainError("cell states must lie in D")

    @classmethod
    def constant(cls, area: float, length: float, cells: int, state: State) -> "PipeGrid":
        return cls(area, length, np.full(cells, state.rho), np.full(cells, state.momentum))

    @property
    def cells(self) -> int:
        return self.rho.size

    @property
    def dx(self) -> float:
        return self.length / self.cells

    def centers(self) -> np.ndarray:
        return (np.arange(self.cells) + 0.5) * self.dx

    def velocity(self) -> np.ndarray:
        safe = np.where(self.rho > 0.0, self.rho, 1.0)
        return np.where(self.rho > 0.0, self.mom / safe, 0.0)

    def copy(self) -> "PipeGrid":
        return PipeGrid(self.area, self.length, self.rho.copy(), self.mom.copy())


@dataclass
class JunctionRecord:
    t: float
    rho_star: Optional[float]
    traces: list
    energy_flux_sum: float
    mass_residual: float


@dataclass
class Network:
    law: GasLaw
    pipes: list
    coupling: CouplingKind = CouplingKind.ARTIFICIAL_DENSITY
    far_end: str = "outflow"
    t: float = 0.0
    last_junction: Optional[JunctionRecord] = None

    def __post_init__(self):
        if not self.pipes:
            raise DomainError("a network needs at least one pipe")
        if self.far_end not in ("outflow", "wall"):
            raise DomainError(f"far_end must be 'outflow' or 'wall', got {self.far_end!r}")

    def max_speed(self) -> float:
        c = self.law.sound_coeff
        return max(float(np.max(np.abs(p.velocity()) + c * p.rho**self.law.theta)) for p in self.pipes)

    def stable_dt(self, cfl: float) -> float:
        speed = self.max_speed()
        dx = min(p.dx for p in self.pipes)
        return math.inf if speed == 0.0 else cfl * dx / speed

    def mass(self) -> float:
        return math.fsum(p.area * p.dx * math.fsum(p.rho) for p in self.pipes)

    def energy(self) -> float:
        law = self.law
        total = []
        for p in self.pipes:
            eta = 0.5 * p.mom * p.velocity() + law.kappa / (law.gamma - 1.0) * p.rho**law.gamma
            total.append(p.area * p.dx * math.fsum(eta))
        return math.fsum(total)

    def invariant_range(self) -> tuple[float, float]:
        law = self.law
        lo, hi = math.inf, -math.inf
        for p in self.pipes:
            w = law.a_gamma * p.rho**law.theta
            u = p.velocity()
            lo = min(lo, float(np.min(u - w)))
            hi = max(hi, float(np.max(u + w)))
        return lo, hi


def _energy_flux(law: GasLaw, rho, u):
    return 0.5 * rho * u**3 + law.gamma * law.kappa / (law.gamma - 1.0) * rho**law.gamma * u


@dataclass
class StepFluxes:
    """Boundary fluxes of one step, used for budgets."""

    junction_mass: list
    junction_energy: list
    far_mass: list
    far_energy: list


def _junction(network: Network) -> JunctionRecord:
    states = [State.from_conserved(p.rho[0], p.mom[0]) for p in network.pipes]
    problem = JunctionProblem(network.law, tuple(p.area for p in network.pipes), tuple(states), network.coupling)
    sol = solve_junction(network.law, problem)
    return JunctionRecord(network.t, sol.rho_star, sol.traces, sol.energy_flux_sum, sol.mass_residual)


def step(network: Network, dt: float, cfl: float = 1.0) -> StepFluxes:
    """Advance ``network`` in place by ``dt``.

    Raises
    ------
    CFLViolation
        If ``dt`` exceeds ``cfl * dx / max|lambda|``.
    """
    if not dt > 0.0:
        raise DomainError(f"time step must be positive, got {dt}")
    limit = network.stable_dt(cfl)
    if dt > limit * (1.0 + 1e-12):
        raise CFLViolation(f"dt={dt:.6g} exceeds the CFL limit {limit:.6g}")
    law = network.law
    record = _junction(network)
    fluxes = StepFluxes([], [], [], [])
    for pipe, trace in zip(network.pipes, record.traces):
        u = pipe.velocity()
        # faces 0..N: junction face, interior faces, far face
        f_rho = np.empty(pipe.cells + 1)
        f_mom = np.empty(pipe.cells + 1)
        g_rho, g_mom = godunov_flux(law, pipe.rho[:-1], u[:-1], pipe.rho[1:], u[1:])
        f_rho[1:-1], f_mom[1:-1] = g_rho, g_mom
        j_rho, j_mom = godunov_flux(law, trace.rho, trace.u, trace.rho, trace.u)
        f_rho[0], f_mom[0] = j_rho[0], j_mom[0]
        if network.far_end == "wall":
            e_rho, e_mom = godunov_flux(law, pipe.rho[-1], u[-1], pipe.rho[-1], -u[-1])
            e_rho = np.zeros_like(e_rho)
        else:
            e_rho, e_mom = godunov_flux(law, pipe.rho[-1], u[-1], pipe.rho[-1], u[-1])
        f_rho[-1], f_mom[-1] = e_rho[0], e_mom[0]
        far_u = 0.0 if network.far_end == "wall" else u[-1]
        fluxes.junction_mass.append(pipe.area * f_rho[0])
        fluxes.junction_energy.append(pipe.area * _energy_flux(law, trace.rho, trace.u))
        fluxes.far_mass.append(pipe.area * f_rho[-1])
        fluxes.far_energy.append(pipe.area * float(_energy_flux(law, pipe.rho[-1], far_u)))
        ratio = dt / pipe.dx
        new_rho = pipe.rho - ratio * (f_rho[1:] - f_rho[:-1])
        new_mom = pipe.mom - ratio * (f_mom[1:] - f_mom[:-1])
        # roundoff can push a near-vacuum cell slightly negative
        vac = new_rho <= 0.0
        new_rho[vac] = 0.0
        new_mom[vac] = 0.0
        pipe.rho, pipe.mom = new_rho, new_mom
    network.t += dt
    network.last_junction = record
    return fluxes


@dataclass
class SimConfig:
    cfl: float = 0.5
    t_end: float = 0.1
    output_every: int = 0
    monitor_mass: bool = True
    monitor_energy: bool = True
    omega_bound: Optional[float] = None

    def __post_init__(self):
        if not 0.0 < self.cfl <= 1.0:
            raise DomainError(f"cfl must lie in (0, 1], got {self.cfl}")
        if not self.t_end >= 0.0:
            raise DomainError("t_end must be nonnegative")


@dataclass
class MonitorReport:
    omega_min: list = field(default_factory=list)
    omega_max: list = field(default_factory=list)
    mass: list = field(default_factory=list)
    energy: list = field(default_factory=list)
    mass_defect: list = field(default_factory=list)
    energy_budget: list = field(default_factory=list)
    junction_dissipation: list = field(default_factory=list)

    @property
    def max_mass_defect(self) -> float:
        return max((abs(v) for v in self.mass_defect), default=0.0)

    @property
    def max_energy_budget(self) -> float:
        return max(self.energy_budget, default=0.0)


def monitors(network: Network) -> dict:
    lo, hi = network.invariant_range()
    return {"t": network.t, "omega_min": lo, "omega_max": hi,
            "mass": network.mass(), "energy": network.energy()}


@dataclass
class SimResult:
    network: Network
    snapshots: list
    junction_log: list
    report: MonitorReport
    steps: int


def simulate(network: Network, config: SimConfig) -> SimResult:
    """Run to ``config.t_end``; the network is advanced in place.

    The energy budget of a step is ``dE + dt * sum_k A_k (G_far - G_junction)``
    which is nonpositive for the exact-flux scheme up to roundoff.
    """
    report = MonitorReport()
    snaps = [(network.t, [p.copy() for p in network.pipes])]
    log: list[JunctionRecord] = []
    n = 0
    while network.t < config.t_end * (1.0 - 1e-14):
        dt = min(network.stable_dt(config.cfl), config.t_end - network.t)
        if not math.isfinite(dt):
            dt = config.t_end - network.t
        m0, e0 = network.mass(), network.energy()
        fl = step(network, dt, config.cfl)
        n += 1
        mon = monitors(network)
        report.omega_min.append(mon["omega_min"])
        report.omega_max.append(mon["omega_max"])
        report.mass.append(mon["mass"])
        report.energy.append(mon["energy"])
        # the junction must not create mass, so only far faces enter
        report.mass_defect.append(mon["mass"] - m0 + dt * math.fsum(fl.far_mass))
        flow = math.fsum(fl.far_energy) - math.fsum(fl.junction_energy)
        report.energy_budget.append(mon["energy"] - e0 + dt * flow)
        report.junction_dissipation.append(network.last_junction.energy_flux_sum)
        log.append(network.last_junction)
        if config.output_every and n % config.output_every == 0:
            snaps.append((network.t, [p.copy() for p in network.pipes]))
    if snaps[-1][0] != network.t:
        snaps.append((network.t, [p.copy() for p in network.pipes]))
    return SimResult(network, snaps, log, report, n)


def network_from_states(law: GasLaw, areas: Sequence[float], states: Sequence[State], cells: int,
                        length: float = 1.0, coupling: CouplingKind = CouplingKind.ARTIFICIAL_DENSITY,
                        far_end: str = "outflow") -> Network:
    pipes = [PipeGrid.constant(a, length, cells, s) for a, s in zip(areas, states)]
    return Network(law, pipes, coupling, far_end)
