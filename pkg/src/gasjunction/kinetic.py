"""Kinetic description of the isentropic gas: the compactly supported
Maxwellian, the half-line mass flux, the kinetic coupling density and the
kinetic energy ``H``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DomainError
from .gas import GasLaw, State, energy_gradient
from .quadrature import weighted_integral


def maxwellian(law: GasLaw, s: State, xi):
    """``(M0, M1)`` at kinetic velocity ``xi``; zero outside ``[omega1, omega2]``."""
    xi = np.asarray(xi, dtype=float)
    if s.is_vacuum:
        zero = np.zeros_like(xi)
        return zero, zero.copy()
    w = law.a_gamma * s.rho**law.theta
    v = xi - s.u
    m0 = law.c_gamma_kappa * np.maximum(w * w - v * v, 0.0) ** law.lam
    m1 = ((1.0 - law.theta) * s.u + law.theta * xi) * m0
    return m0, m1


def _velocity_integral(law: GasLaw, s: State, integrand, part: str = "all") -> float:
    """``int integrand(xi, M0, M1) d xi`` over the Maxwellian support, or
    over its ``xi > 0`` / ``xi < 0`` part.

    Uses ``xi = u + w z``; the factor ``(1-z^2)^lam`` of ``M0`` goes into the
    quadrature weight, so ``integrand`` must vanish where ``M0`` does.
    """
    if s.is_vacuum:
        return 0.0
    w = law.a_gamma * s.rho**law.theta
    cut = -s.u / w
    if part == "pos" and cut >= 1.0 or part == "neg" and cut <= -1.0:
        return 0.0
    amp = law.c_gamma_kappa * w ** (2.0 * law.lam)

    def f(z):
        xi = s.u + w * z
        weight = (1.0 - z * z) ** law.lam
        m0 = amp * weight
        m1 = ((1.0 - law.theta) * s.u + law.theta * xi) * m0
        values = integrand(xi, m0, m1) / weight
        if part == "pos":
            return np.where(xi > 0.0, values, 0.0)
        if part == "neg":
            return np.where(xi < 0.0, values, 0.0)
        return values

    breaks = () if part == "all" else (cut,)
    return w * weighted_integral(f, law.lam, breaks)


def moments(law: GasLaw, s: State) -> tuple[float, float]:
    """``(int M0, int M1)`` by quadrature; equals ``(rho, rho u)``."""
    return (
        _velocity_integral(law, s, lambda xi, m0, m1: m0),
        _velocity_integral(law, s, lambda xi, m0, m1: m1),
    )


def half_flux(law: GasLaw, rho: float) -> float:
    """``int_0^inf xi M0(rho, 0, xi) d xi`` in closed form; scales as ``rho^((gamma+1)/2)``."""
    if rho < 0.0:
        raise DomainError(f"negative density {rho}")
    if rho == 0.0:
        return 0.0
    w = law.a_gamma * rho**law.theta
    return law.c_gamma_kappa * w ** ((law.gamma + 1.0) / (law.gamma - 1.0)) / (2.0 * (law.lam + 1.0))


def half_flux_quadrature(law: GasLaw, rho: float) -> float:
    return _velocity_integral(law, State(rho, 0.0), lambda xi, m0, m1: xi * m0, "pos")


class Side(enum.Enum):
    INCOMING = "incoming"
    OUTGOING = "outgoing"


@dataclass(frozen=True)
class MaxwellianTrace:
    """``M(state, xi)`` restricted to ``xi < 0`` (incoming) or ``xi > 0``."""

    state: State
    side: Side = Side.INCOMING

    def flux_integral(self, law: GasLaw, integrand) -> float:
        part = "pos" if self.side is Side.OUTGOING else "neg"
        return _velocity_integral(law, self.state, integrand, part)

    def mass_flux(self, law: GasLaw) -> float:
        return self.flux_integral(law, lambda xi, m0, m1: xi * m0)

    def energy_flux(self, law: GasLaw) -> float:
        return self.flux_integral(law, lambda xi, m0, m1: xi * kinetic_energy(law, (m0, m1), xi))


@dataclass(frozen=True)
class Tabulated:
    """Discrete half distribution: ``int phi(xi) g(xi) d xi ~ sum_i w_i phi(xi_i) g(xi_i)``."""

    nodes: np.ndarray
    weights: np.ndarray
    g0: np.ndarray
    g1: np.ndarray

    def __post_init__(self):
        arrays = [np.asarray(a, dtype=float) for a in (self.nodes, self.weights, self.g0, self.g1)]
        if len({a.shape for a in arrays}) != 1:
            raise DomainError("tabulated arrays must share one shape")
        nodes, _, g0, g1 = arrays
        if np.any(g0 < 0.0):
            raise DomainError("tabulated g0 must be nonnegative")
        if np.any((g0 == 0.0) & (g1 != 0.0)):
            raise DomainError("tabulated values must lie in D")
        if np.any(nodes > 0.0) and np.any(nodes < 0.0):
            raise DomainError("tabulated nodes must lie on one half-line")
        for name, a in zip(("nodes", "weights", "g0", "g1"), arrays):
            object.__setattr__(self, name, a)

    def flux_integral(self, law: GasLaw, integrand) -> float:
        return float(np.dot(self.weights, integrand(self.nodes, self.g0, self.g1)))

    def mass_flux(self, law: GasLaw) -> float:
        return float(np.dot(self.weights, self.nodes * self.g0))

    def energy_flux(self, law: GasLaw) -> float:
        h = kinetic_energy(law, (self.g0, self.g1), self.nodes)
        return float(np.dot(self.weights, self.nodes * h))


HalfDistribution = Union[MaxwellianTrace, Tabulated]


def kinetic_rho_star(law: GasLaw, areas: Sequence[float], incoming: Sequence[HalfDistribution]) -> float:
    """Density of the outgoing rest Maxwellian balancing the incoming mass.

    Solves ``sum_k A_k (half_flux(rho*) + int_{xi<0} xi g0_k) = 0`` by
    inverting the power law.
    """
    if len(areas) != len(incoming):
        raise DomainError("one incoming distribution per pipe is required")
    inflow = -math.fsum(a * g.mass_flux(law) for a, g in zip(areas, incoming))
    inflow = max(inflow, 0.0)
    if inflow == 0.0:
        return 0.0
    unit = half_flux(law, 1.0)
    return (inflow / (math.fsum(areas) * unit)) ** (2.0 / (law.gamma + 1.0))


def kinetic_energy(law: GasLaw, f, xi):
    """Kinetic energy ``H(f, xi)`` for ``f = (f0, f1)``; ``H(0, xi) = 0``."""
    f0 = np.asarray(f[0], dtype=float)
    f1 = np.asarray(f[1], dtype=float)
    xi = np.asarray(xi, dtype=float)
    th, lam = law.theta, law.lam
    pos = f0 > 0.0
    safe = np.where(pos, f0, 1.0)
    q = 1.0 + 1.0 / lam
    h = (
        th / (1.0 - th) * 0.5 * xi * xi * safe
        + th / (2.0 * law.c_gamma_kappa ** (1.0 / lam)) * safe**q / q
        + 0.5 / (1.0 - th) * f1 * f1 / safe
        - th / (1.0 - th) * xi * f1
    )
    out = np.where(pos, h, 0.0)
    return float(out) if out.ndim == 0 else out


def energy_integral(law: GasLaw, s: State) -> float:
    """``int H(M(s, xi), xi) d xi`` by quadrature (equals the macroscopic energy)."""
    return _velocity_integral(law, s, lambda xi, m0, m1: kinetic_energy(law, (m0, m1), xi))


def rest_energy_flux(law: GasLaw, rho: float) -> float:
    """``int_0^inf xi H(M(rho, 0, xi), xi) d xi`` by quadrature."""
    return MaxwellianTrace(State(rho, 0.0), Side.OUTGOING).energy_flux(law)


@dataclass(frozen=True)
class KineticDissipation:
    lhs: float
    rhs: float
    ok: bool


def kinetic_dissipation_check(
    law: GasLaw,
    areas: Sequence[float],
    incoming: Sequence[HalfDistribution],
    competitors: Sequence[Sequence[State]] = (),
    tol: float = 1e-10,
) -> list[KineticDissipation]:
    """Compare outgoing energy fluxes of mass-conserving competitors with the optimum.

    Each competitor assigns a state to every pipe; its outgoing Maxwellian
    traces are scaled by one common factor so that the total outgoing mass
    equals the incoming mass. ``lhs`` is the competitor's outgoing energy
    flux, ``rhs`` the one of ``M(rho*, 0, .)``.
    """
    rho_star = kinetic_rho_star(law, areas, incoming)
    total = math.fsum(areas)
    target = total * half_flux(law, rho_star)
    rhs = total * rest_energy_flux(law, rho_star)
    results = []
    for states in competitors:
        if len(states) != len(areas):
            raise DomainError("a competitor needs one state per pipe")
        traces = [MaxwellianTrace(s, Side.OUTGOING) for s in states]
        mass = math.fsum(a * t.mass_flux(law) for a, t in zip(areas, traces))
        if target == 0.0:
            lhs = 0.0
        elif mass <= 0.0:
            continue
        else:
            scale = target / mass
            lhs = math.fsum(
                a * t.flux_integral(law, lambda xi, m0, m1: xi * kinetic_energy(law, (scale * m0, scale * m1), xi))
                for a, t in zip(areas, traces)
            )
        results.append(KineticDissipation(lhs, rhs, lhs >= rhs - tol * max(1.0, abs(rhs))))
    return results


def subdifferential_gap(law: GasLaw, g, s: State, xi: float) -> float:
    """``H(g) - H(M) - eta'(s).(g - M)`` at one velocity; nonnegative by convexity."""
    m0, m1 = maxwellian(law, s, xi)
    m0, m1 = float(m0), float(m1)
    d_rho, d_mom = energy_gradient(law, s)
    g0, g1 = float(g[0]), float(g[1])
    return (kinetic_energy(law, (g0, g1), xi) - kinetic_energy(law, (m0, m1), xi)
            - d_rho * (g0 - m0) - d_mom * (g1 - m1))
