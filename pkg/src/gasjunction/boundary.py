"""Boundary Riemann problems against an artificial rest state ``(rho_t, 0)``.

For a pipe ``x > 0`` with constant data ``initial`` and a trial artificial
density ``rho_t``, the pipe solution is the restriction of the Riemann
problem ``(rho_t, 0) | initial``. This module extracts its trace at
``x = 0+`` and classifies the data into the regions A, B, C, J according to
where the reversed 2-curve of ``initial`` meets the 1-curve of
``(rho_t, 0)``:

* A -- the meeting point has ``lambda1 >= 0``; the trace is the sonic state
  on the 1-rarefaction;
* B -- subsonic meeting point, 2-wave with positive speed;
* J -- subsonic meeting point, 2-shock of zero speed;
* C -- ``lambda2 <= 0`` at the meeting point, or a 2-shock of negative speed.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import ConsistencyError, DomainError
from .gas import VACUUM, FlowRegime, GasLaw, State, classify, eigenvalues, riemann_invariants, sonic_tolerance
from .waves import RiemannSolution, WaveKind, sample, sample_batch, shock_jump, solve_riemann

ZERO_SPEED_RTOL = 1e-9


class Region(enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    J = "J"


class Regime(enum.Enum):
    SONIC1_EXIT = "sonic1"
    SUBSONIC = "subsonic"
    SONIC2 = "sonic2"
    SUPERSONIC_OUT = "supersonic"
    UNPERTURBED = "unperturbed"


_ALLOWED = {
    Region.A: {Regime.SONIC1_EXIT, Regime.UNPERTURBED},
    Region.B: {Regime.SUBSONIC, Regime.UNPERTURBED},
    Region.J: {Regime.SUBSONIC, Regime.SONIC2, Regime.SUPERSONIC_OUT, Regime.UNPERTURBED},
    Region.C: {Regime.SONIC2, Regime.SUPERSONIC_OUT, Regime.UNPERTURBED},
}


@dataclass(frozen=True)
class BoundaryTrace:
    trace: State
    regime: Regime
    region: Region
    solution: RiemannSolution


def landmarks(law: GasLaw, rho_tilde: float) -> tuple[State, State]:
    """The sonic states on the 1-curve of ``(rho_tilde, 0)``.

    ``alpha`` lies on the 1-rarefaction with ``lambda1 = 0``; ``beta`` lies on
    the 1-shock with ``lambda2 = 0``.
    """
    if rho_tilde < 0.0:
        raise DomainError(f"negative artificial density {rho_tilde}")
    if rho_tilde == 0.0:
        return VACUUM, VACUUM
    rho_a = rho_tilde * (2.0 / (law.gamma + 1.0)) ** (1.0 / law.theta)
    alpha = State(rho_a, law.sound_coeff * rho_a**law.theta)

    def lam2_on_shock(r):
        return law.sound_coeff * r**law.theta - float(shock_jump(law, r, rho_tilde))

    hi = 2.0 * rho_tilde
    while lam2_on_shock(hi) > 0.0:
        hi *= 2.0
    rho_b = brentq(lam2_on_shock, rho_tilde, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps)
    beta = State(rho_b, -float(shock_jump(law, rho_b, rho_tilde)))
    return alpha, beta


def _same_state(a: State, b: State) -> bool:
    return abs(a.rho - b.rho) <= 1e-12 * (1.0 + b.rho) and abs(a.u - b.u) <= 1e-12 * (1.0 + abs(b.u))


def regime_of(law: GasLaw, trace: State, initial: State) -> Regime:
    if _same_state(trace, initial):
        return Regime.UNPERTURBED
    kind = classify(law, trace)
    if kind is FlowRegime.SONIC1:
        return Regime.SONIC1_EXIT
    if kind is FlowRegime.SONIC2:
        return Regime.SONIC2
    if kind is FlowRegime.SUBSONIC:
        return Regime.SUBSONIC
    return Regime.SUPERSONIC_OUT


def classify_region(law: GasLaw, sol: RiemannSolution) -> Region:
    """Region of ``sol.right`` read off the meeting point ``sol.mid``."""
    initial = sol.right
    if sol.left.is_vacuum:
        # W1 of the vacuum is the vacuum itself, which is sonic for both
        # families; the 2-fan out of vacuum decides
        if initial.is_vacuum or riemann_invariants(law, initial)[0] >= 0.0:
            return Region.A
        return Region.C
    meet = sol.mid
    if meet.is_vacuum:
        return Region.A
    l1, l2 = eigenvalues(law, meet)
    tol = sonic_tolerance(law, meet)
    if l1 >= -tol:
        return Region.A
    if l2 <= tol:
        return Region.C
    w2 = sol.wave2
    if w2.kind is WaveKind.SHOCK:
        if abs(w2.speed_lo) <= ZERO_SPEED_RTOL * (1.0 + abs(initial.u)):
            return Region.J
        return Region.B if w2.speed_lo > 0.0 else Region.C
    return Region.B


def boundary_trace(law: GasLaw, initial: State, rho_tilde: float) -> BoundaryTrace:
    """Trace at ``x = 0+`` of the boundary Riemann problem with rest state
    ``(rho_tilde, 0)`` on the left.

    The region is classified from the meeting point and cross-checked
    against the regime of the sampled trace.

    Raises
    ------
    ConsistencyError
        If the two classifications disagree.
    """
    if rho_tilde < 0.0:
        raise DomainError(f"negative artificial density {rho_tilde}")
    sol = solve_riemann(law, State(rho_tilde, 0.0), initial)
    trace = sample(sol, 0.0)
    regime = regime_of(law, trace, initial)
    region = classify_region(law, sol)
    if regime not in _ALLOWED[region]:
        raise ConsistencyError(
            f"region {region.value} incompatible with trace regime {regime.value} "
            f"(initial={initial}, rho_tilde={rho_tilde}, trace={trace})"
        )
    if classify(law, trace) is FlowRegime.SUPERSONIC and eigenvalues(law, trace)[0] > 0.0:
        raise ConsistencyError(f"trace {trace} is supersonic with outgoing 1-characteristic")
    return BoundaryTrace(trace, regime, region, sol)


def boundary_traces(law: GasLaw, rho_tilde, rho_hat, u_hat):
    """Vectorised traces ``(rho, u)`` at ``x = 0+``; arguments broadcast."""
    rho_tilde = np.asarray(rho_tilde, dtype=float)
    return sample_batch(law, rho_tilde, np.zeros_like(rho_tilde), rho_hat, u_hat, 0.0)


def rest_density_on_reversed_2(law: GasLaw, initial: State) -> float:
    """Density where the reversed 2-curve of ``initial`` crosses ``u = 0``.

    Returns 0 if the curve stays in ``u >= 0`` (``omega1(initial) >= 0``).
    """
    if initial.is_vacuum:
        return 0.0
    rho, u = initial.rho, initial.u
    if u == 0.0:
        return rho
    if u > 0.0:
        s = rho**law.theta - u / law.a_gamma
        return s ** (1.0 / law.theta) if s > 0.0 else 0.0

    def g(r):
        return float(shock_jump(law, r, rho)) + u

    hi = 2.0 * rho
    while g(hi) < 0.0:
        hi *= 2.0
    return brentq(g, rho, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps)


def r_star(law: GasLaw, s: State) -> float:
    """Artificial density whose 1-curve passes through ``s``.

    Closed form on the rarefaction branch (``u >= 0``); for ``u < 0`` the
    shock relation is inverted by Brent's method on ``(0, rho]``.
    """
    if s.rho <= 0.0:
        raise DomainError("r_star is undefined at vacuum")
    rho, u = s.rho, s.u
    if u >= 0.0:
        return (rho**law.theta + u / law.a_gamma) ** (1.0 / law.theta)

    def g(r):
        return float(shock_jump(law, rho, r)) + u

    lo = rho * 1e-12
    while g(lo) < 0.0:
        lo *= 1e-6
        if lo < 1e-300:
            raise DomainError(f"r_star underflows for state {s}")
    return brentq(g, lo, rho, xtol=1e-300, rtol=4 * np.finfo(float).eps)


def r_star_gradient(law: GasLaw, s: State) -> tuple[float, float]:
    """Partial derivatives of ``r_star`` with respect to ``(rho, u)``."""
    rho, u = s.rho, s.u
    th, a = law.theta, law.a_gamma
    if u >= 0.0:
        base = rho**th + u / a
        outer = base ** (1.0 / th - 1.0) / th
        return outer * th * rho ** (th - 1.0), outer / a
    r = r_star(law, s)
    k, g = law.kappa, law.gamma
    p = rho**g - r**g
    q = rho - r
    f = math.sqrt(k * p * q / (rho * r))
    df_drho = k * ((g * rho ** (g - 1.0) * q + p) / (rho * r) - p * q / (rho**2 * r)) / (2.0 * f)
    df_dr = k * ((-g * r ** (g - 1.0) * q - p) / (rho * r) - p * q / (rho * r**2)) / (2.0 * f)
    # u + f(rho, r) = 0
    return -df_drho / df_dr, -1.0 / df_dr
