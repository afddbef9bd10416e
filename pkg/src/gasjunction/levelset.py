"""Level sets of the junction quantities in the ``(rho, rho*u)`` plane.

Pressure, momentum flux and the Bernoulli invariant are even in ``u`` and
increase with ``|u|``, so every level set splits into an upper (``u >= 0``)
and a lower (``u <= 0``) branch; both are found by independent root
searches in ``u`` along a density scan. The artificial-density set is the
subsonic arc of the 1-curve through ``(R_*(base), 0)`` between its two
sonic landmarks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .boundary import landmarks, r_star
from .errors import DomainError
from .gas import FlowRegime, GasLaw, State, bernoulli, classify, momentum_flux, pressure
from .waves import forward_curve

QUANTITIES = ("pressure", "momentum_flux", "bernoulli", "artificial_density")

_EVEN = {"momentum_flux": momentum_flux, "bernoulli": bernoulli}


@dataclass
class LevelCurve:
    """Sampled level set. ``branches`` maps a name to ``(rho, momentum)`` arrays.

    ``bounded`` is True when the density scan hit a turning point, i.e. the
    set lies in a bounded part of the state space. The artificial-density
    set is reported as unbounded: besides the emitted subsonic arc it
    contains every outgoing supersonic state.
    """

    quantity: str
    level: float
    base: State
    branches: dict = field(default_factory=dict)
    bounded: bool = False
    turning_rho: float | None = None

    def points(self):
        for name, (rho, mom) in self.branches.items():
            for r, m in zip(rho, mom):
                yield name, float(r), float(m)

    def distance_to(self, rho: float, mom: float) -> float:
        best = math.inf
        for _, r, m in self.points():
            best = min(best, math.hypot(r - rho, m - mom))
        return best


def _density_grid(lo: float, hi: float, points: int, extra: Sequence[float]) -> np.ndarray:
    grid = np.concatenate([np.linspace(lo, hi, points), np.asarray(extra, dtype=float)])
    grid = grid[(grid >= lo) & (grid <= hi)]
    return np.unique(grid)


def _velocity_root(q: Callable[[float], float], target: float, sign: float) -> float:
    """``u`` with ``sign * u >= 0`` and ``q(u) = target``, ``q`` even and increasing in ``|u|``."""
    g = lambda v: q(sign * v) - target  # noqa: E731
    g0 = g(0.0)
    if g0 >= 0.0:
        return 0.0
    hi = 1.0
    while g(hi) < 0.0:
        hi *= 2.0
        if hi > 1e150:
            raise DomainError("level-set velocity search diverged")
    return sign * brentq(g, 0.0, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def even_level_curve(law: GasLaw, quantity: str, base: State, rho_range: tuple[float, float],
                     points: int = 200) -> LevelCurve:
    """Momentum-flux or Bernoulli level set through ``base``."""
    fn = _EVEN[quantity]
    level = fn(law, base)

    def q(rho, u):
        return fn(law, State(rho, u))

    lo, hi = rho_range
    turning = None
    if q(hi, 0.0) > level:
        # q(rho, 0) increases in rho, so the scan stops where it reaches the level
        turning = brentq(lambda r: q(r, 0.0) - level, min(lo, base.rho) * 1e-12, hi,
                         xtol=1e-300, rtol=4 * np.finfo(float).eps)
        hi = turning
    grid = _density_grid(min(lo, base.rho), max(hi, base.rho) if turning is None else hi, points,
                         [base.rho] + ([turning] if turning is not None else []))
    upper = np.array([_velocity_root(lambda u, r=r: q(r, u), level, 1.0) for r in grid])
    lower = np.array([_velocity_root(lambda u, r=r: q(r, u), level, -1.0) for r in grid])
    return LevelCurve(quantity, level, base,
                      {"upper": (grid, grid * upper), "lower": (grid, grid * lower)},
                      bounded=turning is not None, turning_rho=turning)


def pressure_level_curve(law: GasLaw, base: State, velocity_range: tuple[float, float],
                         points: int = 200) -> LevelCurve:
    """The line ``rho = rho0``; sampled in ``u`` since pressure ignores velocity."""
    vmax = max(abs(velocity_range[0]), abs(velocity_range[1]), abs(base.u))
    u = np.unique(np.concatenate([np.linspace(0.0, vmax, points), [abs(base.u)]]))
    rho = np.full_like(u, base.rho)
    return LevelCurve("pressure", pressure(law, base), base,
                      {"upper": (rho, base.rho * u), "lower": (rho.copy(), -base.rho * u)})


def artificial_density_curve(law: GasLaw, base: State, points: int = 200) -> LevelCurve:
    """Subsonic arc of the 1-curve through ``(R_*(base), 0)``."""
    rs = r_star(law, base)
    alpha, beta = landmarks(law, rs)
    grid = _density_grid(alpha.rho, beta.rho, points, [base.rho, rs])
    anchor = State(rs, 0.0)
    u = np.array([forward_curve(law, 1, anchor, float(r)) for r in grid])
    # the base point is exact rather than recomputed through R_*
    at = np.searchsorted(grid, base.rho)
    u[at] = base.u
    return LevelCurve("artificial_density", rs, base, {"subsonic": (grid, grid * u)})


def level_curves(law: GasLaw, base: State, quantities: Sequence[str] = QUANTITIES,
                 rho_range: tuple[float, float] = (0.01, 3.0), points: int = 200,
                 velocity_range: tuple[float, float] = (-3.0, 3.0)) -> list[LevelCurve]:
    if base.is_vacuum or classify(law, base) is not FlowRegime.SUBSONIC:
        raise DomainError(f"level sets need a subsonic base state, got {base}")
    out = []
    for name in quantities:
        if name == "pressure":
            out.append(pressure_level_curve(law, base, velocity_range, points))
        elif name in _EVEN:
            out.append(even_level_curve(law, name, base, rho_range, points))
        elif name == "artificial_density":
            out.append(artificial_density_curve(law, base, points))
        else:
            raise DomainError(f"unknown level-set quantity {name!r}")
    return out


def mirror_error(curve: LevelCurve) -> float:
    """Largest ``|m_upper + m_lower|`` over matching densities."""
    if "upper" not in curve.branches:
        raise DomainError(f"{curve.quantity} curve has no mirrored branches")
    (ru, mu), (rl, ml) = curve.branches["upper"], curve.branches["lower"]
    if ru.shape != rl.shape or np.any(ru != rl):
        return math.inf
    return float(np.max(np.abs(mu + ml)))
