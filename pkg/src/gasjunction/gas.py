"""State space, closures and entropy pairs of the isentropic gas equations.

The pressure law is ``p = kappa * rho**gamma`` with ``1 < gamma < 3``.
States are stored in primitive form ``(rho, u)``; the vacuum is the single
state ``(0, 0)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError
from .quadrature import RTOL, weighted_integral

VACUUM_CLAMP = 1e-300
SONIC_RTOL = 1e-9


@dataclass(frozen=True)
class GasLaw:
    """Polytropic pressure law with its derived kinetic constants."""

    kappa: float
    gamma: float
    theta: float = field(init=False)
    lam: float = field(init=False)
    a_gamma: float = field(init=False)
    sound_coeff: float = field(init=False)
    j_lambda: float = field(init=False)
    c_gamma_kappa: float = field(init=False)

    def __post_init__(self):
        if not self.kappa > 0:
            raise DomainError(f"kappa must be positive, got {self.kappa}")
        if not 1.0 < self.gamma < 3.0:
            raise DomainError(f"gamma must lie in (1, 3), got {self.gamma}")
        g, k = float(self.gamma), float(self.kappa)
        theta = (g - 1.0) / 2.0
        lam = 1.0 / (g - 1.0) - 0.5
        a = 2.0 * math.sqrt(g * k) / (g - 1.0)
        # int_{-1}^{1} (1-z^2)^lam dz = B(1/2, lam+1)
        j = math.exp(math.lgamma(0.5) + math.lgamma(lam + 1.0) - math.lgamma(lam + 1.5))
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "a_gamma", a)
        object.__setattr__(self, "sound_coeff", math.sqrt(k * g))
        object.__setattr__(self, "j_lambda", j)
        # normalised so that int chi(rho, xi) d xi = rho
        object.__setattr__(self, "c_gamma_kappa", a ** (-2.0 / (g - 1.0)) / j)

    def sound_speed(self, rho):
        return self.sound_coeff * np.power(rho, self.theta)

    def pressure(self, rho):
        return self.kappa * np.power(rho, self.gamma)


@dataclass(frozen=True)
class State:
    """A point ``(rho, u)`` of the state space D."""

    rho: float
    u: float = 0.0

    def __post_init__(self):
        rho, u = float(self.rho), float(self.u)
        if math.isnan(rho) or math.isnan(u):
            raise DomainError("state contains NaN")
        if rho < 0.0:
            if rho > -VACUUM_CLAMP:
                rho = 0.0
            else:
                raise DomainError(f"negative density {rho}")
        if rho < VACUUM_CLAMP:
            rho, u = 0.0, 0.0
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "u", u)

    @classmethod
    def from_conserved(cls, rho: float, momentum: float) -> "State":
        if rho < VACUUM_CLAMP:
            if abs(momentum) > VACUUM_CLAMP and rho >= 0.0:
                raise DomainError("vacuum state with nonzero momentum is not in D")
            return cls(rho, 0.0)
        return cls(rho, momentum / rho)

    @property
    def momentum(self) -> float:
        return self.rho * self.u

    @property
    def is_vacuum(self) -> bool:
        return self.rho == 0.0

    def conserved(self) -> tuple[float, float]:
        return self.rho, self.rho * self.u


VACUUM = State(0.0, 0.0)


class FlowRegime(enum.Enum):
    SUBSONIC = "subsonic"
    SONIC1 = "sonic1"
    SONIC2 = "sonic2"
    SUPERSONIC = "supersonic"


@dataclass(frozen=True)
class EntropyGenerator:
    """Convex velocity weight ``S`` parametrising an entropy pair.

    ``breakpoints`` lists velocities where ``S`` is not smooth; quadrature
    splits there. Convexity is the caller's responsibility.
    """

    s: Callable[[np.ndarray], np.ndarray]
    symmetric: bool = False
    ds: Optional[Callable[[np.ndarray], np.ndarray]] = None
    breakpoints: tuple = ()
    name: str = "S"

    def __post_init__(self):
        if self.symmetric:
            probe = np.linspace(-7.3, 7.3, 23)
            lhs = np.asarray(self.s(probe), dtype=float)
            rhs = np.asarray(self.s(-probe), dtype=float)
            if not np.allclose(lhs, rhs, rtol=1e-12, atol=1e-12):
                raise DomainError(f"generator {self.name!r} is flagged symmetric but S(v) != S(-v)")

    def __call__(self, v):
        return self.s(v)


def energy_generator() -> EntropyGenerator:
    return EntropyGenerator(lambda v: 0.5 * np.asarray(v) ** 2, True, lambda v: np.asarray(v), (), "v^2/2")


def square_generator() -> EntropyGenerator:
    return EntropyGenerator(lambda v: np.asarray(v) ** 2, True, lambda v: 2.0 * np.asarray(v), (), "v^2")


def cosh_generator(scale: float = 1.0) -> EntropyGenerator:
    return EntropyGenerator(
        lambda v: np.cosh(np.asarray(v) / scale),
        True,
        lambda v: np.sinh(np.asarray(v) / scale) / scale,
        (),
        f"cosh(v/{scale:g})",
    )


def max_principle_generator(omega_m: float) -> EntropyGenerator:
    """``S_M(v) = (-w - v)_+^2 + (v - w)_+^2``; its entropy vanishes exactly on
    states whose Riemann invariants lie in ``[-w, w]``."""
    w = float(omega_m)

    def s(v):
        v = np.asarray(v, dtype=float)
        return np.maximum(-w - v, 0.0) ** 2 + np.maximum(v - w, 0.0) ** 2

    def ds(v):
        v = np.asarray(v, dtype=float)
        return -2.0 * np.maximum(-w - v, 0.0) + 2.0 * np.maximum(v - w, 0.0)

    return EntropyGenerator(s, True, ds, (-w, w), f"S_M({w:g})")


# ---------------------------------------------------------------------------
# characteristic quantities


def eigenvalues(law: GasLaw, s: State) -> tuple[float, float]:
    c = law.sound_coeff * s.rho**law.theta
    return s.u - c, s.u + c


def riemann_invariants(law: GasLaw, s: State) -> tuple[float, float]:
    w = law.a_gamma * s.rho**law.theta
    return s.u - w, s.u + w


def state_from_invariants(law: GasLaw, omega1: float, omega2: float) -> State:
    if omega2 < omega1:
        raise DomainError("omega2 < omega1 has no preimage in D")
    s = (omega2 - omega1) / (2.0 * law.a_gamma)
    rho = s ** (1.0 / law.theta)
    if rho < VACUUM_CLAMP:
        return VACUUM
    return State(rho, 0.5 * (omega1 + omega2))


def sonic_tolerance(law: GasLaw, s: State) -> float:
    return SONIC_RTOL * max(1.0, abs(s.u) + law.sound_coeff * s.rho**law.theta)


def classify(law: GasLaw, s: State) -> FlowRegime:
    """Flow regime from the signs of the two characteristic speeds.

    The vacuum has both speeds zero and is reported as ``SONIC1``.
    """
    l1, l2 = eigenvalues(law, s)
    tol = sonic_tolerance(law, s)
    if abs(l1) <= tol:
        return FlowRegime.SONIC1
    if abs(l2) <= tol:
        return FlowRegime.SONIC2
    if l1 < 0.0 < l2:
        return FlowRegime.SUBSONIC
    return FlowRegime.SUPERSONIC


# ---------------------------------------------------------------------------
# scalar closures


def pressure(law: GasLaw, s: State) -> float:
    return law.kappa * s.rho**law.gamma


def momentum_flux(law: GasLaw, s: State) -> float:
    return s.rho * s.u * s.u + law.kappa * s.rho**law.gamma


def bernoulli(law: GasLaw, s: State) -> float:
    """Bernoulli invariant ``u^2/2 + kappa/(gamma-1) rho^(gamma-1)``.

    This is the convention equalised by the stagnation-enthalpy coupling.
    """
    if s.is_vacuum:
        return 0.0
    return 0.5 * s.u * s.u + law.kappa / (law.gamma - 1.0) * s.rho ** (law.gamma - 1.0)


def enthalpy(law: GasLaw, s: State) -> float:
    """Stagnation enthalpy ``u^2/2 + kappa*gamma/(gamma-1) rho^(gamma-1)``.

    Equals ``d eta / d rho`` at zero velocity; used for the junction ordering.
    """
    if s.is_vacuum:
        return 0.0
    return 0.5 * s.u * s.u + law.kappa * law.gamma / (law.gamma - 1.0) * s.rho ** (law.gamma - 1.0)


def flux(law: GasLaw, s: State) -> tuple[float, float]:
    m = s.rho * s.u
    return m, m * s.u + law.kappa * s.rho**law.gamma


def energy_pair(law: GasLaw, s: State) -> tuple[float, float]:
    rho, u = s.rho, s.u
    p_part = law.kappa * rho**law.gamma / (law.gamma - 1.0)
    eta = 0.5 * rho * u * u + p_part
    g = 0.5 * rho * u**3 + law.gamma * p_part * u
    return eta, g


def energy_gradient(law: GasLaw, s: State) -> tuple[float, float]:
    """Gradient of the energy with respect to ``(rho, rho*u)``."""
    if s.is_vacuum:
        return 0.0, 0.0
    return -0.5 * s.u * s.u + law.kappa * law.gamma / (law.gamma - 1.0) * s.rho ** (law.gamma - 1.0), s.u


def entropy_pair(law: GasLaw, gen: EntropyGenerator, s: State) -> tuple[float, float]:
    """Entropy and entropy flux generated by ``S`` via velocity quadrature.

    Substituting ``v = u + a_gamma rho^theta z`` turns both integrals into
    ``rho/J * int (1-z^2)^lam (.) dz`` on [-1, 1].
    """
    if s.is_vacuum:
        return 0.0, 0.0
    half_width = law.a_gamma * s.rho**law.theta
    u = s.u
    breaks = [(b - u) / half_width for b in gen.breakpoints]
    pref = s.rho / law.j_lambda

    def eta_integrand(z):
        return gen.s(u + half_width * z)

    def g_integrand(z):
        return (u + law.theta * half_width * z) * gen.s(u + half_width * z)

    # S evaluated at a rounded velocity is only accurate to |S'| eps |v|; near
    # a kink of S the integral can sit entirely at that noise level
    reach = abs(u) + half_width
    noise = 0.0
    if gen.ds is not None:
        probe = u + half_width * np.linspace(-1.0, 1.0, 33)
        noise = 64.0 * np.finfo(float).eps * reach * float(np.max(np.abs(gen.ds(probe))))
    floor = noise / RTOL
    eta = pref * weighted_integral(eta_integrand, law.lam, breaks, scale=floor)
    # scale keeps the stopping rule meaningful when G_S cancels to zero
    scale = max(abs(eta / pref), floor) * reach
    g = pref * weighted_integral(g_integrand, law.lam, breaks, scale=scale)
    return eta, g


def entropy_sum(values: Sequence[float], weights: Sequence[float]) -> float:
    return float(math.fsum(w * v for w, v in zip(weights, values)))
