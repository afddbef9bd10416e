"""Kinetic junction for full gas dynamics with the Gaussian Maxwellian.

The outgoing distribution in every pipe is the rest Maxwellian
``M_{rho*, 0, theta*}``. Mass and energy balance read

    sum_k A_k m1(rho*, theta*) = F1,    sum_k A_k m3(rho*, theta*) = F3,

with ``F1, F3`` the incoming first and third moments; since
``m3 / m1 = 2 theta`` the system is triangular.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.special import ndtr, xlogy

from .errors import DomainError
from .quadrature import gauss_legendre

TRUNCATION = 12.0


def gaussian(rho: float, u: float, theta: float, xi):
    xi = np.asarray(xi, dtype=float)
    return rho / math.sqrt(2.0 * math.pi * theta) * np.exp(-((xi - u) ** 2) / (2.0 * theta))


def gaussian_half_moments(rho: float, theta: float) -> tuple[float, float]:
    """First and third moments of ``M_{rho,0,theta}`` over ``xi > 0``."""
    if rho < 0.0 or not theta > 0.0:
        raise DomainError(f"need rho >= 0 and theta > 0, got ({rho}, {theta})")
    return rho * math.sqrt(theta / (2.0 * math.pi)), rho * theta**1.5 * math.sqrt(2.0 / math.pi)


@dataclass(frozen=True)
class GaussianMixture:
    """Sum of Gaussians ``M_{rho_j, u_j, theta_j}`` restricted to one half-line."""

    components: tuple
    incoming: bool = True

    def __post_init__(self):
        comps = tuple((float(r), float(u), float(t)) for r, u, t in self.components)
        for r, _, t in comps:
            if r < 0.0 or not t > 0.0:
                raise DomainError(f"invalid Gaussian component ({r}, {t})")
        object.__setattr__(self, "components", comps)

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        out = np.zeros_like(xi)
        for r, u, t in self.components:
            out = out + gaussian(r, u, t, xi)
        return out

    def support(self) -> tuple[float, float]:
        """Half-line truncated at ``TRUNCATION`` standard deviations."""
        live = [(u, t) for r, u, t in self.components if r > 0.0]
        if not live:
            return 0.0, 0.0
        if self.incoming:
            lo = min(u - TRUNCATION * math.sqrt(t) for u, t in live)
            return min(lo, 0.0), 0.0
        hi = max(u + TRUNCATION * math.sqrt(t) for u, t in live)
        return 0.0, max(hi, 0.0)

    def panels(self) -> int:
        live = [t for r, _, t in self.components if r > 0.0]
        if not live:
            return 1
        lo, hi = self.support()
        return max(4, min(400, int(math.ceil((hi - lo) / math.sqrt(min(live))))))

    def moment(self, n: int) -> float:
        lo, hi = self.support()
        if hi == lo:
            return 0.0
        return gauss_legendre(lambda x: x**n * self(x), lo, hi, panels=self.panels())

    def entropy_flux(self) -> float:
        """``int xi g log g`` over the half-line."""
        lo, hi = self.support()
        if hi == lo:
            return 0.0

        def f(x):
            g = self(x)
            return x * xlogy(g, g)

        return gauss_legendre(f, lo, hi, panels=self.panels())


def exact_half_moment(rho: float, u: float, theta: float, n: int, incoming: bool) -> float:
    """``int xi^n M_{rho,u,theta}`` over one half-line in closed form, ``n`` in {0,1,3}."""
    s = math.sqrt(theta)
    t = u / s if incoming is False else -u / s
    phi = math.exp(-0.5 * t * t) / math.sqrt(2.0 * math.pi)
    cdf = float(ndtr(t))
    # moments of y ~ N(t, 1) over y > 0; xi = s y (outgoing) or xi = -s y
    mu = {0: cdf, 1: t * cdf + phi, 3: (t**3 + 3 * t) * cdf + (t * t + 2.0) * phi}[n]
    sign = -1.0 if incoming and n % 2 else 1.0
    return rho * s**n * mu * sign


@dataclass(frozen=True)
class EulerJunctionResult:
    rho_star: float
    theta_star: Optional[float]
    mass_residual: float
    energy_residual: float
    entropy_flux_sum: float
    inflow_mass: float
    inflow_energy: float


def inflow_moments(areas: Sequence[float], incoming: Sequence[GaussianMixture]) -> tuple[float, float]:
    if len(areas) != len(incoming):
        raise DomainError("one incoming distribution per pipe is required")
    f1 = -math.fsum(a * g.moment(1) for a, g in zip(areas, incoming))
    f3 = -math.fsum(a * g.moment(3) for a, g in zip(areas, incoming))
    return f1 + 0.0, f3 + 0.0


def outgoing_entropy_flux(rho: float, theta: float) -> float:
    return GaussianMixture(((rho, 0.0, theta),), incoming=False).entropy_flux()


def solve_euler_junction(areas: Sequence[float], incoming: Sequence[GaussianMixture]) -> EulerJunctionResult:
    f1, f3 = inflow_moments(areas, incoming)
    total = math.fsum(areas)
    if f1 <= 0.0 or f3 <= 0.0:
        return EulerJunctionResult(0.0, None, f1, f3, 0.0, f1, f3)
    theta = f3 / (2.0 * f1)
    rho = f1 / (total * math.sqrt(theta / (2.0 * math.pi)))
    m1, m3 = gaussian_half_moments(rho, theta)
    entropy = euler_entropy_check(areas, incoming, rho, theta)
    return EulerJunctionResult(rho, theta, total * m1 - f1, total * m3 - f3, entropy, f1, f3)


def euler_entropy_check(areas: Sequence[float], incoming: Sequence[GaussianMixture],
                        rho_star: float, theta_star: Optional[float]) -> float:
    """``sum_k A_k (int_{xi>0} xi M* log M* + int_{xi<0} xi g log g)``."""
    out = 0.0 if theta_star is None or rho_star == 0.0 else outgoing_entropy_flux(rho_star, theta_star)
    return math.fsum(a * (out + g.entropy_flux()) for a, g in zip(areas, incoming))


def matched_competitor(areas: Sequence[float], f1: float, f3: float, t: float) -> tuple[float, float, float]:
    """Outgoing Gaussian ``(rho, u, theta)`` with drift ``u = t sqrt(theta)`` that
    carries the same mass and energy as the optimum."""
    phi = math.exp(-0.5 * t * t) / math.sqrt(2.0 * math.pi)
    cdf = float(ndtr(t))
    mu1 = t * cdf + phi
    mu3 = (t**3 + 3 * t) * cdf + (t * t + 2.0) * phi
    theta = f3 / f1 * mu1 / mu3
    rho = f1 / (math.fsum(areas) * math.sqrt(theta) * mu1)
    return rho, t * math.sqrt(theta), theta


def competitor_entropy_flux(areas: Sequence[float], comp: tuple[float, float, float]) -> float:
    g = GaussianMixture((comp,), incoming=False)
    return math.fsum(areas) * g.entropy_flux()
