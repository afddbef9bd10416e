"""Lax wave curves and the exact two-wave Riemann solver of the p-system.

Velocity along the 1-wave through a left state and the reversed 2-wave
through a right state are written as

    u = u_l - f(rho; rho_l)      (1-wave, forward)
    u = u_r + f(rho; rho_r)      (2-wave, reversed)

where ``f`` is the rarefaction branch ``a (rho^theta - rho0^theta)`` for
``rho <= rho0`` and the shock branch ``sqrt(kappa [p][rho] / (rho rho0))``
otherwise. Both are increasing in ``rho``, so the intermediate density is
the unique root of ``f(rho; rho_l) + f(rho; rho_r) + u_r - u_l``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NoConvergence, VacuumEndpoint
from .gas import VACUUM, GasLaw, State, eigenvalues, riemann_invariants

VACUUM_RTOL = 1e-12
SEAM_RTOL = 1e-7


class WaveKind(enum.Enum):
    SHOCK = "shock"
    RAREFACTION = "rarefaction"
    NONE = "none"


@dataclass(frozen=True)
class WaveDescriptor:
    family: int
    kind: WaveKind
    speed_lo: float
    speed_hi: float

    @property
    def speed(self) -> float:
        return self.speed_lo


# ---------------------------------------------------------------------------
# wave-curve primitives


def _pressure_slope(law: GasLaw, r1, r0):
    """Secant ``(p(r1) - p(r0)) / (r1 - r0)``, switching to the tangent when
    the two densities nearly coincide."""
    r1 = np.asarray(r1, dtype=float)
    r0 = np.asarray(r0, dtype=float)
    diff = r1 - r0
    close = np.abs(diff) <= SEAM_RTOL * np.maximum(r1, r0)
    safe = np.where(close, 1.0, diff)
    secant = law.kappa * (r1**law.gamma - r0**law.gamma) / safe
    mid = 0.5 * (r1 + r0)
    tangent = law.kappa * law.gamma * mid ** (law.gamma - 1.0)
    return np.where(close, tangent, secant)


def shock_jump(law: GasLaw, rho, rho0):
    """``sqrt(kappa (rho^g - rho0^g)(rho - rho0) / (rho rho0))``, >= 0."""
    rho = np.asarray(rho, dtype=float)
    rho0 = np.asarray(rho0, dtype=float)
    slope = _pressure_slope(law, rho, rho0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.abs(rho - rho0) * np.sqrt(slope / (rho * rho0))
    return out


def wave_jump(law: GasLaw, rho, rho0):
    """Signed velocity increment ``f(rho; rho0)`` shared by both families."""
    rho = np.asarray(rho, dtype=float)
    rho0 = np.asarray(rho0, dtype=float)
    rare = law.a_gamma * (rho**law.theta - rho0**law.theta)
    shock = shock_jump(law, np.maximum(rho, rho0), rho0)
    return np.where(rho <= rho0, rare, shock)


def wave_jump_derivative(law: GasLaw, rho, rho0):
    rho = np.asarray(rho, dtype=float)
    rho0 = np.asarray(rho0, dtype=float)
    rare = law.sound_coeff * rho ** (law.theta - 1.0)
    g = law.gamma
    big = np.maximum(rho, rho0)
    f = shock_jump(law, big, rho0)
    # d/drho of kappa (rho^g - rho0^g)(1/rho0 - 1/rho)
    dg = law.kappa * (g * big ** (g - 1.0) * (1.0 / rho0 - 1.0 / big) + (big**g - rho0**g) / big**2)
    with np.errstate(divide="ignore", invalid="ignore"):
        shock = np.where(f > 1e-300, dg / (2.0 * f), rare)
    return np.where(rho <= rho0, rare, shock)


def forward_curve(law: GasLaw, family: int, s0: State, rho: float) -> float:
    """Velocity at density ``rho`` on the forward wave curve through ``s0``."""
    if s0.is_vacuum:
        raise DomainError("forward wave curves need a non-vacuum base state")
    if rho < 0.0:
        raise VacuumEndpoint(f"density {rho} lies past the vacuum end of the curve")
    if family == 1:
        if rho < s0.rho:
            return s0.u + law.a_gamma * (s0.rho**law.theta - rho**law.theta)
        return s0.u - float(shock_jump(law, rho, s0.rho))
    if family == 2:
        if rho > s0.rho:
            return s0.u - law.a_gamma * s0.rho**law.theta + law.a_gamma * rho**law.theta
        if rho == 0.0:
            raise VacuumEndpoint("the 2-shock curve is unbounded at vacuum")
        return s0.u - float(shock_jump(law, rho, s0.rho))
    raise DomainError(f"family must be 1 or 2, got {family}")


def reversed_curve(law: GasLaw, family: int, s: State, rho0: float) -> float:
    """Velocity ``u0`` such that ``s`` lies on the forward curve through ``(rho0, u0)``."""
    if s.is_vacuum:
        raise DomainError("reversed wave curves need a non-vacuum end state")
    if rho0 < 0.0:
        raise VacuumEndpoint(f"density {rho0} lies past the vacuum end of the curve")
    if family == 2:
        if rho0 < s.rho:
            return s.u + law.a_gamma * (rho0**law.theta - s.rho**law.theta)
        return s.u + float(shock_jump(law, rho0, s.rho))
    if family == 1:
        if rho0 == 0.0:
            raise VacuumEndpoint("the reversed 1-shock curve is unbounded at vacuum")
        if s.rho < rho0:
            return s.u - law.a_gamma * (rho0**law.theta - s.rho**law.theta)
        return s.u + float(shock_jump(law, s.rho, rho0))
    raise DomainError(f"family must be 1 or 2, got {family}")


def reversed_curve_slope(law: GasLaw, s: State, rho0: float) -> float:
    """``du0/drho0`` along the reversed 2-curve through ``s`` (closed form)."""
    rho, u = s.rho, s.u
    if rho0 <= rho:
        return law.sound_coeff * rho0 ** ((law.gamma - 3.0) / 2.0)
    u0 = reversed_curve(law, 2, s, rho0)
    g = law.gamma
    bracket = rho / rho0 * (rho0**g - rho**g) + g * rho0 ** (g - 1.0) * (rho0 - rho)
    return law.kappa / (2.0 * rho0 * rho * (u0 - u)) * bracket


# ---------------------------------------------------------------------------
# scalar Riemann solver


@dataclass(frozen=True)
class RiemannSolution:
    """Self-similar Lax solution; ``vacuum`` marks a vacuum generated between
    two rarefactions."""

    law: GasLaw
    left: State
    mid: State
    right: State
    wave1: WaveDescriptor
    wave2: WaveDescriptor
    vacuum: bool = False
    vacuum_interval: Optional[tuple[float, float]] = None

    def zone(self, xi: float) -> str:
        """Name of the region containing ``xi``; shock speeds belong to the
        region on their right."""
        w1, w2 = self.wave1, self.wave2
        if xi < w1.speed_lo:
            return "left"
        if w1.kind is WaveKind.RAREFACTION and xi <= w1.speed_hi:
            return "fan1"
        if xi < w2.speed_lo:
            return "vacuum" if self.vacuum else "mid"
        if w2.kind is WaveKind.RAREFACTION and xi <= w2.speed_hi:
            return "fan2"
        return "right"

    def max_speed(self) -> float:
        return max(abs(self.wave1.speed_lo), abs(self.wave1.speed_hi),
                   abs(self.wave2.speed_lo), abs(self.wave2.speed_hi))


def _constant_solution(law: GasLaw, s: State) -> RiemannSolution:
    l1, l2 = eigenvalues(law, s)
    return RiemannSolution(
        law, s, s, s,
        WaveDescriptor(1, WaveKind.NONE, l1, l1),
        WaveDescriptor(2, WaveKind.NONE, l2, l2),
    )


def _shock_speed_1(law: GasLaw, left: State, rho_m: float) -> float:
    slope = float(_pressure_slope(law, rho_m, left.rho))
    return left.u - math.sqrt(rho_m / left.rho * slope)


def _shock_speed_2(law: GasLaw, right: State, rho_m: float) -> float:
    slope = float(_pressure_slope(law, rho_m, right.rho))
    return right.u + math.sqrt(rho_m / right.rho * slope)


def _wave1(law: GasLaw, left: State, mid: State) -> WaveDescriptor:
    if abs(mid.rho - left.rho) <= VACUUM_RTOL * left.rho:
        l1 = eigenvalues(law, left)[0]
        return WaveDescriptor(1, WaveKind.NONE, l1, l1)
    if mid.rho > left.rho:
        sigma = _shock_speed_1(law, left, mid.rho)
        return WaveDescriptor(1, WaveKind.SHOCK, sigma, sigma)
    return WaveDescriptor(1, WaveKind.RAREFACTION, eigenvalues(law, left)[0], eigenvalues(law, mid)[0])


def _wave2(law: GasLaw, mid: State, right: State) -> WaveDescriptor:
    if abs(mid.rho - right.rho) <= VACUUM_RTOL * right.rho:
        l2 = eigenvalues(law, right)[1]
        return WaveDescriptor(2, WaveKind.NONE, l2, l2)
    if mid.rho > right.rho:
        sigma = _shock_speed_2(law, right, mid.rho)
        return WaveDescriptor(2, WaveKind.SHOCK, sigma, sigma)
    return WaveDescriptor(2, WaveKind.RAREFACTION, eigenvalues(law, mid)[1], eigenvalues(law, right)[1])


def _vacuum_solution(law: GasLaw, left: State, right: State) -> RiemannSolution:
    if left.is_vacuum:
        w1r = riemann_invariants(law, right)[0]
        w1 = WaveDescriptor(1, WaveKind.NONE, w1r, w1r)
        w2 = WaveDescriptor(2, WaveKind.RAREFACTION, w1r, eigenvalues(law, right)[1])
        return RiemannSolution(law, left, VACUUM, right, w1, w2)
    if right.is_vacuum:
        w2l = riemann_invariants(law, left)[1]
        w1 = WaveDescriptor(1, WaveKind.RAREFACTION, eigenvalues(law, left)[0], w2l)
        w2 = WaveDescriptor(2, WaveKind.NONE, w2l, w2l)
        return RiemannSolution(law, left, VACUUM, right, w1, w2)
    w2l = riemann_invariants(law, left)[1]
    w1r = riemann_invariants(law, right)[0]
    w1 = WaveDescriptor(1, WaveKind.RAREFACTION, eigenvalues(law, left)[0], w2l)
    w2 = WaveDescriptor(2, WaveKind.RAREFACTION, w1r, eigenvalues(law, right)[1])
    return RiemannSolution(law, left, VACUUM, right, w1, w2, True, (w2l, w1r))


def matching_function(law: GasLaw, left: State, right: State, rho: float) -> float:
    return float(wave_jump(law, rho, left.rho) + wave_jump(law, rho, right.rho)) + right.u - left.u


def solve_riemann(law: GasLaw, left: State, right: State) -> RiemannSolution:
    """Exact Lax solution of the Riemann problem ``left | right``.

    The intermediate density is found with Brent's method on the monotone
    matching function; a vacuum forms when ``omega2(left) <= omega1(right)``.
    """
    if left == right:
        return _constant_solution(law, left)
    if left.is_vacuum or right.is_vacuum:
        return _vacuum_solution(law, left, right)
    w2l = riemann_invariants(law, left)[1]
    w1r = riemann_invariants(law, right)[0]
    if w1r >= w2l:
        return _vacuum_solution(law, left, right)

    def phi(r):
        return matching_function(law, left, right, r)

    hi = max(left.rho, right.rho)
    for _ in range(200):
        if phi(hi) >= 0.0:
            break
        hi *= 4.0
    else:
        raise NoConvergence("could not bracket the intermediate density")
    if phi(hi) == 0.0:
        rho_m = hi
    else:
        try:
            rho_m = brentq(phi, 0.0, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
        except (ValueError, RuntimeError) as exc:
            raise NoConvergence(str(exc)) from exc
    if rho_m < VACUUM_RTOL * max(left.rho, right.rho):
        return _vacuum_solution(law, left, right)
    u_m = left.u - float(wave_jump(law, rho_m, left.rho))
    mid = State(rho_m, u_m)
    return RiemannSolution(law, left, mid, right, _wave1(law, left, mid), _wave2(law, mid, right))


def _fan1_state(law: GasLaw, left: State, xi: float) -> State:
    w2 = riemann_invariants(law, left)[1]
    s = (w2 - xi) / (law.a_gamma + law.sound_coeff)
    if s <= 0.0:
        return VACUUM
    return State(s ** (1.0 / law.theta), xi + law.sound_coeff * s)


def _fan2_state(law: GasLaw, right: State, xi: float) -> State:
    w1 = riemann_invariants(law, right)[0]
    s = (xi - w1) / (law.a_gamma + law.sound_coeff)
    if s <= 0.0:
        return VACUUM
    return State(s ** (1.0 / law.theta), xi - law.sound_coeff * s)


def sample(sol: RiemannSolution, xi: float) -> State:
    """State at similarity coordinate ``xi = x/t`` (right limit at shocks)."""
    zone = sol.zone(xi)
    if zone == "left":
        return sol.left
    if zone == "fan1":
        return _fan1_state(sol.law, sol.left, xi)
    if zone == "mid":
        return sol.mid
    if zone == "vacuum":
        return VACUUM
    if zone == "fan2":
        return _fan2_state(sol.law, sol.right, xi)
    return sol.right


# ---------------------------------------------------------------------------
# batched solver used by the finite-volume scheme and junction scans


def _mid_density_batch(law: GasLaw, rl, ul, rr, ur, maxiter: int = 200):
    """Intermediate density for arrays of non-vacuum, non-cavitating data.

    Safeguarded Newton: a bracket ``[lo, hi]`` is kept and any Newton step
    leaving it is replaced by bisection.
    """
    du = ur - ul
    lo = np.zeros_like(rl)
    hi = np.maximum(rl, rr)

    def F(r):
        return wave_jump(law, r, rl) + wave_jump(law, r, rr) + du

    f_hi = F(hi)
    for _ in range(200):
        grow = f_hi < 0.0
        if not grow.any():
            break
        hi = np.where(grow, hi * 4.0, hi)
        f_hi = np.where(grow, F(hi), f_hi)
    else:
        raise NoConvergence("batched bracket growth failed")
    # two-rarefaction guess
    s = (ul + law.a_gamma * rl**law.theta - (ur - law.a_gamma * rr**law.theta)) / (2.0 * law.a_gamma)
    r = np.clip(np.maximum(s, 0.0) ** (1.0 / law.theta), 0.0, hi)
    r = np.where((r <= lo) | (r >= hi), 0.5 * (lo + hi), r)
    # rounding level of F; near cavitation the root is only defined to it
    noise = 8.0 * np.finfo(float).eps * (np.abs(ul) + np.abs(ur) + law.a_gamma * (rl**law.theta + rr**law.theta))
    done = np.zeros(rl.shape, dtype=bool)
    for _ in range(maxiter):
        f = F(r)
        lo = np.where(f < 0.0, r, lo)
        hi = np.where(f > 0.0, r, hi)
        dfd = wave_jump_derivative(law, r, rl) + wave_jump_derivative(law, r, rr)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = r - f / dfd
        bad = ~np.isfinite(newton) | (newton < lo) | (newton > hi)
        nxt = np.where(bad, 0.5 * (lo + hi), newton)
        # a Newton correction below a few ulps means r is the root to
        # working precision even if it sits on the bracket end
        tiny = np.isfinite(newton) & (np.abs(newton - r) <= 1e-15 * np.maximum(r, 1e-300))
        conv = (f == 0.0) | tiny | (hi - lo <= 1e-15 * hi) | (np.abs(f) <= noise)
        r = np.where(done | (f == 0.0), r, nxt)
        done = done | conv
        if done.all():
            return r
    raise NoConvergence("batched intermediate-density iteration did not converge")


def _jump_point(law: GasLaw, r: float, r0: float) -> tuple[float, float]:
    """Scalar ``wave_jump`` and its derivative."""
    th, g, k = law.theta, law.gamma, law.kappa
    if r <= r0:
        return law.a_gamma * (r**th - r0**th), law.sound_coeff * r ** (th - 1.0)
    d = r - r0
    if d <= SEAM_RTOL * r:
        slope = k * g * (0.5 * (r + r0)) ** (g - 1.0)
    else:
        slope = k * (r**g - r0**g) / d
    f = d * math.sqrt(slope / (r * r0))
    if f <= 1e-300:
        return 0.0, law.sound_coeff * r ** (th - 1.0)
    dg = k * (g * r ** (g - 1.0) * (1.0 / r0 - 1.0 / r) + (r**g - r0**g) / (r * r))
    return f, dg / (2.0 * f)


def _sample_point(law: GasLaw, rl: float, ul: float, rr: float, ur: float, xi: float) -> tuple[float, float]:
    """Pure-float version of ``sample_batch`` for one problem."""
    th, a, c = law.theta, law.a_gamma, law.sound_coeff
    if rl <= 0.0:
        rl, ul = 0.0, 0.0
    if rr <= 0.0:
        rr, ur = 0.0, 0.0
    if rl == rr and ul == ur:
        return rl, ul
    sl, sr = rl**th, rr**th
    w2l, w1r = ul + a * sl, ur - a * sr

    def fan1(x):
        s = max((w2l - x) / (a + c), 0.0)
        return (s ** (1.0 / th), x + c * s) if s > 0.0 else (0.0, 0.0)

    def fan2(x):
        s = max((x - w1r) / (a + c), 0.0)
        return (s ** (1.0 / th), x - c * s) if s > 0.0 else (0.0, 0.0)

    if rl == 0.0 or rr == 0.0 or w1r >= w2l:
        if rr > 0.0 and xi > ur + c * sr:
            return rr, ur
        if rl > 0.0 and xi < ul - c * sl:
            return rl, ul
        if rl > 0.0 and xi <= w2l:
            return fan1(xi)
        if rr > 0.0 and xi >= w1r:
            return fan2(xi)
        return 0.0, 0.0

    du = ur - ul

    def F(r):
        f1, d1 = _jump_point(law, r, rl)
        f2, d2 = _jump_point(law, r, rr)
        return f1 + f2 + du, d1 + d2

    lo, hi = 0.0, max(rl, rr)
    while F(hi)[0] < 0.0:
        hi *= 4.0
    s = (w2l - w1r) / (2.0 * a)
    r = min(s ** (1.0 / th), hi)
    if not lo < r < hi:
        r = 0.5 * (lo + hi)
    noise = 8.0 * 2.220446049250313e-16 * (abs(ul) + abs(ur) + a * (sl + sr))
    for _ in range(200):
        f, df = F(r)
        if abs(f) <= noise:
            break
        if f < 0.0:
            lo = r
        else:
            hi = r
        newton = r - f / df if df > 0.0 else math.nan
        if math.isfinite(newton) and abs(newton - r) <= 1e-15 * r:
            break
        if not (math.isfinite(newton) and lo <= newton <= hi):
            newton = 0.5 * (lo + hi)
        r = newton
        if hi - lo <= 1e-15 * hi:
            break
    else:
        raise NoConvergence("scalar intermediate-density iteration did not converge")
    rm = r
    um = ul - _jump_point(law, rm, rl)[0]
    sm = rm**th
    if rm > rl:
        left_edge = ul - math.sqrt(rm / rl * (law.kappa * (rm**law.gamma - rl**law.gamma) / (rm - rl)
                                               if rm - rl > SEAM_RTOL * rm else law.kappa * law.gamma * (0.5 * (rm + rl)) ** (law.gamma - 1.0)))
        fan_left = False
    else:
        left_edge = ul - c * sl
        fan_left = True
    if rm > rr:
        mid_hi = ur + math.sqrt(rm / rr * (law.kappa * (rm**law.gamma - rr**law.gamma) / (rm - rr)
                                           if rm - rr > SEAM_RTOL * rm else law.kappa * law.gamma * (0.5 * (rm + rr)) ** (law.gamma - 1.0)))
        right_edge = mid_hi
        fan_right = False
    else:
        mid_hi = um + c * sm
        right_edge = ur + c * sr
        fan_right = True
    if xi < left_edge:
        return rl, ul
    if fan_left and xi <= um - c * sm:
        return fan1(xi)
    if xi < mid_hi:
        return rm, um
    if fan_right and xi <= right_edge:
        return fan2(xi)
    return rr, ur


SMALL_BATCH = 16


def sample_batch(law: GasLaw, rl, ul, rr, ur, xi=0.0):
    """Vectorised exact Riemann solution sampled at ``xi`` (right limits).

    Returns ``(rho, u)`` arrays. Handles vacuum data and cavitation.
    """
    rl, ul, rr, ur = (np.atleast_1d(np.asarray(x, dtype=float)) for x in (rl, ul, rr, ur))
    rl, ul, rr, ur = np.broadcast_arrays(rl, ul, rr, ur)
    xi = np.broadcast_to(np.asarray(xi, dtype=float), rl.shape)
    if rl.size <= SMALL_BATCH:
        pts = [_sample_point(law, *map(float, v)) for v in zip(rl.flat, ul.flat, rr.flat, ur.flat, xi.flat)]
        out = np.array(pts, dtype=float).reshape(rl.shape + (2,))
        return out[..., 0], out[..., 1]
    th, a, c = law.theta, law.a_gamma, law.sound_coeff
    ul = np.where(rl > 0.0, ul, 0.0)
    ur = np.where(rr > 0.0, ur, 0.0)
    out_r = np.zeros(rl.shape)
    out_u = np.zeros(rl.shape)
    sl = rl**th
    sr = rr**th
    w2l = ul + a * sl
    w1r = ur - a * sr
    l1l = ul - c * sl
    l2r = ur + c * sr

    def fan1(x):
        s = np.maximum((w2l - x) / (a + c), 0.0)
        return s ** (1.0 / th), np.where(s > 0.0, x + c * s, 0.0)

    def fan2(x):
        s = np.maximum((x - w1r) / (a + c), 0.0)
        return s ** (1.0 / th), np.where(s > 0.0, x - c * s, 0.0)

    same = (rl == rr) & (ul == ur)
    vac_l = rl == 0.0
    vac_r = rr == 0.0
    cav = ~same & ~vac_l & ~vac_r & (w1r >= w2l)
    regular = ~same & ~vac_l & ~vac_r & ~cav

    # vacuum on one or both sides, or generated vacuum: two rarefactions
    # separated by (possibly empty) vacuum
    fr1, fu1 = fan1(xi)
    fr2, fu2 = fan2(xi)
    left_active = ~vac_l
    right_active = ~vac_r
    res_r = np.zeros(rl.shape)
    res_u = np.zeros(rl.shape)
    # left part
    in_left = left_active & (xi < l1l)
    in_fan1 = left_active & ~in_left & (xi <= w2l)
    in_fan2 = right_active & (xi >= w1r) & (xi <= l2r)
    in_right = right_active & (xi > l2r)
    res_r = np.where(in_left, rl, res_r)
    res_u = np.where(in_left, ul, res_u)
    res_r = np.where(in_fan1, fr1, res_r)
    res_u = np.where(in_fan1, fu1, res_u)
    res_r = np.where(in_fan2 & ~in_fan1 & ~in_left, fr2, res_r)
    res_u = np.where(in_fan2 & ~in_fan1 & ~in_left, fu2, res_u)
    res_r = np.where(in_right, rr, res_r)
    res_u = np.where(in_right, ur, res_u)
    vac_mask = vac_l | vac_r | cav
    out_r = np.where(vac_mask, res_r, out_r)
    out_u = np.where(vac_mask, res_u, out_u)

    out_r = np.where(same, rl, out_r)
    out_u = np.where(same, ul, out_u)

    if regular.any():
        flat = [x[regular] for x in (rl, ul, rr, ur, xi)]
        r_l, u_l, r_r, u_r, x = flat
        rm = _mid_density_batch(law, r_l, u_l, r_r, u_r)
        um = u_l - wave_jump(law, rm, r_l)
        s_m = rm**th
        # 1-wave
        shock1 = rm > r_l
        with np.errstate(invalid="ignore", divide="ignore"):
            sig1 = u_l - np.sqrt(rm / r_l * _pressure_slope(law, rm, r_l))
            sig2 = u_r + np.sqrt(rm / r_r * _pressure_slope(law, rm, r_r))
        l1m = um - c * s_m
        l2m = um + c * s_m
        sl_ = r_l**th
        sr_ = r_r**th
        w2l_ = u_l + a * sl_
        w1r_ = u_r - a * sr_
        l1l_ = u_l - c * sl_
        l2r_ = u_r + c * sr_
        left_edge = np.where(shock1, sig1, l1l_)
        s = np.maximum((w2l_ - x) / (a + c), 0.0)
        f1r, f1u = s ** (1.0 / th), x + c * s
        shock2 = rm > r_r
        right_edge = np.where(shock2, sig2, l2r_)
        s2 = np.maximum((x - w1r_) / (a + c), 0.0)
        f2r, f2u = s2 ** (1.0 / th), x - c * s2
        rr_out = np.where(x < left_edge, r_l, 0.0)
        uu_out = np.where(x < left_edge, u_l, 0.0)
        in_f1 = ~shock1 & (x >= left_edge) & (x <= l1m)
        mid_hi = np.where(shock2, sig2, l2m)
        in_mid = (x >= left_edge) & ~in_f1 & (x < mid_hi)
        in_f2 = ~shock2 & (x >= mid_hi) & (x <= right_edge)
        in_r = ~(x < left_edge) & ~in_f1 & ~in_mid & ~in_f2
        rr_out = np.where(in_f1, f1r, rr_out)
        uu_out = np.where(in_f1, f1u, uu_out)
        rr_out = np.where(in_mid, rm, rr_out)
        uu_out = np.where(in_mid, um, uu_out)
        rr_out = np.where(in_f2, f2r, rr_out)
        uu_out = np.where(in_f2, f2u, uu_out)
        rr_out = np.where(in_r, r_r, rr_out)
        uu_out = np.where(in_r, u_r, uu_out)
        out_r[regular] = rr_out
        out_u[regular] = uu_out
    out_u = np.where(out_r > 0.0, out_u, 0.0)
    return out_r, out_u


def godunov_flux(law: GasLaw, rl, ul, rr, ur):
    """Physical flux evaluated at the exact Riemann state on ``x/t = 0``."""
    r, u = sample_batch(law, rl, ul, rr, ur, 0.0)
    m = r * u
    return m, m * u + law.kappa * r**law.gamma
