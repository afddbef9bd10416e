"""Weighted Gauss quadrature on [-1, 1] with node doubling.

The velocity integrals of the isentropic Maxwellian all take the form

    int_{-1}^{1} (1 - z^2)^lam f(z) dz

with ``lam > 0`` possibly non-integer. The weight is absorbed into
Gauss-Jacobi nodes so that polynomial ``f`` is integrated exactly and the
endpoint behaviour of the weight costs no accuracy. Interior breakpoints
split the interval where ``f`` has kinks; on a sub-interval only the
endpoints that touch +-1 carry the singular weight factor.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable

import numpy as np
from scipy.special import roots_jacobi

from .errors import NonConvergedQuadrature

NODE_COUNTS = (16, 32, 64, 128, 256, 512)
RTOL = 1e-11


@lru_cache(maxsize=256)
def _jacobi_rule(n: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    if alpha == 0.0 and beta == 0.0:
        x, w = np.polynomial.legendre.leggauss(n)
    else:
        x, w = roots_jacobi(n, alpha, beta)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _pieces(lam: float, breakpoints: Iterable[float]) -> list[tuple[float, float]]:
    cuts = sorted({float(b) for b in breakpoints if -1.0 < b < 1.0})
    edges = [-1.0, *cuts, 1.0]
    return [(a, b) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def _rule_on_piece(n: int, lam: float, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for int_a^b (1-z^2)^lam f(z) dz."""
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    right_sing = b == 1.0
    left_sing = a == -1.0
    alpha = lam if right_sing else 0.0
    beta = lam if left_sing else 0.0
    t, w = _jacobi_rule(n, alpha, beta)
    z = mid + half * t
    # (1-z)^lam = half^lam (1-t)^lam on a piece ending at +1; likewise at -1
    weight = w * half
    if right_sing:
        weight = weight * half**lam
    else:
        weight = weight * (1.0 - z) ** lam
    if left_sing:
        weight = weight * half**lam
    else:
        weight = weight * (1.0 + z) ** lam
    return z, weight


def weighted_integral(
    f: Callable[[np.ndarray], np.ndarray],
    lam: float,
    breakpoints: Iterable[float] = (),
    rtol: float = RTOL,
    scale: float | None = None,
) -> float:
    """Integrate ``(1-z^2)^lam f(z)`` over [-1, 1] adaptively.

    ``f`` must accept a numpy array. Node counts double from 16 to 512 and
    the iteration stops once two successive values agree to ``rtol``
    relative to ``max(|I|, int |f| w, scale)``.

    Raises
    ------
    NonConvergedQuadrature
        If 512 nodes per piece still disagree with 256.
    """
    pieces = _pieces(lam, breakpoints)
    previous = None
    for n in NODE_COUNTS:
        total = 0.0
        total_abs = 0.0
        for a, b in pieces:
            z, w = _rule_on_piece(n, lam, a, b)
            values = np.asarray(f(z), dtype=float)
            total += float(np.dot(w, values))
            total_abs += float(np.dot(w, np.abs(values)))
        if previous is not None:
            ref = max(abs(total), total_abs, scale or 0.0)
            if abs(total - previous) <= rtol * ref or ref == 0.0:
                return total
        previous = total
    raise NonConvergedQuadrature(
        f"weighted quadrature did not converge (lam={lam}, last={previous})"
    )


def gauss_legendre(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    panels: int = 1,
    rtol: float = RTOL,
) -> float:
    """Composite Gauss-Legendre on [a, b] with node doubling per panel."""
    if b == a:
        return 0.0
    edges = np.linspace(a, b, panels + 1)
    previous = None
    for n in NODE_COUNTS:
        x, w = _jacobi_rule(n, 0.0, 0.0)
        total = 0.0
        total_abs = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
            values = np.asarray(f(mid + half * x), dtype=float)
            total += half * float(np.dot(w, values))
            total_abs += half * float(np.dot(w, np.abs(values)))
        if previous is not None:
            ref = max(abs(total), total_abs)
            if abs(total - previous) <= rtol * ref or ref == 0.0:
                return total
        previous = total
    raise NonConvergedQuadrature(f"Gauss-Legendre did not converge on [{a}, {b}]")
