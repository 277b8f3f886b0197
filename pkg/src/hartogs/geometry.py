"""The triangle biholomorphism, membership predicates, and polydisc radii.

The change of variables sends z to (z_1/z_2, ..., z_{n-1}/z_n, z_n); its
inverse is the polynomial map w -> (w_1*...*w_n, w_2*...*w_n, ..., w_n).
Membership tests work with squared moduli in real arithmetic and use strict
inequalities: the domains are open, boundary points are outside.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ZeroCoordinate
from .polytuple import MultiIndex, PolyTuple, tilde_restrictions, univariate_eval

Point = tuple[complex, ...]

_BISECTION_TOL = 1e-12


def forward(p: Sequence[complex]) -> Point:
    """Quotient coordinates (z_1/z_2, ..., z_{n-1}/z_n, z_n); tail entries must be nonzero."""
    p = tuple(complex(z) for z in p)
    n = len(p)
    for j in range(1, n):
        if p[j] == 0:
            raise ZeroCoordinate(f"coordinate {j + 1} is zero; quotient map undefined")
    return tuple(p[j] / p[j + 1] for j in range(n - 1)) + (p[n - 1],)


def inverse(p: Sequence[complex]) -> Point:
    """Product coordinates (w_1*...*w_n, ..., w_n); defined everywhere."""
    p = tuple(complex(z) for z in p)
    n = len(p)
    out = []
    tail = 1 + 0j
    for j in range(n - 1, -1, -1):
        tail *= p[j]
        out.append(tail)
    return tuple(reversed(out))


def change_of_variables(p: Sequence[complex], direction: str) -> Point:
    if direction == "forward":
        return forward(p)
    if direction == "inverse":
        return inverse(p)
    raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def jacobian_inverse(p: Sequence[complex]) -> complex:
    """Jacobian determinant of the product map: z_2^1 * z_3^2 * ... * z_n^(n-1)."""
    p = tuple(complex(z) for z in p)
    out = 1 + 0j
    for j in range(1, len(p)):
        out *= p[j] ** j
    return out


def _squared_quotient_moduli(p: Sequence[complex]) -> list[float] | None:
    """|phi(p)_j|^2 for all j, or None when some tail coordinate vanishes."""
    mods = [abs(complex(z)) ** 2 for z in p]
    n = len(mods)
    if any(mods[j] == 0 for j in range(1, n)):
        return None
    return [mods[j] / mods[j + 1] for j in range(n - 1)] + [mods[n - 1]]


def triangle_contains(P: PolyTuple, p: Sequence[complex]) -> bool:
    """Strict membership of p in the triangle of P (tail coordinates nonzero)."""
    u = _squared_quotient_moduli(p)
    if u is None:
        return False
    for poly in P.polys:
        val = 0.0
        for alpha, coeff in poly.items():
            val += float(coeff) * math.prod(u[j] ** a for j, a in enumerate(alpha) if a)
        if not val < 1.0:
            return False
    return True


def q_ball_contains(q: Mapping[MultiIndex, Fraction], p: Sequence[complex]) -> bool:
    """Strict membership |Q(p diamond conj(p))| < 1."""
    mods = [abs(complex(z)) ** 2 for z in p]
    val = 0j
    for alpha, coeff in q.items():
        val += complex(coeff) * math.prod(mods[j] ** a for j, a in enumerate(alpha) if a)
    return abs(val) < 1.0


def polydisc_radii(P: PolyTuple) -> list[float]:
    """Radii r_j with r_j^2 the unique positive root of (restriction of P_j)(t) = 1.

    The restriction has nonnegative coefficients and a positive linear one, so
    it is strictly increasing on [0, oo) and the root is found by bisection.
    """
    radii = []
    for j, g in enumerate(tilde_restrictions(P)):
        a_j = float(P.linear_coefficient(j))
        hi = max(1.0, 1.0 / a_j)
        while univariate_eval(g, hi) < 1.0:
            hi *= 2.0
        lo = 0.0
        while hi - lo > _BISECTION_TOL:
            mid = 0.5 * (lo + hi)
            if univariate_eval(g, mid) < 1.0:
                lo = mid
            else:
                hi = mid
        radii.append(math.sqrt(0.5 * (lo + hi)))
    return radii
