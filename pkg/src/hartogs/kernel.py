"""Reproducing kernel evaluation, basis functions, Gram tests, and norm checks.

The kernel of the pair (P, m) is

    K(z, w) = prod_{j>=2} 1/(z_j conj(w_j)) * prod_j (1 - P_j(u))^{-m_j},
    u = phi(z) diamond conj(phi(w)),

with orthonormal basis e_alpha(z) = sqrt(A(alpha)) phi(z)^alpha / (z_2...z_n).
The closed form is preferred; the truncated basis series exists to validate
the expansion and for kernels without a hand-simplified form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .coeff import CoeffTable, coeff_function, hartogs_coeff_closed
from .errors import InvalidMultiplicity, OutsideDomain, WindowTooSmall, ZeroCoordinate
from .geometry import forward, triangle_contains
from .polytuple import MultiIndex, PolyTuple, hartogs_tuple, poly_eval


@dataclass(frozen=True)
class KernelContext:
    """A tuple, multiplicities injected into the kernel, and a coefficient table
    large enough for the series truncations the caller intends to request."""

    P: PolyTuple
    m: tuple[int, ...]
    table: CoeffTable

    @property
    def bounds(self) -> MultiIndex:
        return self.table.bounds


def make_context(P: PolyTuple, m: Sequence[int], bounds: MultiIndex, method: str = "auto") -> KernelContext:
    if any(mj < 1 for mj in m):
        raise InvalidMultiplicity(f"m entries must be >= 1, got {tuple(m)}")
    return KernelContext(P=P, m=tuple(m), table=coeff_function(P, m, bounds, method=method))


def _hadamard_phi(z: Sequence[complex], w: Sequence[complex]) -> tuple[complex, ...]:
    pz, pw = forward(z), forward(w)
    return tuple(a * b.conjugate() for a, b in zip(pz, pw))


def kernel_eval(ctx: KernelContext, z: Sequence[complex], w: Sequence[complex]) -> complex:
    """Closed-form kernel value; both points must lie in the triangle."""
    for point in (z, w):
        if not triangle_contains(ctx.P, point):
            raise OutsideDomain(f"point {tuple(point)} outside the triangle")
    u = _hadamard_phi(z, w)
    value = 1 + 0j
    for j in range(1, ctx.P.n):
        value /= complex(z[j]) * complex(w[j]).conjugate()
    for j, poly in enumerate(ctx.P.polys):
        value /= (1 - poly_eval(poly, u)) ** ctx.m[j]
    return value


def kernel_series_eval(ctx: KernelContext, z: Sequence[complex], w: Sequence[complex], cutoff: int) -> complex:
    """Partial sum of the basis expansion over total degree <= cutoff."""
    for point in (z, w):
        if not triangle_contains(ctx.P, point):
            raise OutsideDomain(f"point {tuple(point)} outside the triangle")
    if any(cutoff > b for b in ctx.bounds):
        raise WindowTooSmall(f"cutoff {cutoff} exceeds table bounds {ctx.bounds}")
    u = _hadamard_phi(z, w)
    n = ctx.P.n
    powers = [[1 + 0j] for _ in range(n)]
    for j in range(n):
        for _ in range(cutoff):
            powers[j].append(powers[j][-1] * u[j])
    prefactor = 1 + 0j
    for j in range(1, n):
        prefactor /= complex(z[j]) * complex(w[j]).conjugate()
    total = 0j
    for alpha in _simplex(n, cutoff):
        a = ctx.table.value(alpha)
        if a:
            total += float(a) * math.prod(powers[j][alpha[j]] for j in range(n))
    return prefactor * total


def _simplex(n: int, cutoff: int):
    if n == 1:
        for k in range(cutoff + 1):
            yield (k,)
        return
    for k in range(cutoff + 1):
        for rest in _simplex(n - 1, cutoff - k):
            yield (k, *rest)


def basis_eval(ctx: KernelContext, alpha: MultiIndex, z: Sequence[complex]) -> complex:
    """e_alpha(z); defined wherever the tail coordinates are nonzero."""
    z = tuple(complex(c) for c in z)
    n = ctx.P.n
    for j in range(1, n):
        if z[j] == 0:
            raise ZeroCoordinate(f"coordinate {j + 1} is zero")
    phi = forward(z)
    value = math.sqrt(float(ctx.table.value(alpha))) + 0j
    for j in range(n):
        if alpha[j]:
            value *= phi[j] ** alpha[j]
    for j in range(1, n):
        value /= z[j]
    return value


def gram_psd_check(ctx: KernelContext, points: Sequence[Sequence[complex]]) -> float:
    """Minimum eigenvalue of the Gram matrix [K(z_i, z_j)] over the points."""
    k = len(points)
    gram = np.empty((k, k), dtype=complex)
    for i in range(k):
        for j in range(k):
            gram[i, j] = kernel_eval(ctx, points[i], points[j])
    gram = 0.5 * (gram + gram.conj().T)
    return float(np.linalg.eigvalsh(gram)[0])


# --- quadrature on the unit disc and the torus --------------------------------

def gauss_legendre_01(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights transplanted to [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    return 0.5 * (x + 1.0), 0.5 * w


def disc_integral(f, radial_nodes: int = 32, angular_nodes: int = 32) -> float:
    """Area integral of f over the unit disc.

    Substituting u = r^2 turns the radial part into an integral over [0, 1]
    handled by Gauss-Legendre; the angular part uses the trapezoid rule,
    exact for trigonometric polynomials of degree < angular_nodes.
    """
    u, wu = gauss_legendre_01(radial_nodes)
    thetas = 2.0 * math.pi * np.arange(angular_nodes) / angular_nodes
    total = 0.0
    for ui, wi in zip(u, wu):
        r = math.sqrt(ui)
        ring = sum(f(r * cmath.exp(1j * t)) for t in thetas)
        total += wi * ring
    return total * math.pi / angular_nodes


def beta_integral_check(l: int, k: int, radial_nodes: int = 32) -> tuple[float, float]:
    """Disc integral of |w|^(2l) (1-|w|^2)^k: quadrature value and closed form."""
    if l < 0 or k < 0:
        raise ValueError("l and k must be nonnegative")
    numeric = disc_integral(lambda w: abs(w) ** (2 * l) * (1.0 - abs(w) ** 2) ** k,
                            radial_nodes=radial_nodes)
    closed = math.pi / ((k + 1) * math.comb(l + k + 1, k + 1))
    return numeric, closed


def hardy_norm_check(n: int, alpha: MultiIndex, scale: float = 1.0,
                     angular_nodes: int = 8, kmax: int = 26) -> float:
    """Hardy-type squared norm of scale*e_alpha on the Hartogs triangle, m = 1.

    Evaluates the torus integral with weight prod t_j^(2j-1) by trapezoid
    quadrature and takes the supremum over the diagonal grid t = 1 - 2^-k.
    The integrand is monotone in t for basis monomials, so the grid supremum
    sits at the largest t; k runs high enough that the deficit of t^(2|alpha|+n)
    from 1 is below the check tolerances.
    """
    ctx = make_context(hartogs_tuple(n), (1,) * n, alpha)
    thetas = [2.0 * math.pi * i / angular_nodes for i in range(angular_nodes)]
    best = 0.0
    for k in range(1, kmax + 1):
        t = 1.0 - 0.5 ** k
        tail = [t ** (n - j) for j in range(n)]
        total = 0.0
        for combo in _theta_grid(n, thetas):
            z = tuple(tail[j] * cmath.exp(1j * combo[j]) for j in range(n))
            total += abs(scale * basis_eval(ctx, alpha, z)) ** 2
        weight = math.prod(t ** (2 * j + 1) for j in range(n))
        best = max(best, total * weight / angular_nodes ** n)
    return best


def _theta_grid(n: int, thetas: Sequence[float]):
    if n == 0:
        yield ()
        return
    for t in thetas:
        for rest in _theta_grid(n - 1, thetas):
            yield (t, *rest)


def bergman_norm_check(m: Sequence[int], alpha: MultiIndex, radial_nodes: int = 32) -> float:
    """Weighted Bergman squared norm of e_alpha on the Hartogs triangle.

    Requires every m_j >= 2.  The weighted volume integral over the triangle
    reduces, through the quotient change of variables, to a product of disc
    integrals of |w|^(2 alpha_j) (1-|w|^2)^(m_j - 2), each evaluated by
    quadrature; the normalization makes the expected value 1.
    """
    m = tuple(m)
    if any(mj < 2 for mj in m):
        raise InvalidMultiplicity(f"all m_j must be >= 2, got {m}")
    if len(alpha) != len(m):
        raise ValueError("alpha and m must have the same length")
    value = float(hartogs_coeff_closed(m, alpha))
    for mj, aj in zip(m, alpha):
        integral = disc_integral(lambda w: abs(w) ** (2 * aj) * (1.0 - abs(w) ** 2) ** (mj - 2),
                                 radial_nodes=radial_nodes)
        value *= (mj - 1) / math.pi * integral
    return value
