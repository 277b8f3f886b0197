"""Exact coefficient tables for the expansions of 1/(1-Q)^k and their products.

Tables are dense row-major arrays of Fractions over a finite lattice box.
Two independent routes compute the same numbers:

* recursion  -- A_k(alpha) = A_{k-1}(alpha) + sum_gamma q_gamma A_k(alpha - gamma),
  well founded because Q has no constant term;
* oracle     -- truncated geometric-binomial series
  sum_l C(k+l-1, k-1) Q(z)^l, exact on the box once l exceeds the box's
  total degree.

The product table for an n-tuple is the n-fold convolution of the component
tables; for tuples whose components each depend on their own variable only,
it factors into univariate tables.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Mapping, Sequence

from .errors import ConstantTermPresent, NegativeCoefficient, WindowTooSmall
from .polytuple import (
    MultiIndex,
    PolyTuple,
    TermMap,
    admissibility_degree,
    box,
    box_size,
    format_rational,
    tilde_restrictions,
    total_degree,
)


@dataclass(frozen=True)
class CoeffTable:
    """Dense table alpha -> value on the box 0 <= alpha <= bounds.

    Lookups at indices with a negative entry return 0 (the expansion
    coefficients vanish off the nonnegative lattice); indices beyond the
    bounds raise WindowTooSmall.
    """

    bounds: MultiIndex
    values: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.bounds)

    def offset(self, alpha: MultiIndex) -> int:
        off = 0
        for a, b in zip(alpha, self.bounds):
            off = off * (b + 1) + a
        return off

    def value(self, alpha: MultiIndex) -> Fraction:
        if any(a < 0 for a in alpha):
            return Fraction(0)
        if any(a > b for a, b in zip(alpha, self.bounds)):
            raise WindowTooSmall(f"alpha {alpha} outside table bounds {self.bounds}")
        return self.values[self.offset(alpha)]

    def covers(self, bounds: MultiIndex) -> bool:
        return all(b <= mine for b, mine in zip(bounds, self.bounds))

    def to_csv(self, stream: IO[str]) -> None:
        """Columns alpha_1..alpha_n, value, with values as exact rationals."""
        writer = csv.writer(stream)
        writer.writerow([f"alpha_{j + 1}" for j in range(self.n)] + ["value"])
        for alpha in box(self.bounds):
            writer.writerow([*alpha, format_rational(self.value(alpha))])


def _check_expandable(q: Mapping[MultiIndex, Fraction]) -> None:
    for alpha, coeff in q.items():
        if coeff < 0:
            raise NegativeCoefficient(f"term {alpha}: coefficient {coeff} < 0")
        if total_degree(alpha) == 0 and coeff != 0:
            raise ConstantTermPresent("Q has a constant term; expansion of 1/(1-Q)^k is not formal")


def _indicator(bounds: MultiIndex) -> list[Fraction]:
    values = [Fraction(0)] * box_size(bounds)
    values[0] = Fraction(1)
    return values


def _strides(bounds: MultiIndex) -> tuple[int, ...]:
    strides = [1] * len(bounds)
    for i in range(len(bounds) - 2, -1, -1):
        strides[i] = strides[i + 1] * (bounds[i + 1] + 1)
    return tuple(strides)


def reciprocal_power_coeffs(
    q: Mapping[MultiIndex, Fraction],
    k: int,
    bounds: MultiIndex,
    mode: str = "recursion",
) -> CoeffTable:
    """Table of the expansion coefficients of 1/(1-Q)^k on the box.

    Q is a term map with nonnegative rational coefficients and no constant
    term.  mode "recursion" uses the k-step coefficient recursion; mode
    "oracle" sums the truncated binomial series of powers of Q.
    """
    if k < 0:
        raise ValueError(f"power k must be >= 0, got {k}")
    _check_expandable(q)
    if mode == "recursion":
        values = _recursion_values(q, k, bounds)
    elif mode == "oracle":
        values = _oracle_values(q, k, bounds)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return CoeffTable(bounds=tuple(bounds), values=tuple(values))


def _recursion_values(q: Mapping[MultiIndex, Fraction], k: int, bounds: MultiIndex) -> list[Fraction]:
    strides = _strides(bounds)
    cells = list(box(bounds))
    # Offsets of alpha - gamma relative to alpha are constant shifts; row-major
    # order visits alpha - gamma before alpha because gamma != 0.
    shifts = [(tuple(g), coeff, sum(gi * si for gi, si in zip(g, strides)))
              for g, coeff in q.items()]
    prev = _indicator(bounds)
    for _ in range(k):
        cur = [Fraction(0)] * len(prev)
        for off, alpha in enumerate(cells):
            val = prev[off]
            for gamma, coeff, shift in shifts:
                if all(a >= g for a, g in zip(alpha, gamma)):
                    val += coeff * cur[off - shift]
            cur[off] = val
        prev = cur
    return prev


def _truncated_mul(a: TermMap, b: Mapping[MultiIndex, Fraction], bounds: MultiIndex) -> TermMap:
    out: TermMap = {}
    for ga, va in a.items():
        for gb, vb in b.items():
            mono = tuple(x + y for x, y in zip(ga, gb))
            if all(m <= bound for m, bound in zip(mono, bounds)):
                out[mono] = out.get(mono, Fraction(0)) + va * vb
    return {m: v for m, v in out.items() if v}


def _oracle_values(q: Mapping[MultiIndex, Fraction], k: int, bounds: MultiIndex) -> list[Fraction]:
    values = _indicator(bounds)
    if k == 0:
        return values
    strides = _strides(bounds)
    power: TermMap = {tuple(0 for _ in bounds): Fraction(1)}
    # Q has no constant term, so Q^l only reaches total degree >= l; beyond the
    # box's total degree nothing can land inside it.
    for l in range(1, sum(bounds) + 1):
        power = _truncated_mul(power, q, bounds)
        if not power:
            break
        c = math.comb(k + l - 1, k - 1)
        for mono, v in power.items():
            values[sum(m * s for m, s in zip(mono, strides))] += c * v
    return values


def convolve(a: CoeffTable, b: CoeffTable, bounds: MultiIndex) -> CoeffTable:
    """Convolution (a*b)(alpha) = sum_{gamma <= alpha} a(gamma) b(alpha-gamma) on the box."""
    if not a.covers(bounds) or not b.covers(bounds):
        raise WindowTooSmall("convolution operands must cover the requested bounds")
    strides = _strides(bounds)
    a_nz = [(alpha, a.value(alpha)) for alpha in box(bounds) if a.value(alpha)]
    b_nz = [(alpha, b.value(alpha)) for alpha in box(bounds) if b.value(alpha)]
    integral = all(v.denominator == 1 for _, v in a_nz) and all(v.denominator == 1 for _, v in b_nz)
    if integral:
        acc: list = [0] * box_size(bounds)
        a_items = [(alpha, v.numerator) for alpha, v in a_nz]
        b_items = [(alpha, v.numerator) for alpha, v in b_nz]
    else:
        acc = [Fraction(0)] * box_size(bounds)
        a_items, b_items = a_nz, b_nz
    for ga, va in a_items:
        room = tuple(bound - g for g, bound in zip(ga, bounds))
        base = sum(g * s for g, s in zip(ga, strides))
        for gb, vb in b_items:
            if all(x <= y for x, y in zip(gb, room)):
                acc[base + sum(g * s for g, s in zip(gb, strides))] += va * vb
    return CoeffTable(bounds=tuple(bounds), values=tuple(Fraction(v) for v in acc))


def univariate_coeffs(p: Mapping[int, Fraction], k: int, kmax: int, mode: str = "recursion") -> list[Fraction]:
    """Coefficients of 1/(1-p(t))^k up to degree kmax, for univariate p."""
    q = {(e,): Fraction(c) for e, c in p.items()}
    table = reciprocal_power_coeffs(q, k, (kmax,), mode=mode)
    return [table.value((l,)) for l in range(kmax + 1)]


def component_tables(P: PolyTuple, m: Sequence[int], bounds: MultiIndex) -> list[CoeffTable]:
    """Per-component tables of 1/(1-P_j)^{m_j} on the box."""
    return [reciprocal_power_coeffs(P.polys[j], m[j], bounds) for j in range(P.n)]


def coeff_function(
    P: PolyTuple,
    m: Sequence[int],
    bounds: MultiIndex,
    method: str = "auto",
) -> CoeffTable:
    """Table of the coefficient function of the pair (P, m) on the box.

    method "convolution" folds the component tables; "product" multiplies the
    univariate restriction tables componentwise and is valid exactly when every
    P_j depends on z_j alone; "auto" picks the product route in that case.
    """
    m = tuple(m)
    if len(m) != P.n or any(mj < 1 for mj in m):
        raise ValueError(f"m must be {P.n} integers >= 1, got {m}")
    if len(bounds) != P.n or any(b < 0 for b in bounds):
        raise ValueError(f"bounds must be {P.n} nonnegative integers, got {bounds}")
    admissible = admissibility_degree(P).admissible
    if method == "auto":
        method = "product" if admissible else "convolution"
    if method == "product":
        if not admissible:
            raise ValueError("product method requires each P_j to depend on z_j alone")
        tildes = tilde_restrictions(P)
        axis = [univariate_coeffs(tildes[j], m[j], bounds[j]) for j in range(P.n)]
        values = [math.prod((axis[j][alpha[j]] for j in range(P.n)), start=Fraction(1))
                  for alpha in box(bounds)]
        return CoeffTable(bounds=tuple(bounds), values=tuple(values))
    if method != "convolution":
        raise ValueError(f"unknown method {method!r}")
    tables = component_tables(P, m, bounds)
    out = tables[0]
    for t in tables[1:]:
        out = convolve(out, t, bounds)
    return out


def hartogs_coeff_closed(m: Sequence[int], alpha: MultiIndex) -> Fraction:
    """Closed form for the Hartogs tuple: product of binomials C(alpha_j+m_j-1, m_j-1)."""
    if any(mj < 1 for mj in m):
        raise ValueError(f"m entries must be >= 1, got {tuple(m)}")
    if any(a < 0 for a in alpha):
        return Fraction(0)
    return Fraction(math.prod(math.comb(a + mj - 1, mj - 1) for a, mj in zip(alpha, m)))
