"""Finite-window Hausdorff-moment testing of the subnormality sequences.

Joint subnormality of the multiplication tuple is equivalent to every
shifted reciprocal-coefficient multisequence being a Hausdorff moment
multisequence.  The finite certificate checked here is the standard
necessary condition: all signed forward differences of the (scaled)
sequence up to a given order are nonnegative, decided in exact rational
arithmetic.  A PASS is therefore reported as consistency up to that order,
never as a proof; a FAIL comes with the lexicographically first witness.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .coeff import coeff_function, univariate_coeffs
from .errors import NotAdmissible, WindowTooSmall
from .polytuple import (
    MultiIndex,
    PolyTuple,
    add_index,
    admissibility_degree,
    box,
    hartogs_tuple,
    tilde_restrictions,
    total_degree,
)


@dataclass(frozen=True)
class MomentSequence:
    """Values beta -> s(beta) on the box beta <= window + margin.

    The verdict of a monotonicity check quantifies over beta <= window; the
    margin supplies the extra reach the differences need.  scale rescales the
    sequence to s(beta)/scale^|beta| before differencing, for sequences whose
    natural bound is scale^|beta| rather than 1.
    """

    n: int
    window: MultiIndex
    margin: int
    values: dict[MultiIndex, Fraction]
    scale: Fraction = Fraction(1)

    def value(self, beta: MultiIndex) -> Fraction:
        try:
            return self.values[beta]
        except KeyError:
            raise WindowTooSmall(f"beta {beta} not covered by the sequence window") from None

    def scaled(self, beta: MultiIndex) -> Fraction:
        return self.value(beta) / self.scale ** total_degree(beta)


def embedded_shift(beta: MultiIndex) -> MultiIndex:
    """The lattice shift sum_j beta_j * (tail increment of z_j); entry k is
    the running sum beta_1 + ... + beta_{k+1}."""
    return tuple(itertools.accumulate(beta))


def moment_sequence(
    P: PolyTuple,
    m: Sequence[int],
    gamma: MultiIndex,
    variant: str = "general",
    window: MultiIndex | None = None,
    margin: int = 4,
    scale: Fraction | int = 1,
) -> MomentSequence:
    """The subnormality multisequence beta -> 1/A(gamma + embedded beta).

    variant "general" reads the full coefficient table of (P, m); variant
    "admissible" uses the axis factorization, valid exactly when each P_j
    depends on z_j alone.
    """
    n = P.n
    if window is None:
        window = (2,) * n
    reach = tuple(w + margin for w in window)
    values: dict[MultiIndex, Fraction] = {}
    if variant == "admissible":
        if not admissibility_degree(P).admissible:
            raise NotAdmissible("admissible variant needs each P_j to depend on z_j alone")
        tildes = tilde_restrictions(P)
        kmax = [gamma[j] + sum(reach[: j + 1]) for j in range(n)]
        axis = [univariate_coeffs(tildes[j], m[j], kmax[j]) for j in range(n)]
        for beta in box(reach):
            shift = embedded_shift(beta)
            values[beta] = Fraction(1) / math.prod(
                (axis[j][gamma[j] + shift[j]] for j in range(n)), start=Fraction(1))
    elif variant == "general":
        bounds = tuple(gamma[j] + sum(reach[: j + 1]) for j in range(n))
        table = coeff_function(P, m, bounds)
        for beta in box(reach):
            values[beta] = Fraction(1) / table.value(add_index(gamma, embedded_shift(beta)))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return MomentSequence(n=n, window=tuple(window), margin=margin,
                          values=values, scale=Fraction(scale))


def product_sequence(a: MomentSequence, b: MomentSequence) -> MomentSequence:
    """Pointwise product; moment multisequences are closed under products."""
    if a.n != b.n or a.window != b.window or a.margin != b.margin:
        raise ValueError("sequences must share window and margin")
    return MomentSequence(
        n=a.n, window=a.window, margin=a.margin,
        values={beta: a.values[beta] * b.values[beta] for beta in a.values},
        scale=a.scale * b.scale,
    )


@dataclass(frozen=True)
class MonotonicityReport:
    passed: bool
    order: int
    window: MultiIndex
    witness: tuple[MultiIndex, MultiIndex] | None  # (beta, k) of the first failure
    checked: int

    @property
    def message(self) -> str:
        if self.passed:
            return f"consistent with Hausdorff moment up to order {self.order}"
        beta, k = self.witness
        return f"signed difference negative at beta={beta}, k={k}"


def complete_monotonicity_check(seq: MomentSequence, order: int) -> MonotonicityReport:
    """Check all signed differences of the scaled sequence up to total order.

    For every k with 1 <= |k| <= order and every beta <= window, the signed
    difference sum_{i <= k} (-1)^|i| C(k, i) s~(beta + i) must be >= 0;
    the comparison is exact.  Witnesses are scanned in lexicographic (k, beta)
    order so failure reports are reproducible.
    """
    if order < 1:
        raise ValueError("difference order must be >= 1")
    if seq.margin < order:
        raise WindowTooSmall(
            f"sequence margin {seq.margin} cannot support differences of order {order}")
    checked = 0
    witness = None
    for k in _signed_orders(seq.n, order):
        for beta in box(seq.window):
            diff = Fraction(0)
            for i in box(k):
                sign = -1 if total_degree(i) % 2 else 1
                coeff = math.prod(math.comb(kj, ij) for kj, ij in zip(k, i))
                diff += sign * coeff * seq.scaled(add_index(beta, i))
            checked += 1
            if diff < 0:
                witness = (beta, k)
                break
        if witness:
            break
    return MonotonicityReport(passed=witness is None, order=order,
                              window=seq.window, witness=witness, checked=checked)


def _signed_orders(n: int, order: int):
    """Multi-indices k with 1 <= |k| <= order, in lexicographic order."""
    ks = [k for k in box((order,) * n) if 1 <= total_degree(k) <= order]
    ks.sort()
    return ks


@dataclass(frozen=True)
class CertifyReport:
    passed: bool
    order: int
    gamma_bound: MultiIndex
    window: MultiIndex
    failures: list[tuple[MultiIndex, tuple[MultiIndex, MultiIndex]]]
    gammas_checked: int


def hartogs_certify(m: Sequence[int], gamma_bound: MultiIndex, order: int = 4,
                    window: MultiIndex | None = None) -> CertifyReport:
    """Run the monotonicity check on the Hartogs-tuple sequences for every
    shift gamma <= gamma_bound.  All of them are genuine Hausdorff moment
    multisequences, so every finite-order check is expected to pass."""
    n = len(m)
    if window is None:
        window = (2,) * n
    P0 = hartogs_tuple(n)
    failures = []
    count = 0
    for gamma in box(gamma_bound):
        count += 1
        seq = moment_sequence(P0, m, gamma, variant="admissible",
                              window=window, margin=order)
        report = complete_monotonicity_check(seq, order)
        if not report.passed:
            failures.append((gamma, report.witness))
    return CertifyReport(passed=not failures, order=order,
                         gamma_bound=tuple(gamma_bound), window=tuple(window),
                         failures=failures, gammas_checked=count)


def synthetic_sequence(generator, n: int, window: MultiIndex, margin: int,
                       scale: Fraction | int = 1) -> MomentSequence:
    """Wrap a callable beta -> value as a MomentSequence (for counterexamples)."""
    reach = tuple(w + margin for w in window)
    values = {beta: Fraction(generator(beta)) for beta in box(reach)}
    return MomentSequence(n=n, window=tuple(window), margin=margin,
                          values=values, scale=Fraction(scale))
