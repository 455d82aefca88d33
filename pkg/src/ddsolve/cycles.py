"""Exact arithmetic on sums of disjoint limit cycles.

Asymptotically, a finite discrete dynamical system decomposes into a
disjoint union of limit cycles.  This module represents that shape as a
canonical multiset mapping cycle length to cycle count and implements the
arithmetic induced by disjoint union (addition) and direct product
(multiplication) of systems, together with exact integer powers, the
multinomial expansion used by the root finder, and exact integer n-th
roots.

Two cycles of lengths ``p1`` and ``p2`` multiply into
``p1*p2 / lcm(p1, p2)`` cycles of length ``lcm(p1, p2)``; everything else
follows by distributivity.  All counts are arbitrary-precision integers:
products and powers overflow 64-bit machine words almost immediately.
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

__all__ = [
    "CycleSum",
    "CycleTerm",
    "MultinomialTerm",
    "ZERO",
    "ONE",
    "single",
    "cycle_add",
    "cycle_mul",
    "cycle_pow",
    "multinomial_terms",
    "integer_nth_root",
    "parse_cycle_sum",
    "format_cycle_sum",
]


@dataclass(frozen=True, order=True)
class CycleTerm:
    """``count`` disjoint cycles, each of length ``period``."""

    period: int
    count: int

    def __post_init__(self) -> None:
        if self.period < 1:
            raise ValueError(f"cycle period must be >= 1, got {self.period}")
        if self.count < 1:
            raise ValueError(f"cycle count must be >= 1, got {self.count}")


@dataclass(frozen=True, order=True)
class CycleSum:
    """Canonical multiset of disjoint limit cycles.

    ``entries`` holds ``(period, count)`` pairs with strictly increasing
    periods and positive counts.  The empty tuple is the additive neutral
    (the empty system); ``((1, 1),)`` is the multiplicative neutral (a
    single fixed point).
    """

    entries: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        previous = 0
        for period, count in self.entries:
            if period <= previous:
                raise ValueError(f"periods must be strictly increasing: {self.entries}")
            if count < 1:
                raise ValueError(f"counts must be positive: {self.entries}")
            previous = period

    @staticmethod
    def from_terms(pairs: Iterable[tuple[int, int]]) -> "CycleSum":
        """Build a canonical sum from arbitrary (period, count) pairs.

        Counts for equal periods accumulate; zero counts are dropped.
        """
        acc: dict[int, int] = {}
        for period, count in pairs:
            if period < 1:
                raise ValueError(f"cycle period must be >= 1, got {period}")
            if count < 0:
                raise ValueError(f"cycle count must be >= 0, got {count}")
            if count:
                acc[period] = acc.get(period, 0) + count
        return CycleSum(tuple(sorted(acc.items())))

    @property
    def periods(self) -> tuple[int, ...]:
        return tuple(period for period, _ in self.entries)

    @property
    def total_periodic(self) -> int:
        """Number of periodic states represented: sum of period * count."""
        return sum(period * count for period, count in self.entries)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def count_at(self, period: int) -> int:
        for p, count in self.entries:
            if p == period:
                return count
        return 0

    def contains(self, other: "CycleSum") -> bool:
        """True when ``other`` is a sub-multiset of this sum."""
        return all(self.count_at(p) >= c for p, c in other.entries)

    def subtract(self, other: "CycleSum") -> "CycleSum | None":
        """Multiset difference, or None when ``other`` is not contained."""
        if not self.contains(other):
            return None
        return CycleSum.from_terms(
            (p, c - other.count_at(p)) for p, c in self.entries
        )

    def __add__(self, other: "CycleSum") -> "CycleSum":
        return cycle_add(self, other)

    def __mul__(self, other: "CycleSum") -> "CycleSum":
        return cycle_mul(self, other)

    def __pow__(self, exponent: int) -> "CycleSum":
        return cycle_pow(self, exponent)

    def __str__(self) -> str:
        return format_cycle_sum(self)


ZERO = CycleSum()
ONE = CycleSum(((1, 1),))


def single(period: int, count: int = 1) -> CycleSum:
    """The sum consisting of ``count`` cycles of length ``period``."""
    return CycleSum(((period, count),)) if count else ZERO


def cycle_add(a: CycleSum, b: CycleSum) -> CycleSum:
    """Disjoint union: per-period counts add."""
    return CycleSum.from_terms(list(a.entries) + list(b.entries))


def cycle_mul(a: CycleSum, b: CycleSum) -> CycleSum:
    """Direct product, expanded pairwise by distributivity.

    A pair of terms with periods p1, p2 and counts n1, n2 contributes
    ``p1*n1*p2*n2 / lcm(p1, p2)`` cycles of length ``lcm(p1, p2)``.
    """
    pairs: list[tuple[int, int]] = []
    for p1, n1 in a.entries:
        for p2, n2 in b.entries:
            lam = math.lcm(p1, p2)
            pairs.append((lam, p1 * n1 * p2 * n2 // lam))
    return CycleSum.from_terms(pairs)


@dataclass(frozen=True)
class MultinomialTerm:
    """One summand of the multinomial expansion of a cycle-sum power.

    ``exponents`` assigns one exponent per input term (summing to the
    power); ``coefficient`` is the multinomial coefficient; ``term`` is the
    resulting cycle block *before* scaling by the coefficient.
    """

    exponents: tuple[int, ...]
    coefficient: int
    term: CycleTerm


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` non-negative ints summing to ``total``,
    in ascending lexicographic order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head, *tail)


def multinomial_terms(a: CycleSum, w: int) -> Iterator[MultinomialTerm]:
    """Expand ``a ** w`` term by term.

    For each exponent tuple (k1..kl) with sum w, the resulting block has
    period lcm of the periods with nonzero exponent and count
    ``prod((p_i * n_i) ** k_i) / lcm`` (always an exact division); the
    total contribution of the tuple is coefficient * count cycles.
    Tuples are emitted in ascending lexicographic order.
    """
    if a.is_zero:
        raise ValueError("cannot expand a power of the empty sum")
    if w < 1:
        raise ValueError(f"exponent must be >= 1, got {w}")
    terms = a.entries
    w_factorial = math.factorial(w)
    for exponents in _compositions(w, len(terms)):
        coefficient = w_factorial
        for k in exponents:
            coefficient //= math.factorial(k)
        lam = 1
        raw = 1
        for (period, count), k in zip(terms, exponents):
            if k:
                lam = math.lcm(lam, period)
                raw *= (period * count) ** k
        yield MultinomialTerm(exponents, coefficient, CycleTerm(lam, raw // lam))


def cycle_pow(a: CycleSum, w: int) -> CycleSum:
    """Exact w-th power; ``a ** 0`` is the single fixed point by convention."""
    if w < 0:
        raise ValueError(f"exponent must be >= 0, got {w}")
    if w == 0:
        return ONE
    if a.is_zero:
        return ZERO
    if len(a.entries) == 1:
        period, count = a.entries[0]
        return single(period, period ** (w - 1) * count**w)
    return CycleSum.from_terms(
        (Mt.term.period, Mt.coefficient * Mt.term.count)
        for Mt in multinomial_terms(a, w)
    )


def integer_nth_root(value: int, degree: int) -> int | None:
    """The exact integer ``r`` with ``r ** degree == value``, or None.

    Pure integer arithmetic (binary search), so arbitrarily large values
    are handled exactly.
    """
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    if value < 0:
        raise ValueError(f"value must be >= 0, got {value}")
    if value in (0, 1) or degree == 1:
        return value
    low, high = 1, 1 << (value.bit_length() // degree + 1)
    while low <= high:
        mid = (low + high) // 2
        power = mid**degree
        if power == value:
            return mid
        if power < value:
            low = mid + 1
        else:
            high = mid - 1
    return None


_TERM_RE = re.compile(r"^(\d+)\*C(\d+)$")


def parse_cycle_sum(text: str) -> CycleSum:
    """Parse the literal format ``n1*C<p1> + n2*C<p2> + ...``; ``0`` is the
    empty sum.  Whitespace-insensitive.  Raises ValueError on bad syntax."""
    compact = "".join(text.split())
    if not compact:
        raise ValueError("empty cycle-sum literal")
    if compact == "0":
        return ZERO
    pairs: list[tuple[int, int]] = []
    for chunk in compact.split("+"):
        match = _TERM_RE.match(chunk)
        if not match:
            raise ValueError(f"malformed cycle-sum term {chunk!r}")
        count, period = int(match.group(1)), int(match.group(2))
        if count < 1:
            raise ValueError(f"cycle count must be >= 1 in {chunk!r}")
        if period < 1:
            raise ValueError(f"cycle period must be >= 1 in {chunk!r}")
        pairs.append((period, count))
    return CycleSum.from_terms(pairs)


def format_cycle_sum(a: CycleSum) -> str:
    """Canonical literal: ascending periods, ``0`` for the empty sum."""
    if a.is_zero:
        return "0"
    return " + ".join(f"{count}*C{period}" for period, count in a.entries)
