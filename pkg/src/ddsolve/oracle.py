"""Independent brute-force reference implementations.

Everything here validates the real solvers at desk scale by exhaustive
search.  These functions deliberately avoid the decision-diagram engine
and the solver modules: they depend only on the cycle algebra and the
shared equation types, so a bug in a solver cannot hide in its own
oracle.

Candidate cycle sums are enumerated over the divisor closure of the
right-hand side's periods — any cycle appearing in a solution must have
a length dividing some target cycle length, because products only ever
lengthen cycles to least common multiples.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from math import lcm

from .cycles import ZERO, CycleSum, cycle_add, cycle_mul, cycle_pow, single
from .equations import AEquation, AMonomial, BasicEquation, CardEquation

__all__ = [
    "SearchBounds",
    "brute_card",
    "brute_basic",
    "brute_a_equation",
    "enumerate_cycle_sums",
]


@dataclass(frozen=True)
class SearchBounds:
    """Hard caps for the exhaustive searches."""

    max_total_periodic: int
    max_card: int
    max_period: int

    def __post_init__(self) -> None:
        if min(self.max_total_periodic, self.max_card, self.max_period) < 1:
            raise ValueError(f"all bounds must be positive: {self}")


def _divisors(value: int) -> list[int]:
    return [d for d in range(1, value + 1) if value % d == 0]


def brute_card(eq: CardEquation, bounds: SearchBounds) -> frozenset[tuple[int, ...]]:
    """All non-negative integer assignments satisfying the equation,
    found by nested search over variable values."""
    by_var: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, eq.var_count + 1)}
    for monomial in eq.monomials:
        by_var[monomial.var].append((monomial.coeff, monomial.exp))

    def contribution(var: int, value: int) -> int:
        return sum(coeff * value**exp for coeff, exp in by_var[var])

    solutions: set[tuple[int, ...]] = set()

    def search(var: int, remaining: int, prefix: tuple[int, ...]) -> None:
        if var > eq.var_count:
            if remaining == 0:
                solutions.add(prefix)
            return
        # With any positive exponent present the contribution grows
        # strictly, so the scan can stop early; a variable that only
        # appears with exponent 0 contributes a constant instead.
        monotone = any(exp >= 1 for _, exp in by_var[var])
        for value in range(bounds.max_card + 1):
            used = contribution(var, value)
            if used > remaining:
                if monotone:
                    break
                continue
            search(var + 1, remaining - used, prefix + (value,))

    search(1, eq.rhs, ())
    return frozenset(solutions)


def enumerate_cycle_sums(
    periods: list[int], total_periodic: int
) -> Iterator[CycleSum]:
    """All cycle sums over the given periods whose periodic-state total is
    exactly ``total_periodic`` (the empty sum when the total is 0)."""
    pool = sorted(set(periods), reverse=True)

    def rec(idx: int, remaining: int, acc: list[tuple[int, int]]) -> Iterator[CycleSum]:
        if remaining == 0:
            yield CycleSum.from_terms(acc)
            return
        if idx == len(pool):
            return
        period = pool[idx]
        for count in range(remaining // period, -1, -1):
            acc.append((period, count))
            yield from rec(idx + 1, remaining - period * count, acc)
            acc.pop()

    yield from rec(0, total_periodic, [])


def brute_basic(eq: BasicEquation, bounds: SearchBounds) -> frozenset[CycleSum]:
    """Exact solution set of one p-cycle times X = n cycles of length q.

    Candidate periods are (q/p)*r for divisors r of q; the number of
    periodic states of any solution is forced to q*n/p, so only sums with
    exactly that total are tried.
    """
    if eq.q % eq.p != 0:
        return frozenset()
    total, remainder = divmod(eq.q * eq.n, eq.p)
    if remainder:
        return frozenset()
    target = single(eq.q, eq.n)
    coefficient = single(eq.p, 1)
    periods = [
        (eq.q // eq.p) * r
        for r in _divisors(eq.q)
        if (eq.q // eq.p) * r <= bounds.max_period
    ]
    return frozenset(
        candidate
        for candidate in enumerate_cycle_sums(periods, total)
        if cycle_mul(coefficient, candidate) == target
    )


def _divisor_closure(periods: tuple[int, ...]) -> list[int]:
    out: set[int] = set()
    for period in periods:
        out.update(_divisors(period))
    return sorted(out)


def brute_a_equation(
    eq: AEquation, bounds: SearchBounds
) -> frozenset[tuple[CycleSum, ...]]:
    """All assignments (one cycle sum per variable) satisfying the
    asymptotic equation, by exhaustive search with containment pruning."""
    rhs = eq.rhs
    if rhs.is_zero:
        # Nonempty coefficients force every variable to the empty sum.
        return frozenset({(ZERO,) * eq.var_count})
    rhs_periods = set(rhs.periods)
    by_var: dict[int, list[AMonomial]] = {v: [] for v in range(1, eq.var_count + 1)}
    for monomial in eq.monomials:
        by_var[monomial.var].append(monomial)

    def pool_for(var: int) -> list[int]:
        out = []
        for s in _divisor_closure(rhs.periods):
            if s > bounds.max_period:
                continue
            ok = all(
                lcm(p, s) in rhs_periods
                for monomial in by_var[var]
                for p in monomial.coeff.periods
            )
            if ok:
                out.append(s)
        return out

    pools = {v: pool_for(v) for v in range(1, eq.var_count + 1)}
    solutions: set[tuple[CycleSum, ...]] = set()

    def var_contribution(var: int, value: CycleSum) -> CycleSum:
        acc = ZERO
        for monomial in by_var[var]:
            acc = cycle_add(acc, cycle_mul(monomial.coeff, cycle_pow(value, monomial.exp)))
        return acc

    def tp_contribution(var: int, tp_value: int) -> int:
        return sum(
            m.coeff.total_periodic * tp_value**m.exp for m in by_var[var]
        )

    def search(var: int, acc: CycleSum, prefix: tuple[CycleSum, ...]) -> None:
        if var > eq.var_count:
            if acc == rhs:
                solutions.add(prefix)
            return
        tp_remaining = rhs.total_periodic - acc.total_periodic
        last = var == eq.var_count
        tp_value = 0
        while True:
            used = tp_contribution(var, tp_value)
            if used > tp_remaining:
                break
            if not (last and used != tp_remaining):
                for value in enumerate_cycle_sums(pools[var], tp_value):
                    combined = cycle_add(acc, var_contribution(var, value))
                    if rhs.contains(combined):
                        search(var + 1, combined, prefix + (value,))
            tp_value += 1

    search(1, ZERO, ())
    return frozenset(solutions)
