"""Exact w-th roots of cycle sums.

A root of a cycle sum (with respect to the direct-product power) is unique
whenever it exists, and it can be recovered greedily: candidate root terms
are forced in ascending period order.  At every step the smallest target
period still missing cycles must be contributed by a fresh root term of
exactly that period, because power terms built from larger periods can
never land on it.  Restricting attention to the periods dividing that
deficit period turns the step into one exact integer w-th root: the
periodic states of the power at periods dividing P come precisely from the
root terms whose period divides P, so their running total S satisfies
(S + P·n)^w = S^w + P·(missing count at P) for the new term count n.

Every intermediate division and root must be exact, otherwise no root
exists.  The maintained power of the accepted terms is updated
incrementally with only the expansion terms involving the newest cycle
(cross-checked against a full recompute in debug mode), and the final
candidate is always verified by one full power computation.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .cycles import (
    ZERO,
    CycleSum,
    _compositions,
    cycle_add,
    cycle_pow,
    integer_nth_root,
)


def power_check(candidate: CycleSum, w: int, target: CycleSum) -> bool:
    """True iff the candidate raised to the w-th power equals the target."""
    return cycle_pow(candidate, w) == target


def _multinomial_coefficient(exponents: tuple[int, ...]) -> int:
    coefficient = math.factorial(sum(exponents))
    for k in exponents:
        coefficient //= math.factorial(k)
    return coefficient


def _augment_power(
    partial: CycleSum,
    accepted: list[tuple[int, int]],
    new: tuple[int, int],
    w: int,
) -> CycleSum:
    """Extends the maintained w-th power with the terms using the new cycle.

    The expansion terms of (accepted ⊕ new)^w that take the new term zero
    times are exactly the old power, so only exponent tuples giving the new
    term at least one factor are added.
    """
    p_new, n_new = new
    added: list[tuple[int, int]] = []
    for k_new in range(1, w + 1):
        for composition in _compositions(w - k_new, len(accepted)):
            coefficient = _multinomial_coefficient((*composition, k_new))
            lam = p_new
            raw = (p_new * n_new) ** k_new
            for (period, count), k in zip(accepted, composition):
                if k:
                    lam = math.lcm(lam, period)
                    raw *= (period * count) ** k
            added.append((lam, coefficient * raw // lam))
    return cycle_add(partial, CycleSum.from_terms(added))


@lru_cache(maxsize=None)
def wth_root(target: CycleSum, w: int) -> CycleSum | None:
    """The unique cycle sum whose w-th power is the target, or None.

    The exponent must be at least 1; a first power is the target itself.
    Results are memoized, since solvers repeatedly root the same values.
    """
    if w < 1:
        raise ValueError(f"root exponent must be >= 1, got {w}")
    if w == 1:
        return target
    if target.is_zero:
        return ZERO
    accepted: list[tuple[int, int]] = []
    partial = ZERO
    while True:
        if any(count > target.count_at(period) for period, count in partial.entries):
            return None
        if partial == target:
            break
        deficit = min(
            period
            for period, count in target.entries
            if partial.count_at(period) < count
        )
        missing = target.count_at(deficit) - partial.count_at(deficit)
        dividing_total = sum(p * n for p, n in accepted if deficit % p == 0)
        root_of = dividing_total**w + deficit * missing
        grown_total = integer_nth_root(root_of, w)
        if grown_total is None:
            return None
        delta = grown_total - dividing_total
        if delta <= 0 or delta % deficit:
            return None
        if accepted and deficit <= accepted[-1][0]:
            return None
        term = (deficit, delta // deficit)
        partial = _augment_power(partial, accepted, term, w)
        accepted.append(term)
        if __debug__:
            recomputed = cycle_pow(CycleSum.from_terms(accepted), w)
            assert partial == recomputed, "incremental power update diverged"
    candidate = CycleSum.from_terms(accepted)
    if not power_check(candidate, w, target):
        return None
    return candidate
