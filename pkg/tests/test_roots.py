"""Tests for exact w-th roots of cycle sums."""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from ddsolve.cycles import ONE, ZERO, CycleSum, cycle_pow, parse_cycle_sum, single
from ddsolve.roots import power_check, wth_root

cycle_sums = st.builds(
    CycleSum.from_terms,
    st.lists(
        st.tuples(st.integers(1, 8), st.integers(1, 3)),
        max_size=3,
    ),
)


def test_goldens() -> None:
    assert wth_root(parse_cycle_sum("2*C2+3*C3+2*C6"), 2) == parse_cycle_sum(
        "1*C2+1*C3"
    )
    assert wth_root(parse_cycle_sum("3*C2"), 2) is None
    assert wth_root(ZERO, 3) == ZERO
    assert wth_root(ONE, 5) == ONE
    assert wth_root(single(4, 16), 2) == single(4, 2)


def test_first_power_is_identity() -> None:
    x = parse_cycle_sum("4*C2+7*C6")
    assert wth_root(x, 1) == x


def test_invalid_degree() -> None:
    with pytest.raises(ValueError):
        wth_root(ONE, 0)


def test_power_check() -> None:
    assert power_check(parse_cycle_sum("1*C2+1*C3"), 2, parse_cycle_sum("2*C2+3*C3+2*C6"))
    assert not power_check(single(2, 1), 2, single(2, 1))
    assert power_check(ZERO, 4, ZERO)


@given(cycle_sums, st.integers(2, 3))
@settings(max_examples=60)
def test_round_trip(x: CycleSum, w: int) -> None:
    assert wth_root(cycle_pow(x, w), w) == x


@given(cycle_sums, st.integers(2, 3))
@settings(max_examples=60)
def test_no_false_positives(target: CycleSum, w: int) -> None:
    root = wth_root(target, w)
    if root is not None:
        assert cycle_pow(root, w) == target


def test_near_miss_targets() -> None:
    square = cycle_pow(parse_cycle_sum("1*C2+2*C3"), 2)
    assert wth_root(square, 2) is not None
    # Perturbing any single count breaks the root.
    for period, count in square.entries:
        for delta in (-1, 1):
            if count + delta < 0:
                continue
            terms = [
                (p, c + delta if p == period else c) for p, c in square.entries
            ]
            perturbed = CycleSum.from_terms((p, c) for p, c in terms if c > 0)
            assert wth_root(perturbed, 2) is None
