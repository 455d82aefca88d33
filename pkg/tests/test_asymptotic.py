"""Tests for the limit-cycle equation solver."""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from ddsolve.asymptotic import (
    BasicRegistry,
    build_basic_mdd,
    build_cs,
    collect_necessary,
    decode_basic_labels,
    enumerate_assignments,
    evaluate_a,
    feasible_divisors,
    monomial_instances,
    simplify_a,
    solve_a_equation,
    solve_basic,
)
from ddsolve.cycles import ZERO, CycleSum, parse_cycle_sum, single
from ddsolve.equations import AEquation, AMonomial, BasicEquation
from ddsolve.mdd import count_paths, enumerate_paths
from ddsolve.oracle import SearchBounds, brute_basic


def a_eq(monomials: list[tuple[str, int, int]], rhs: str) -> AEquation:
    return AEquation(
        monomials=tuple(
            AMonomial(coeff=parse_cycle_sum(coeff), var=var, exp=exp)
            for coeff, var, exp in monomials
        ),
        rhs=parse_cycle_sum(rhs),
        var_count=max(var for _, var, _ in monomials),
    )


def test_feasible_divisors_golden() -> None:
    assert feasible_divisors(4, 12) == frozenset({1, 2, 4})
    assert feasible_divisors(2, 4) == frozenset({2})
    assert feasible_divisors(3, 4) == frozenset()
    assert feasible_divisors(1, 1) == frozenset({1})
    assert feasible_divisors(1, 6) == frozenset({1})
    with pytest.raises(ValueError):
        feasible_divisors(0, 4)


def test_decode_basic_labels_golden() -> None:
    assert decode_basic_labels(4, 12, [4, 4, 2, 1, 1]) == parse_cycle_sum(
        "2*C12+1*C6+2*C3"
    )
    assert decode_basic_labels(1, 1, [1]) == single(1, 1)
    assert decode_basic_labels(2, 4, []) == ZERO


def test_basic_diagram_sixteen_paths() -> None:
    diagram = build_basic_mdd(BasicEquation(p=4, q=12, n=12))
    assert count_paths(diagram) == 16
    label_sets = {tuple(labels) for labels in enumerate_paths(diagram)}
    assert (4, 4, 2, 1, 1) in {tuple(x for x in seq if x) for seq in label_sets}


def test_basic_diagram_infeasible_cases() -> None:
    # Full diagram reduction kills every path: only 2s can appear but the
    # target count 5 is odd.
    assert count_paths(build_basic_mdd(BasicEquation(p=2, q=4, n=5))) == 0
    # Cycle length precheck: 3 does not divide 4.
    assert count_paths(build_basic_mdd(BasicEquation(p=3, q=4, n=2))) == 0
    # Smallest usable label already overshoots the target count.
    assert count_paths(build_basic_mdd(BasicEquation(p=4, q=8, n=3))) == 0


def test_solve_basic_goldens() -> None:
    assert solve_basic(BasicEquation(p=1, q=1, n=1)) == frozenset({single(1, 1)})
    assert solve_basic(BasicEquation(p=4, q=12, n=1)) == frozenset({single(3, 1)})
    assert solve_basic(BasicEquation(p=2, q=4, n=5)) == frozenset()
    sixteen = solve_basic(BasicEquation(p=4, q=12, n=12))
    assert len(sixteen) == 16
    assert parse_cycle_sum("2*C12+1*C6+2*C3") in sixteen


@given(st.integers(1, 8), st.integers(1, 8), st.integers(1, 8))
@settings(max_examples=40)
def test_solve_basic_matches_brute_force(p: int, q: int, n: int) -> None:
    eq = BasicEquation(p=p, q=q, n=n)
    bounds = SearchBounds(
        max_total_periodic=q * n, max_card=1, max_period=q
    )
    assert solve_basic(eq) == brute_basic(eq, bounds)


def test_registry_memoizes_and_counts() -> None:
    registry = BasicRegistry()
    first = registry.solve(4, 12, 12)
    second = registry.solve(4, 12, 12)
    assert first == second
    assert registry.candidate_count == 1
    assert registry.necessary_count == 1
    registry.solve(2, 4, 5)
    assert registry.candidate_count == 2
    assert registry.necessary_count == 1
    assert registry.is_necessary(4, 12, 12)
    assert not registry.is_necessary(2, 4, 5)


def two_variable_example() -> AEquation:
    """C¹₄·x1 + C¹₂·x2 = 4·C2 + 4·C4 + 7·C6 + 7·C12."""
    return a_eq(
        [("1*C4", 1, 1), ("1*C2", 2, 1)],
        "4*C2+4*C4+7*C6+7*C12",
    )


def test_collect_necessary_counts() -> None:
    registry = collect_necessary(two_variable_example())
    assert registry.candidate_count == 44
    assert registry.necessary_count == 27


def test_monomial_instances_expand_coefficient_terms() -> None:
    eq = a_eq([("1*C2+2*C3", 1, 2)], "1*C6")
    instances = monomial_instances(eq)
    assert [(i.coeff_period, i.coeff_count) for i in instances] == [(2, 1), (3, 2)]
    assert all(i.var == 1 and i.exp == 2 for i in instances)


def test_simplify_merges_duplicate_monomials() -> None:
    eq = a_eq([("1*C2", 1, 1), ("1*C4", 1, 1)], "1*C4")
    merged = simplify_a(
        AEquation(
            monomials=eq.monomials + (AMonomial(coeff=single(2, 1), var=1, exp=1),),
            rhs=eq.rhs,
            var_count=1,
        )
    )
    assert len(merged.monomials) == 1
    assert merged.monomials[0].coeff == parse_cycle_sum("2*C2+1*C4")


def test_allocation_diagram_shape() -> None:
    eq = a_eq([("1*C4", 1, 2), ("1*C3", 2, 1)], "3*C6+5*C12")
    registry = collect_necessary(eq)
    allocation = build_cs(eq, registry)
    assert allocation.diagram.node_count == 10
    assert allocation.diagram.edge_count == 14
    assignments = list(enumerate_assignments(allocation))
    assert len(assignments) == 6


def test_solve_a_equation_worked_instance() -> None:
    eq = a_eq([("1*C4", 1, 2), ("1*C3", 2, 1)], "3*C6+5*C12")
    solutions = solve_a_equation(eq)
    assert len(solutions) == 6
    expected_x1 = {ZERO, single(3, 1)}
    assert {assignment[0] for assignment in solutions} == expected_x1
    for assignment in solutions:
        assert evaluate_a(eq, assignment) == eq.rhs
    nonzero = {a for a in solutions if a[0] == single(3, 1)}
    assert {a[1] for a in nonzero} == {
        parse_cycle_sum("2*C4+1*C6"),
        parse_cycle_sum("3*C2+2*C4"),
    }


def test_two_variable_example_solution_count() -> None:
    # Frozen against a 48-second exhaustive search: the two-variable
    # example admits exactly 1092 cycle-structure solutions.
    solutions = solve_a_equation(two_variable_example())
    assert len(solutions) == 1092
    for assignment in list(solutions)[:25]:
        assert evaluate_a(two_variable_example(), assignment) == two_variable_example().rhs


def test_solve_a_equation_zero_rhs() -> None:
    eq = a_eq([("1*C4", 1, 1), ("1*C3", 2, 2)], "0")
    assert solve_a_equation(eq) == frozenset({(ZERO, ZERO)})


def test_solve_a_equation_infeasible() -> None:
    # 1*C5 cannot appear: no product involving a 4-cycle has period 5.
    eq = a_eq([("1*C4", 1, 1)], "1*C5")
    assert solve_a_equation(eq) == frozenset()


def test_solve_a_equation_identity() -> None:
    eq = a_eq([("1*C1", 1, 1)], "2*C3")
    assert solve_a_equation(eq) == frozenset({(parse_cycle_sum("2*C3"),)})


def test_evaluate_a() -> None:
    eq = a_eq([("1*C4", 1, 2), ("1*C3", 2, 1)], "3*C6+5*C12")
    value = evaluate_a(eq, (single(3, 1), parse_cycle_sum("2*C4+1*C6")))
    assert value == eq.rhs
