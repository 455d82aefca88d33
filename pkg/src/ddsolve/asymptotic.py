"""Solver for the periodic-structure projection of a polynomial system equation.

Taking the eventual periodic behavior on both sides of
a₁·x₁^w₁ + … + a_m·x_m^w₂ = b turns the equation into one over cycle sums.
It is solved in stages:

1. Monomials with the same variable and exponent are merged (their
   coefficients add).
2. The atomic subproblem "one cycle of length p times X gives n cycles of
   length q" is solved with a symmetry-breaking decision diagram whose edge
   labels are feasible divisors of q in non-increasing order along every
   path, summing to n; label r decodes to cycles of length (q/p)·r.  All
   such subproblems are solved once and memoized in a registry.
3. Every way of allocating the right side's cycle counts across the
   coefficient cycles of the monomials is enumerated as a path through a
   stacked allocation diagram (one stage per right-side cycle length, one
   level per monomial coefficient term, label = how many cycles that term
   receives).
4. Each allocation yields per-monomial targets built by stacking the
   memoized atomic diagrams; targets constraining the same monomial power
   X_z are intersected, then w-th roots recover the variable values and
   root sets of the same base variable are intersected across exponents.

Every emitted assignment is re-substituted into the equation and checked
exactly.
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from itertools import product

from .cycles import ZERO, CycleSum, cycle_add, cycle_mul, cycle_pow
from .equations import AEquation, AMonomial, BasicEquation
from .mdd import (
    DEFAULT_NODE_BUDGET,
    Mdd,
    MddBuilder,
    enumerate_paths,
    intersect,
    reduce_mdd,
    stack_product,
    stack_with_components,
)
from .roots import wth_root


def simplify_a(eq: AEquation) -> AEquation:
    """Merges monomials sharing (variable, exponent) by adding coefficients.

    The surviving monomials keep first-appearance order, which fixes the
    level order of the allocation diagrams.
    """
    order: list[tuple[int, int]] = []
    merged: dict[tuple[int, int], CycleSum] = {}
    for monomial in eq.monomials:
        key = (monomial.var, monomial.exp)
        if key in merged:
            merged[key] = cycle_add(merged[key], monomial.coeff)
        else:
            merged[key] = monomial.coeff
            order.append(key)
    monomials = tuple(
        AMonomial(coeff=merged[key], var=key[0], exp=key[1]) for key in order
    )
    return AEquation(monomials=monomials, rhs=eq.rhs, var_count=eq.var_count)


def feasible_divisors(p: int, q: int) -> frozenset[int]:
    """Divisors r of q such that one q/p·r-cycle times a p-cycle gives
    exactly r cycles of length q; empty when p does not divide q."""
    if p < 1 or q < 1:
        raise ValueError("cycle lengths must be positive")
    if q % p:
        return frozenset()
    result = set()
    for r in range(1, q + 1):
        if q % r:
            continue
        partner = (q // p) * r
        if math.gcd(p, partner) == r and math.lcm(p, partner) == q:
            result.add(r)
    return frozenset(result)


def decode_basic_labels(p: int, q: int, labels: Sequence[int]) -> CycleSum:
    """Turns a path's divisor labels into the cycle sum they stand for.

    Each label r contributes one cycle of length (q/p)·r, so r occurring
    y times decodes to y cycles of that length.
    """
    counts: dict[int, int] = {}
    for r in labels:
        counts[r] = counts.get(r, 0) + 1
    return CycleSum.from_terms(((q // p) * r, y) for r, y in counts.items())


def _empty_basic_diagram(n: int) -> Mdd:
    builder = MddBuilder()
    root = builder.add_node(0, 0)
    terminal = builder.add_node(1, n)
    return reduce_mdd(builder.build(root, terminal))


def build_basic_mdd(eq: BasicEquation, node_budget: int = DEFAULT_NODE_BUDGET) -> Mdd:
    """Builds the reduced diagram of all solutions of C¹ₚ ⊙ X = Cⁿ_q.

    Paths carry non-increasing feasible-divisor labels summing to n (the
    cap on the next label is part of the node state during construction,
    which breaks permutation symmetry).  The terminal is a sink: an edge
    completing the sum may leave from any level.  Prefixes that cannot
    reach the total within the remaining levels are not materialized.
    """
    divisors = feasible_divisors(eq.p, eq.q)
    if not divisors or min(divisors) > eq.n:
        return _empty_basic_diagram(eq.n)
    smallest = min(divisors)
    largest = max(divisors)
    level_count = eq.n // smallest + 1
    builder = MddBuilder(node_budget)
    root = builder.add_node(0, 0)
    terminal = builder.add_node(level_count - 1, eq.n)
    ordered = sorted(divisors, reverse=True)
    # state = (accumulated value, largest label still allowed)
    frontier: dict[tuple[int, int], int] = {(0, largest): root}
    for level in range(level_count - 2):
        next_frontier: dict[tuple[int, int], int] = {}
        for (val, cap), uid in sorted(frontier.items()):
            for r in ordered:
                if r > cap:
                    continue
                total = val + r
                if total == eq.n:
                    builder.add_edge(uid, r, terminal)
                    continue
                remaining = eq.n - total
                steps_left = level_count - 2 - level
                if remaining > r * steps_left or remaining < smallest:
                    continue
                key = (total, r)
                dst = next_frontier.get(key)
                if dst is None:
                    dst = builder.add_node(level + 1, total)
                    next_frontier[key] = dst
                builder.add_edge(uid, r, dst)
        frontier = next_frontier
        if not frontier:
            break
    for (val, cap), uid in sorted(frontier.items()):
        for r in ordered:
            if r <= cap and val + r == eq.n:
                builder.add_edge(uid, r, terminal)
    return reduce_mdd(builder.build(root, terminal))


def solve_basic(eq: BasicEquation, node_budget: int = DEFAULT_NODE_BUDGET) -> frozenset[CycleSum]:
    """The exact solution set of C¹ₚ ⊙ X = Cⁿ_q."""
    diagram = build_basic_mdd(eq, node_budget)
    return frozenset(
        decode_basic_labels(eq.p, eq.q, labels) for labels in enumerate_paths(diagram)
    )


class BasicRegistry:
    """Memoized store of atomic-subproblem diagrams and solution sets.

    Each distinct (p, q, n) is solved at most once; entries whose solution
    set is non-empty are the ones worth allocating cycles to.
    """

    def __init__(self, node_budget: int = DEFAULT_NODE_BUDGET) -> None:
        self._node_budget = node_budget
        self._cache: dict[tuple[int, int, int], tuple[Mdd, frozenset[CycleSum]]] = {}

    def _entry(self, p: int, q: int, n: int) -> tuple[Mdd, frozenset[CycleSum]]:
        key = (p, q, n)
        entry = self._cache.get(key)
        if entry is None:
            diagram = build_basic_mdd(BasicEquation(p=p, q=q, n=n), self._node_budget)
            solutions = frozenset(
                decode_basic_labels(p, q, labels)
                for labels in enumerate_paths(diagram)
            )
            entry = (diagram, solutions)
            self._cache[key] = entry
        return entry

    def diagram(self, p: int, q: int, n: int) -> Mdd:
        return self._entry(p, q, n)[0]

    def solve(self, p: int, q: int, n: int) -> frozenset[CycleSum]:
        return self._entry(p, q, n)[1]

    def is_necessary(self, p: int, q: int, n: int) -> bool:
        """Whether the subproblem has at least one solution."""
        return bool(self.solve(p, q, n))

    @property
    def candidate_count(self) -> int:
        return len(self._cache)

    @property
    def necessary_count(self) -> int:
        return sum(1 for _, solutions in self._cache.values() if solutions)


@dataclass(frozen=True)
class MonomialInstance:
    """One coefficient cycle block of one monomial: the unit receiving cycles."""

    monomial_index: int
    var: int
    exp: int
    coeff_period: int
    coeff_count: int


def monomial_instances(eq: AEquation) -> tuple[MonomialInstance, ...]:
    """Flattens the monomials into (monomial, coefficient-term) rows,
    ordered by monomial then ascending coefficient period."""
    instances: list[MonomialInstance] = []
    for index, monomial in enumerate(eq.monomials):
        for period, count in monomial.coeff.entries:
            instances.append(
                MonomialInstance(
                    monomial_index=index,
                    var=monomial.var,
                    exp=monomial.exp,
                    coeff_period=period,
                    coeff_count=count,
                )
            )
    return tuple(instances)


def collect_necessary(
    eq: AEquation, node_budget: int = DEFAULT_NODE_BUDGET
) -> BasicRegistry:
    """Solves every atomic subproblem the equation could need, once each.

    A coefficient cycle block of length p receiving d cycles of right-side
    length q needs the subproblem (p, q, d / block count) — d running over
    the multiples of the block count up to the available cycle count.
    """
    registry = BasicRegistry(node_budget)
    for instance in monomial_instances(eq):
        for q, available in eq.rhs.entries:
            for d in range(instance.coeff_count, available + 1, instance.coeff_count):
                registry.solve(instance.coeff_period, q, d // instance.coeff_count)
    return registry


@dataclass(frozen=True)
class AllocationDiagram:
    """Stacked allocation diagram plus the metadata to read its paths.

    Paths carry one label per (right-side cycle length, monomial instance)
    pair: stage j spans len(instances) consecutive labels, and the label at
    offset k is the number of length-q_j cycles granted to instance k.
    """

    diagram: Mdd
    instances: tuple[MonomialInstance, ...]
    periods: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SystemAssignment:
    """One way of splitting all right-side cycles among monomial instances.

    ``table[k][j]`` is the cycle count of the j-th right-side length
    granted to the k-th instance.
    """

    table: tuple[tuple[int, ...], ...]


def _build_cs_stage(
    instances: Sequence[MonomialInstance],
    registry: BasicRegistry,
    q: int,
    available: int,
    node_budget: int,
) -> Mdd:
    """Allocation diagram for one right-side cycle length.

    Level k grants cycles to instance k; a label is 0 or a multiple of the
    instance's block count whose rewritten subproblem has solutions.
    Labels along a path sum to the available cycle count, and the terminal
    is only reached from the last level, so every path has exactly one
    label per instance.
    """
    builder = MddBuilder(node_budget)
    root = builder.add_node(0, 0)
    terminal = builder.add_node(len(instances), available)
    frontier: dict[int, int] = {0: root}
    for k, instance in enumerate(instances):
        labels = [0] + [
            d
            for d in range(instance.coeff_count, available + 1, instance.coeff_count)
            if registry.is_necessary(instance.coeff_period, q, d // instance.coeff_count)
        ]
        last = k == len(instances) - 1
        next_frontier: dict[int, int] = {}
        for val, uid in sorted(frontier.items()):
            for d in labels:
                total = val + d
                if total > available:
                    break
                if last:
                    if total == available:
                        builder.add_edge(uid, d, terminal)
                else:
                    dst = next_frontier.get(total)
                    if dst is None:
                        dst = builder.add_node(k + 1, total)
                        next_frontier[total] = dst
                    builder.add_edge(uid, d, dst)
        frontier = next_frontier
        if not frontier and not last:
            break
    return reduce_mdd(builder.build(root, terminal))


def build_cs(
    eq: AEquation,
    registry: BasicRegistry,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> AllocationDiagram:
    """Builds the stacked allocation diagram of all candidate systems."""
    if not eq.monomials:
        raise ValueError("need at least one monomial to allocate cycles")
    if eq.rhs.is_zero:
        raise ValueError("cannot allocate an empty right side")
    instances = monomial_instances(eq)
    stages = [
        _build_cs_stage(instances, registry, q, available, node_budget)
        for q, available in eq.rhs.entries
    ]
    return AllocationDiagram(
        diagram=stack_product(stages),
        instances=instances,
        periods=eq.rhs.entries,
    )


def enumerate_assignments(
    allocation: AllocationDiagram, cap: int | None = None
) -> Iterator[SystemAssignment]:
    """Yields every candidate system encoded by the allocation diagram."""
    width = len(allocation.instances)
    stages = len(allocation.periods)
    for labels in enumerate_paths(allocation.diagram, cap):
        assert len(labels) == width * stages
        table = tuple(
            tuple(labels[j * width + k] for j in range(stages))
            for k in range(width)
        )
        yield SystemAssignment(table=table)


def solve_system(
    assignment: SystemAssignment,
    allocation: AllocationDiagram,
    registry: BasicRegistry,
) -> dict[int, frozenset[CycleSum]] | None:
    """Solves one candidate system, returning value sets per monomial power.

    Each instance row with a non-zero allocation becomes a stack of
    memoized atomic diagrams (one per right-side length it received);
    rows constraining the same monomial are intersected.  An all-zero row
    forces the monomial power to the empty sum, which is incompatible with
    any non-zero row for the same monomial.  Returns None as soon as any
    monomial ends up with no values.
    """
    by_monomial: dict[int, list[int]] = {}
    for k, instance in enumerate(allocation.instances):
        by_monomial.setdefault(instance.monomial_index, []).append(k)

    result: dict[int, frozenset[CycleSum]] = {}
    for monomial_index, rows in sorted(by_monomial.items()):
        targets = []
        saw_zero_row = False
        for k in rows:
            instance = allocation.instances[k]
            received = [
                (q, assignment.table[k][j])
                for j, (q, _available) in enumerate(allocation.periods)
                if assignment.table[k][j] > 0
            ]
            if not received:
                saw_zero_row = True
                continue
            parts = []
            decoders = []
            for q, d in received:
                n = d // instance.coeff_count
                parts.append(registry.diagram(instance.coeff_period, q, n))
                decoders.append(
                    lambda labels, p=instance.coeff_period, q=q: decode_basic_labels(
                        p, q, labels
                    )
                )
            targets.append(stack_with_components(parts, decoders))
        if saw_zero_row and targets:
            return None
        if saw_zero_row:
            result[monomial_index] = frozenset({ZERO})
            continue
        values = intersect(targets)
        if not values:
            return None
        result[monomial_index] = values
    return result


def evaluate_a(eq: AEquation, assignment: Sequence[CycleSum]) -> CycleSum:
    """Left-side value of the equation under an assignment (index = var - 1)."""
    if len(assignment) != eq.var_count:
        raise ValueError("assignment length must match the variable count")
    total = ZERO
    for monomial in eq.monomials:
        value = cycle_pow(assignment[monomial.var - 1], monomial.exp)
        total = cycle_add(total, cycle_mul(monomial.coeff, value))
    return total


def solve_a_equation_with_stats(
    eq: AEquation,
    node_budget: int = DEFAULT_NODE_BUDGET,
    max_solutions: int | None = None,
) -> tuple[frozenset[tuple[CycleSum, ...]], dict[str, int], bool, AllocationDiagram | None]:
    """Solves the equation; returns (solutions, stats, truncated, allocation).

    Solutions are tuples of per-variable cycle sums (index = var - 1).
    When ``max_solutions`` is reached the search stops early and the
    truncated flag is set.  The allocation diagram is returned for
    inspection (None when the right side is empty and no diagram exists).
    """
    simplified = simplify_a(eq)
    stats = {
        "systems_explored": 0,
        "basic_equations_solved": 0,
        "basic_equations_necessary": 0,
        "cs_nodes": 0,
        "cs_edges": 0,
    }
    if simplified.rhs.is_zero:
        # every coefficient is non-empty, so each monomial must contribute
        # nothing: the unique solution assigns the empty system everywhere
        solution = (ZERO,) * simplified.var_count
        assert evaluate_a(simplified, solution) == simplified.rhs
        return frozenset({solution}), stats, False, None

    registry = collect_necessary(simplified, node_budget)
    allocation = build_cs(simplified, registry, node_budget)
    stats["cs_nodes"] = allocation.diagram.node_count
    stats["cs_edges"] = allocation.diagram.edge_count

    variables_of: dict[int, list[int]] = {}
    for index, monomial in enumerate(simplified.monomials):
        variables_of.setdefault(monomial.var, []).append(index)

    solutions: set[tuple[CycleSum, ...]] = set()
    truncated = False
    for assignment in enumerate_assignments(allocation):
        stats["systems_explored"] += 1
        per_monomial = solve_system(assignment, allocation, registry)
        if per_monomial is None:
            continue
        per_variable: dict[int, frozenset[CycleSum]] = {}
        feasible = True
        for var in range(1, simplified.var_count + 1):
            value_sets = []
            for index in variables_of[var]:
                exponent = simplified.monomials[index].exp
                roots = set()
                for power_value in per_monomial[index]:
                    root = wth_root(power_value, exponent)
                    if root is not None:
                        roots.add(root)
                value_sets.append(frozenset(roots))
            combined = frozenset.intersection(*value_sets)
            if not combined:
                feasible = False
                break
            per_variable[var] = combined
        if not feasible:
            continue
        ordered_sets = [
            sorted(per_variable[var]) for var in range(1, simplified.var_count + 1)
        ]
        for combo in product(*ordered_sets):
            assert evaluate_a(simplified, combo) == simplified.rhs
            solutions.add(combo)
            if max_solutions is not None and len(solutions) >= max_solutions:
                truncated = True
                break
        if truncated:
            break
    stats["basic_equations_solved"] = registry.candidate_count
    stats["basic_equations_necessary"] = registry.necessary_count
    return frozenset(solutions), stats, truncated, allocation


def solve_a_equation(
    eq: AEquation,
    node_budget: int = DEFAULT_NODE_BUDGET,
    max_solutions: int | None = None,
) -> frozenset[tuple[CycleSum, ...]]:
    """All assignments of cycle sums to variables satisfying the equation."""
    solutions, _stats, _truncated, _allocation = solve_a_equation_with_stats(
        eq, node_budget, max_solutions
    )
    return solutions
