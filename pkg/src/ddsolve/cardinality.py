"""Solver for the state-count projection of a polynomial system equation.

Taking state counts on both sides of a₁·x₁^w₁ + … + a_m·x_m^w_m = b turns
the equation into a Diophantine one over non-negative integers: the count
of a sum is the sum of counts and the count of a product is the product.
All solutions are enumerated with a layered decision diagram holding one
level per variable: a node stores the total contributed so far, an edge
labelled d assigns value d to the level's variable and adds the combined
contribution of every monomial mentioning it, and paths reaching the
target total are exactly the solutions.
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Sequence

from .cycles import integer_nth_root
from .equations import CardEquation, CardMonomial
from .mdd import DEFAULT_NODE_BUDGET, Mdd, MddBuilder, enumerate_paths, reduce_mdd


def solve_basic_card(coeff: int, exp: int, target: int) -> int | None:
    """Solves coeff · v^exp = target for a single non-negative integer v.

    With exponent 0 the variable does not matter: the equation holds only
    when coeff equals target, and 1 (the count of the one-state system) is
    returned as the canonical witness.  Otherwise the unique exact root is
    returned, or None when division or the root is inexact.
    """
    if coeff < 1:
        raise ValueError("coefficient must be a positive integer")
    if exp < 0 or target < 0:
        raise ValueError("exponent and target must be non-negative")
    if exp == 0:
        return 1 if coeff == target else None
    if target % coeff:
        return None
    scaled = target // coeff
    if exp == 1:
        return scaled
    return integer_nth_root(scaled, exp)


def normalize_card(eq: CardEquation) -> CardEquation | None:
    """Folds constant monomials into the right side and scales by the gcd.

    Monomials with exponent 0 contribute their coefficient regardless of
    the variable value (the empty product has one state), so they move to
    the right side; a negative remainder means the equation has no
    solution and None is returned.  Every variable must keep at least one
    monomial, otherwise it would be unconstrained.  Finally all
    coefficients and the right side are divided by their common gcd.
    """
    rhs = eq.rhs
    kept: list[CardMonomial] = []
    for monomial in eq.monomials:
        if monomial.exp == 0:
            rhs -= monomial.coeff
        else:
            kept.append(monomial)
    if rhs < 0:
        return None
    present = {monomial.var for monomial in kept}
    if present != set(range(1, eq.var_count + 1)):
        missing = sorted(set(range(1, eq.var_count + 1)) - present)
        raise ValueError(
            f"variables {missing} have only constant monomials and are unconstrained"
        )
    scale = math.gcd(rhs, *(monomial.coeff for monomial in kept))
    if scale > 1:
        kept = [
            CardMonomial(coeff=m.coeff // scale, var=m.var, exp=m.exp) for m in kept
        ]
        rhs //= scale
    return CardEquation(monomials=tuple(kept), rhs=rhs, var_count=eq.var_count)


def evaluate_card(eq: CardEquation, assignment: Sequence[int]) -> int:
    """Left-side value of the equation under an assignment (index = var - 1)."""
    if len(assignment) != eq.var_count:
        raise ValueError("assignment length must match the variable count")
    return sum(
        monomial.coeff * assignment[monomial.var - 1] ** monomial.exp
        for monomial in eq.monomials
    )


def _empty_diagram(level_count: int, target: int) -> Mdd:
    builder = MddBuilder()
    root = builder.add_node(0, 0)
    terminal = builder.add_node(level_count - 1, target)
    return builder.build(root, terminal)


def build_c_mdd(eq: CardEquation, node_budget: int = DEFAULT_NODE_BUDGET) -> Mdd:
    """Builds the reduced decision diagram of all state-count solutions.

    Level i assigns variable i+1; an edge labelled d adds the combined
    contribution of the variable's monomials at value d.  Contributions
    are strictly increasing in d, which bounds the label domain.  Only the
    last level emits edges into the terminal, exactly when the running
    total hits the target.
    """
    if eq.var_count == 0:
        raise ValueError("need at least one variable to build a diagram")
    normalized = normalize_card(eq)
    if normalized is None:
        return _empty_diagram(eq.var_count + 1, eq.rhs)
    by_var: dict[int, list[tuple[int, int]]] = {
        var: [] for var in range(1, normalized.var_count + 1)
    }
    for monomial in normalized.monomials:
        by_var[monomial.var].append((monomial.coeff, monomial.exp))

    def contribution(var: int, value: int) -> int:
        return sum(coeff * value**exp for coeff, exp in by_var[var])

    builder = MddBuilder(node_budget)
    root = builder.add_node(0, 0)
    terminal = builder.add_node(normalized.var_count, normalized.rhs)
    frontier: dict[int, int] = {0: root}
    for level in range(normalized.var_count):
        var = level + 1
        last = var == normalized.var_count
        next_frontier: dict[int, int] = {}
        for val, uid in sorted(frontier.items()):
            value = 0
            while True:
                total = val + contribution(var, value)
                if total > normalized.rhs:
                    break
                if last:
                    if total == normalized.rhs:
                        builder.add_edge(uid, value, terminal)
                else:
                    dst = next_frontier.get(total)
                    if dst is None:
                        dst = builder.add_node(level + 1, total)
                        next_frontier[total] = dst
                    builder.add_edge(uid, value, dst)
                value += 1
        frontier = next_frontier
        if not frontier and not last:
            break
    return reduce_mdd(builder.build(root, terminal))


def enumerate_card_solutions(
    eq: CardEquation,
    cap: int | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> Iterator[tuple[int, ...]]:
    """Yields every solution as a tuple of variable values (index = var - 1).

    Paths of the reduced diagram decode directly: the label at level i is
    the value of variable i+1.  Each emitted assignment is re-checked
    against the original equation.
    """
    diagram = build_c_mdd(eq, node_budget)
    for labels in enumerate_paths(diagram, cap):
        assert evaluate_card(eq, labels) == eq.rhs
        yield labels
