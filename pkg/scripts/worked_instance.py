#!/usr/bin/env python3
"""Runs one equation through every solver stage and prints the findings.

Defaults to the bundled two-variable instance whose left side mixes a
squared and a linear monomial; pass --equation to study something else.
The report shows both projections, the consistent pairings, and the
diagram statistics that make the search cheap.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from ddsolve.cycles import format_cycle_sum
from ddsolve.mdd import DEFAULT_NODE_BUDGET
from ddsolve.pipeline import (
    SolveConfig,
    parse_equation,
    serialize_equation,
    solve_source,
)

DEFAULT_EQUATION = "[1*C4;5] * x1^2 + [1*C3;4] * x2 = [3*C6+5*C12;293]"


@dataclass(frozen=True)
class RunConfig:
    equation: str = DEFAULT_EQUATION
    node_budget: int = DEFAULT_NODE_BUDGET
    max_solutions: int | None = None


def run(config: RunConfig) -> None:
    eq = parse_equation(config.equation)
    print(f"equation: {serialize_equation(eq)}")
    result = solve_source(
        eq,
        SolveConfig(node_budget=config.node_budget, max_solutions=config.max_solutions),
    )
    names = eq.var_names

    print(f"\nstate-count solutions ({len(result.c_solutions)}):")
    for values in result.c_solutions:
        print("  " + "  ".join(f"{n}={v}" for n, v in zip(names, values)))

    print(f"\ncycle-structure solutions ({len(result.a_solutions)}):")
    for cycles in result.a_solutions:
        print(
            "  "
            + "  ".join(f"{n}={format_cycle_sum(c)}" for n, c in zip(names, cycles))
        )

    print(f"\nconsistent pairings ({len(result.candidates)}):")
    for candidate in result.candidates:
        print(
            "  "
            + "  ".join(
                f"{n}=({count} states, {format_cycle_sum(cycles)})"
                for n, (count, cycles) in zip(names, candidate)
            )
        )

    print("\ndiagram statistics:")
    for key, value in sorted(result.stats.items()):
        print(f"  {key} = {value}")
    if result.truncated:
        print("\n(note: the solution lists above are truncated)")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--equation", default=DEFAULT_EQUATION, help="equation text")
    parser.add_argument(
        "--node-budget", type=int, default=DEFAULT_NODE_BUDGET, metavar="N"
    )
    parser.add_argument("--max-solutions", type=int, default=None, metavar="K")
    args = parser.parse_args()
    run(
        RunConfig(
            equation=args.equation,
            node_budget=args.node_budget,
            max_solutions=args.max_solutions,
        )
    )


if __name__ == "__main__":
    main()
