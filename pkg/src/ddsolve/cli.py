"""Command-line interface.

Subcommands::

    solve-c EQUATION    state-count solutions only
    solve-a EQUATION    cycle-structure solutions only
    solve EQUATION      both projections plus their consistent pairings
    root CYCLESUM W     exact w-th root of a cycle sum
    oracle …            brute-force reference solvers for cross-checking

Exit status: 0 when the run solved the problem (even with an empty
solution set), 1 on usage or input errors, 2 when a diagram outgrew the
node budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cycles import format_cycle_sum, parse_cycle_sum
from .equations import BasicEquation
from .mdd import DEFAULT_NODE_BUDGET, NodeBudgetExceeded, mdd_to_debug_json
from .oracle import SearchBounds, brute_a_equation, brute_card
from .oracle import brute_basic as oracle_basic
from .pipeline import (
    ParseError,
    SolveConfig,
    SolveResult,
    SourceEquation,
    parse_equation,
    result_payload,
    solve_source,
    to_a_equation,
    to_card_equation,
)
from .roots import wth_root


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with status 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _budget_int(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("node budget must be at least 2")
    return value


def _build_parser() -> _Parser:
    parser = _Parser(prog="ddsolve", description=__doc__.splitlines()[0])
    subparsers = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument(
        "--format",
        choices=["json", "text"],
        default="text",
        help="output format (default: text)",
    )

    solver_flags = argparse.ArgumentParser(add_help=False)
    solver_flags.add_argument(
        "--max-solutions",
        type=_positive_int,
        default=None,
        metavar="K",
        help="stop after K solutions and flag the output as truncated",
    )
    solver_flags.add_argument(
        "--node-budget",
        type=_budget_int,
        default=DEFAULT_NODE_BUDGET,
        metavar="N",
        help=f"abort once a diagram needs more than N nodes (default {DEFAULT_NODE_BUDGET})",
    )
    solver_flags.add_argument(
        "--emit-mdd",
        default=None,
        metavar="PATH",
        help="write the solver diagrams as debug JSON to PATH",
    )

    for name, help_text, with_card, with_cycles in (
        ("solve-c", "enumerate state-count solutions", True, False),
        ("solve-a", "enumerate cycle-structure solutions", False, True),
        ("solve", "solve both projections and pair them", True, True),
    ):
        sub = subparsers.add_parser(name, parents=[fmt, solver_flags], help=help_text)
        sub.add_argument("equation", help="equation text (see the package README)")
        sub.set_defaults(handler=_cmd_solve, with_card=with_card, with_cycles=with_cycles)

    root = subparsers.add_parser(
        "root", parents=[fmt], help="exact w-th root of a cycle sum"
    )
    root.add_argument("cyclesum", help="cycle-sum literal, e.g. '2*C2+3*C3+2*C6'")
    root.add_argument("exponent", type=int, help="root degree w (at least 1)")
    root.set_defaults(handler=_cmd_root)

    oracle = subparsers.add_parser(
        "oracle", help="brute-force reference solvers (desk scale)"
    )
    oracle_sub = oracle.add_subparsers(dest="oracle_command", required=True)

    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument(
        "--max-total-periodic",
        type=_positive_int,
        default=None,
        metavar="T",
        help="cap on the periodic states of candidate values",
    )
    bounds.add_argument(
        "--max-card",
        type=_positive_int,
        default=None,
        metavar="C",
        help="cap on candidate state counts",
    )
    bounds.add_argument(
        "--max-period",
        type=_positive_int,
        default=None,
        metavar="P",
        help="cap on candidate cycle lengths",
    )

    oc = oracle_sub.add_parser(
        "solve-c", parents=[fmt, bounds], help="exhaustive state-count search"
    )
    oc.add_argument("equation")
    oc.set_defaults(handler=_cmd_oracle_card)

    oa = oracle_sub.add_parser(
        "solve-a", parents=[fmt, bounds], help="exhaustive cycle-structure search"
    )
    oa.add_argument("equation")
    oa.set_defaults(handler=_cmd_oracle_a)

    ob = oracle_sub.add_parser(
        "basic",
        parents=[fmt, bounds],
        help="exhaustive search for one cycle of length p times X = n cycles of length q",
    )
    ob.add_argument("p", type=_positive_int)
    ob.add_argument("q", type=_positive_int)
    ob.add_argument("n", type=_positive_int)
    ob.set_defaults(handler=_cmd_oracle_basic)

    return parser


def _print(args: argparse.Namespace, payload: dict[str, object], text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _render_solve_text(
    eq: SourceEquation, result: SolveResult, with_card: bool, with_cycles: bool
) -> str:
    names = eq.var_names
    lines = []
    if with_card:
        lines.append(f"c-solutions: {len(result.c_solutions)}")
        for values in result.c_solutions:
            lines.append(
                "  " + "; ".join(f"{n}={v}" for n, v in zip(names, values))
            )
    if with_cycles:
        lines.append(f"a-solutions: {len(result.a_solutions)}")
        for cycles in result.a_solutions:
            lines.append(
                "  "
                + "; ".join(
                    f"{n}={format_cycle_sum(c)}" for n, c in zip(names, cycles)
                )
            )
    if with_card and with_cycles:
        lines.append(f"candidates: {len(result.candidates)}")
        for candidate in result.candidates:
            lines.append(
                "  "
                + "; ".join(
                    f"{n}: states={count} cycles={format_cycle_sum(cycles)}"
                    for n, (count, cycles) in zip(names, candidate)
                )
            )
    lines.append(
        "stats: " + " ".join(f"{k}={v}" for k, v in sorted(result.stats.items()))
    )
    if result.truncated:
        lines.append("truncated: yes")
    return "\n".join(lines)


def _cmd_solve(args: argparse.Namespace) -> int:
    eq = parse_equation(args.equation)
    config = SolveConfig(node_budget=args.node_budget, max_solutions=args.max_solutions)
    result = solve_source(
        eq, config, with_card=args.with_card, with_cycles=args.with_cycles
    )
    if args.emit_mdd:
        diagrams: dict[str, object] = {}
        if result.c_diagram is not None:
            diagrams["c_mdd"] = mdd_to_debug_json(result.c_diagram)
        if result.allocation is not None:
            diagrams["cs"] = mdd_to_debug_json(result.allocation.diagram)
        Path(args.emit_mdd).write_text(
            json.dumps(diagrams, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    payload = result_payload(eq, result)
    _print(args, payload, _render_solve_text(eq, result, args.with_card, args.with_cycles))
    return 0


def _cmd_root(args: argparse.Namespace) -> int:
    target = parse_cycle_sum(args.cyclesum)
    root = wth_root(target, args.exponent)
    rendered = None if root is None else format_cycle_sum(root)
    _print(args, {"root": rendered}, rendered if rendered is not None else "none")
    return 0


def _cmd_oracle_card(args: argparse.Namespace) -> int:
    eq = parse_equation(args.equation)
    card_eq = to_card_equation(eq)
    bounds = SearchBounds(
        max_total_periodic=args.max_total_periodic or 1,
        max_card=args.max_card or max(card_eq.rhs, 1),
        max_period=args.max_period or 1,
    )
    solutions = sorted(brute_card(card_eq, bounds))
    payload = {
        "c_solutions": [
            {name: value for name, value in zip(eq.var_names, values)}
            for values in solutions
        ]
    }
    text = "\n".join(
        "; ".join(f"{n}={v}" for n, v in zip(eq.var_names, values))
        for values in solutions
    )
    _print(args, payload, text)
    return 0


def _cmd_oracle_a(args: argparse.Namespace) -> int:
    eq = parse_equation(args.equation)
    a_eq = to_a_equation(eq)
    if a_eq is None:
        solutions = []
    else:
        rhs = a_eq.rhs
        bounds = SearchBounds(
            max_total_periodic=args.max_total_periodic or max(rhs.total_periodic, 1),
            max_card=args.max_card or 1,
            max_period=args.max_period or max(rhs.periods or (1,)),
        )
        solutions = sorted(brute_a_equation(a_eq, bounds))
    payload = {
        "a_solutions": [
            {name: format_cycle_sum(c) for name, c in zip(eq.var_names, cycles)}
            for cycles in solutions
        ]
    }
    text = "\n".join(
        "; ".join(f"{n}={format_cycle_sum(c)}" for n, c in zip(eq.var_names, cycles))
        for cycles in solutions
    )
    _print(args, payload, text)
    return 0


def _cmd_oracle_basic(args: argparse.Namespace) -> int:
    eq = BasicEquation(p=args.p, q=args.q, n=args.n)
    bounds = SearchBounds(
        max_total_periodic=args.max_total_periodic or max(args.q * args.n, 1),
        max_card=args.max_card or 1,
        max_period=args.max_period or args.q,
    )
    solutions = sorted(oracle_basic(eq, bounds))
    payload = {"solutions": [format_cycle_sum(s) for s in solutions]}
    _print(args, payload, "\n".join(format_cycle_sum(s) for s in solutions))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NodeBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
