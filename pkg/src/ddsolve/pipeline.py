"""End-to-end solving: equation parsing, projection, and recombination.

An input equation names each coefficient either as a JSON system file
(``@path``) or as an abstraction literal ``[cycles;states]``; both project
to a state count and a cycle sum.  The two projected equations are solved
independently, and per-variable pairs (state count, cycle sum) that are
consistent — the cycles fit inside the state count, and only an empty
system has no periodic state — survive as candidate solutions of the
original equation.

Grammar (whitespace-insensitive)::

    equation := monomial ('+' monomial)* '=' coeff
    monomial := coeff '*' var ['^' int]
    coeff    := '@' filepath | '[' cyclesum ';' card ']'

Monomials with an empty coefficient contribute nothing to either side and
are dropped; a variable left with only exponent-0 monomials would be
unconstrained and is rejected.  Parse errors carry line and column.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .asymptotic import (
    AllocationDiagram,
    solve_a_equation_with_stats,
)
from .cardinality import build_c_mdd, evaluate_card
from .cycles import CycleSum, format_cycle_sum, parse_cycle_sum
from .dds import a_abstraction, c_abstraction, dds_from_json
from .equations import AEquation, AMonomial, CardEquation, CardMonomial
from .mdd import DEFAULT_NODE_BUDGET, Mdd, count_paths, enumerate_paths

MAX_EXPONENT = 100


class ParseError(ValueError):
    """Equation syntax or content error, located by line and column."""

    def __init__(self, message: str, line: int, col: int) -> None:
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Coefficient:
    """A known system in abstracted form: state count plus cycle sum."""

    cardinality: int
    cycles: CycleSum

    def __post_init__(self) -> None:
        if self.cardinality < 0:
            raise ValueError("state count cannot be negative")
        if self.cycles.total_periodic > self.cardinality:
            raise ValueError("periodic states exceed the state count")
        if (self.cardinality == 0) != self.cycles.is_zero:
            raise ValueError("a system is empty exactly when it has no cycles")


@dataclass(frozen=True)
class SourceMonomial:
    coeff: Coefficient
    var_name: str
    var: int
    exp: int


@dataclass(frozen=True)
class SourceEquation:
    """Parsed equation with dense variable ids in first-appearance order."""

    monomials: tuple[SourceMonomial, ...]
    rhs: Coefficient
    var_count: int
    var_names: tuple[str, ...]


_SPECIALS = set("+*^=;[]@")


class _Scanner:
    def __init__(self, text: str) -> None:
        self._text = text
        self._pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.col)

    def _advance(self, count: int = 1) -> None:
        for _ in range(count):
            if self._pos >= len(self._text):
                return
            if self._text[self._pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self._pos += 1

    def skip_whitespace(self) -> None:
        while self._pos < len(self._text) and self._text[self._pos].isspace():
            self._advance()

    def peek(self) -> str:
        return self._text[self._pos] if self._pos < len(self._text) else ""

    def at_end(self) -> bool:
        self.skip_whitespace()
        return self._pos >= len(self._text)

    def expect(self, symbol: str, context: str) -> None:
        self.skip_whitespace()
        if self.peek() != symbol:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected '{symbol}' {context}, found {found}")
        self._advance()

    def take_if(self, symbol: str) -> bool:
        self.skip_whitespace()
        if self.peek() == symbol:
            self._advance()
            return True
        return False

    def identifier(self) -> str:
        self.skip_whitespace()
        start = self._pos
        if not (self.peek().isalpha() or self.peek() == "_"):
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected a variable name, found {found}")
        while self.peek().isalnum() or self.peek() == "_":
            self._advance()
        return self._text[start : self._pos]

    def integer(self, context: str) -> int:
        self.skip_whitespace()
        start = self._pos
        while self.peek().isdigit():
            self._advance()
        if start == self._pos:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected an integer {context}, found {found}")
        return int(self._text[start : self._pos])

    def filepath(self) -> str:
        start = self._pos
        while self.peek() and not self.peek().isspace() and self.peek() not in _SPECIALS:
            self._advance()
        if start == self._pos:
            raise self.error("expected a file path after '@'")
        return self._text[start : self._pos]

    def bracket_body(self) -> str:
        start = self._pos
        while self.peek() and self.peek() != "]":
            self._advance()
        if self.peek() != "]":
            raise self.error("unterminated coefficient literal (missing ']')")
        body = self._text[start : self._pos]
        self._advance()
        return body


def _coefficient(scanner: _Scanner, base_dir: Path) -> Coefficient:
    scanner.skip_whitespace()
    line, col = scanner.line, scanner.col
    if scanner.take_if("@"):
        raw = scanner.filepath()
        path = Path(raw)
        if not path.is_absolute():
            path = base_dir / path
        try:
            with open(path, encoding="utf-8") as handle:
                data = json.load(handle)
            system = dds_from_json(data)
        except (OSError, ValueError) as exc:
            raise ParseError(f"cannot load system file '{raw}': {exc}", line, col)
        return Coefficient(
            cardinality=c_abstraction(system), cycles=a_abstraction(system)
        )
    if scanner.take_if("["):
        body = scanner.bracket_body()
        if body.count(";") != 1:
            raise ParseError(
                "coefficient literal must be '[cycles;states]'", line, col
            )
        cycles_text, card_text = body.split(";")
        try:
            cycles = parse_cycle_sum(cycles_text)
        except ValueError as exc:
            raise ParseError(f"malformed cycle sum: {exc}", line, col)
        card_text = card_text.strip()
        if not card_text.isdigit():
            raise ParseError(
                f"state count must be a non-negative integer, got {card_text!r}",
                line,
                col,
            )
        try:
            return Coefficient(cardinality=int(card_text), cycles=cycles)
        except ValueError as exc:
            raise ParseError(f"invalid abstraction pair: {exc}", line, col)
    found = repr(scanner.peek()) if scanner.peek() else "end of input"
    raise ParseError(f"expected a coefficient ('@file' or '[...]'), found {found}", line, col)


def parse_equation(text: str, base_dir: str | Path | None = None) -> SourceEquation:
    """Parses an equation; file coefficients resolve relative to base_dir."""
    base = Path(base_dir) if base_dir is not None else Path.cwd()
    scanner = _Scanner(text)
    raw: list[tuple[Coefficient, str, int, int, int]] = []
    while True:
        coeff = _coefficient(scanner, base)
        scanner.expect("*", "after the coefficient")
        scanner.skip_whitespace()
        name_line, name_col = scanner.line, scanner.col
        name = scanner.identifier()
        exp = 1
        if scanner.take_if("^"):
            exp_line, exp_col = scanner.line, scanner.col
            exp = scanner.integer("exponent")
            if exp > MAX_EXPONENT:
                raise ParseError(
                    f"exponent overflow: maximum supported exponent is {MAX_EXPONENT}",
                    exp_line,
                    exp_col,
                )
        raw.append((coeff, name, exp, name_line, name_col))
        if scanner.take_if("+"):
            continue
        break
    scanner.expect("=", "between the monomials and the right side")
    rhs = _coefficient(scanner, base)
    if not scanner.at_end():
        raise scanner.error("unexpected trailing input")

    kept = [entry for entry in raw if entry[0].cardinality > 0]
    constrained = {name for _coeff, name, exp, _line, _col in kept if exp >= 1}
    for _coeff, name, _exp, line, col in raw:
        if name not in constrained:
            raise ParseError(
                f"variable '{name}' is unconstrained "
                "(only constant or empty monomials)",
                line,
                col,
            )
    ids: dict[str, int] = {}
    for _coeff, name, _exp, _line, _col in kept:
        if name not in ids:
            ids[name] = len(ids) + 1
    monomials = tuple(
        SourceMonomial(coeff=coeff, var_name=name, var=ids[name], exp=exp)
        for coeff, name, exp, _line, _col in kept
    )
    names = tuple(sorted(ids, key=ids.get))
    return SourceEquation(
        monomials=monomials, rhs=rhs, var_count=len(ids), var_names=names
    )


def serialize_equation(eq: SourceEquation) -> str:
    """Canonical text form; parsing it back gives an equal equation."""

    def coeff_text(coeff: Coefficient) -> str:
        return f"[{format_cycle_sum(coeff.cycles)};{coeff.cardinality}]"

    parts = []
    for monomial in eq.monomials:
        term = f"{coeff_text(monomial.coeff)} * {monomial.var_name}"
        if monomial.exp != 1:
            term += f"^{monomial.exp}"
        parts.append(term)
    return " + ".join(parts) + f" = {coeff_text(eq.rhs)}"


def to_card_equation(eq: SourceEquation) -> CardEquation:
    """State-count projection of the parsed equation."""
    return CardEquation(
        monomials=tuple(
            CardMonomial(coeff=m.coeff.cardinality, var=m.var, exp=m.exp)
            for m in eq.monomials
        ),
        rhs=eq.rhs.cardinality,
        var_count=eq.var_count,
    )


def to_a_equation(eq: SourceEquation) -> AEquation | None:
    """Cycle-structure projection; None when a constant monomial cannot fit.

    Exponent-0 monomials are constant (the empty power is the one-state
    system), so their cycles move to the right side; if they are not a
    sub-multiset of it, the projection has no solutions at all.
    """
    rhs = eq.rhs.cycles
    monomials: list[AMonomial] = []
    for monomial in eq.monomials:
        if monomial.exp == 0:
            reduced = rhs.subtract(monomial.coeff.cycles)
            if reduced is None:
                return None
            rhs = reduced
        else:
            monomials.append(
                AMonomial(coeff=monomial.coeff.cycles, var=monomial.var, exp=monomial.exp)
            )
    return AEquation(monomials=tuple(monomials), rhs=rhs, var_count=eq.var_count)


def combine_abstractions(
    card_solutions: list[tuple[int, ...]],
    a_solutions: list[tuple[CycleSum, ...]],
) -> list[tuple[tuple[int, CycleSum], ...]]:
    """Pairs projection solutions that are realizable by one system per variable.

    The periodic states must fit in the state count, and a variable is
    empty in one projection exactly when it is empty in the other.
    """
    candidates = []
    for cards in card_solutions:
        for cycles in a_solutions:
            ok = True
            for count, cycle_sum in zip(cards, cycles):
                if cycle_sum.total_periodic > count:
                    ok = False
                    break
                if (count == 0) != cycle_sum.is_zero:
                    ok = False
                    break
            if ok:
                candidates.append(tuple(zip(cards, cycles)))
    return sorted(set(candidates))


@dataclass(frozen=True)
class SolveConfig:
    """Knobs shared by the CLI and the experiment scripts."""

    node_budget: int = DEFAULT_NODE_BUDGET
    max_solutions: int | None = None


def _empty_stats() -> dict[str, int]:
    return {
        "c_mdd_nodes": 0,
        "c_mdd_edges": 0,
        "cs_nodes": 0,
        "cs_edges": 0,
        "systems_explored": 0,
        "basic_equations_solved": 0,
        "basic_equations_necessary": 0,
    }


@dataclass
class SolveResult:
    """Everything a front-end needs to report one solve run."""

    c_solutions: list[tuple[int, ...]] = field(default_factory=list)
    a_solutions: list[tuple[CycleSum, ...]] = field(default_factory=list)
    candidates: list[tuple[tuple[int, CycleSum], ...]] = field(default_factory=list)
    stats: dict[str, int] = field(default_factory=_empty_stats)
    truncated: bool = False
    c_diagram: Mdd | None = None
    allocation: AllocationDiagram | None = None


def solve_source(
    eq: SourceEquation,
    config: SolveConfig = SolveConfig(),
    *,
    with_card: bool = True,
    with_cycles: bool = True,
) -> SolveResult:
    """Solves the requested projections and pairs them when both are present.

    The solution cap applies to the state-count enumeration when it runs
    (candidate pairing then sees only the enumerated prefix and the result
    is flagged truncated), otherwise to the cycle-structure search.
    """
    result = SolveResult()
    if with_card:
        card_eq = to_card_equation(eq)
        diagram = build_c_mdd(card_eq, config.node_budget)
        result.c_diagram = diagram
        result.stats["c_mdd_nodes"] = diagram.node_count
        result.stats["c_mdd_edges"] = diagram.edge_count
        solutions = []
        for labels in enumerate_paths(diagram, config.max_solutions):
            assert evaluate_card(card_eq, labels) == card_eq.rhs
            solutions.append(labels)
        result.c_solutions = sorted(solutions)
        if config.max_solutions is not None:
            result.truncated = count_paths(diagram) > config.max_solutions

    if with_cycles:
        a_eq = to_a_equation(eq)
        if a_eq is not None:
            a_cap = None if with_card else config.max_solutions
            solutions_set, a_stats, a_truncated, allocation = (
                solve_a_equation_with_stats(a_eq, config.node_budget, a_cap)
            )
            result.a_solutions = sorted(solutions_set)
            result.stats.update(a_stats)
            result.truncated = result.truncated or a_truncated
            result.allocation = allocation

    if with_card and with_cycles:
        result.candidates = combine_abstractions(
            result.c_solutions, result.a_solutions
        )
    return result


def result_payload(eq: SourceEquation, result: SolveResult) -> dict[str, object]:
    """JSON-ready report: solutions keyed by variable name, plus stats."""
    names = eq.var_names
    return {
        "c_solutions": [
            {name: value for name, value in zip(names, values)}
            for values in result.c_solutions
        ],
        "a_solutions": [
            {name: format_cycle_sum(cycles) for name, cycles in zip(names, values)}
            for values in result.a_solutions
        ],
        "candidates": [
            {
                name: {
                    "cardinality": count,
                    "cycles": format_cycle_sum(cycles),
                }
                for name, (count, cycles) in zip(names, candidate)
            }
            for candidate in result.candidates
        ],
        "stats": dict(result.stats),
        "truncated": result.truncated,
    }
