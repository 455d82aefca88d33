"""Tests for equation parsing, the full pipeline, and the CLI."""

from __future__ import annotations

import json

import pytest

from ddsolve.cli import main
from ddsolve.cycles import ZERO, parse_cycle_sum, single
from ddsolve.dds import Dds, dds_to_json
from ddsolve.pipeline import (
    Coefficient,
    ParseError,
    SolveConfig,
    combine_abstractions,
    parse_equation,
    result_payload,
    serialize_equation,
    solve_source,
    to_a_equation,
    to_card_equation,
)

WORKED = "[1*C4;5] * x1^2 + [1*C3;4] * x2 = [3*C6+5*C12;293]"


def test_parse_worked_instance() -> None:
    eq = parse_equation(WORKED)
    assert eq.var_names == ("x1", "x2")
    assert [m.exp for m in eq.monomials] == [2, 1]
    assert eq.monomials[0].coeff == Coefficient(
        cardinality=5, cycles=single(4, 1)
    )
    assert eq.rhs == Coefficient(
        cardinality=293, cycles=parse_cycle_sum("3*C6+5*C12")
    )


def test_serialize_round_trip() -> None:
    eq = parse_equation(WORKED)
    assert parse_equation(serialize_equation(eq)) == eq


def test_whitespace_insensitive() -> None:
    spaced = "[ 1*C4 ; 5 ]*x1 ^ 2+[1*C3;4]*x2=[ 3*C6 + 5*C12 ; 293 ]"
    assert parse_equation(spaced) == parse_equation(WORKED)


def test_default_exponent_is_one() -> None:
    eq = parse_equation("[1*C2;3] * alpha = [1*C2;3]")
    assert eq.monomials[0].exp == 1
    assert eq.var_names == ("alpha",)


def test_file_coefficient(tmp_path) -> None:
    path = tmp_path / "system.json"
    path.write_text(json.dumps(dds_to_json(Dds(state_count=4, next_map=(1, 2, 0, 0)))))
    eq = parse_equation(f"@{path} * x1 = [1*C3;4]")
    assert eq.monomials[0].coeff == Coefficient(cardinality=4, cycles=single(3, 1))


def test_all_file_coefficients(tmp_path) -> None:
    for name, system in (
        ("a1.json", Dds(state_count=2, next_map=(1, 0))),
        ("a2.json", Dds(state_count=1, next_map=(0,))),
        ("b.json", Dds(state_count=6, next_map=(1, 2, 3, 4, 5, 0))),
    ):
        (tmp_path / name).write_text(json.dumps(dds_to_json(system)))
    eq = parse_equation(
        f"@{tmp_path}/a1.json * x1^2 + @{tmp_path}/a2.json * x2 = @{tmp_path}/b.json"
    )
    assert len(eq.monomials) == 2
    assert eq.rhs == Coefficient(cardinality=6, cycles=single(6, 1))


def test_parse_error_positions() -> None:
    cases = [
        ("[1*C2;2] * x1 + garbage = [1*C2;2]", 1, 17),
        ("[nope;2] * x1 = [1*C2;2]", 1, 1),
        ("[2*C2;1] * x1 = [1*C2;2]", 1, 1),  # more periodic states than states
        ("[1*C2;2] * x1 = [1*C2;2] trailing", 1, 26),
    ]
    for text, line, col in cases:
        with pytest.raises(ParseError) as excinfo:
            parse_equation(text)
        assert f"line {line}, column {col}" in str(excinfo.value)


def test_parse_error_on_multiline_input() -> None:
    text = "[1*C2;2] * x1 +\n[broken * x2 = [1*C2;2]"
    with pytest.raises(ParseError) as excinfo:
        parse_equation(text)
    assert "line 2, column 1" in str(excinfo.value)


def test_unconstrained_variable_rejected() -> None:
    with pytest.raises(ParseError) as excinfo:
        parse_equation("[1*C1;1] * x1^0 = [1*C1;1]")
    assert "unconstrained" in str(excinfo.value)


def test_zero_coefficient_monomials_are_dropped() -> None:
    eq = parse_equation("[0;0] * x1 + [1*C2;2] * x1 = [1*C2;2]")
    assert len(eq.monomials) == 1


def test_exponent_cap() -> None:
    with pytest.raises(ParseError):
        parse_equation("[1*C1;1] * x1^101 = [1*C1;1]")


def test_to_card_equation() -> None:
    eq = to_card_equation(parse_equation(WORKED))
    assert eq.rhs == 293
    assert [(m.coeff, m.var, m.exp) for m in eq.monomials] == [
        (5, 1, 2),
        (4, 2, 1),
    ]


def test_to_a_equation_folds_constant_monomials() -> None:
    src = parse_equation("[1*C2;2] * x1 + [1*C4;4] * x1^0 = [1*C4;4]")
    a = to_a_equation(src)
    assert a is not None
    assert a.rhs == ZERO
    assert len(a.monomials) == 1
    unsatisfiable = parse_equation("[1*C2;2] * x1 + [1*C4;4] * x1^0 = [1*C2;4]")
    assert to_a_equation(unsatisfiable) is None


def test_combine_abstractions_filters_inconsistent_pairs() -> None:
    cards = [(3, 62), (5, 42), (1, 72)]
    cycles = [
        (single(3, 1), parse_cycle_sum("2*C4+1*C6")),
        (ZERO, parse_cycle_sum("3*C2+5*C4")),
    ]
    combined = combine_abstractions(cards, cycles)
    # Count 1 cannot host 3 periodic states and count 0 never appears.
    assert combined == [
        ((3, single(3, 1)), (62, parse_cycle_sum("2*C4+1*C6"))),
        ((5, single(3, 1)), (42, parse_cycle_sum("2*C4+1*C6"))),
    ]


def test_solve_source_matches_component_solvers() -> None:
    eq = parse_equation(WORKED)
    both = solve_source(eq, SolveConfig())
    c_only = solve_source(eq, SolveConfig(), with_cycles=False)
    a_only = solve_source(eq, SolveConfig(), with_card=False)
    assert both.c_solutions == c_only.c_solutions
    assert both.a_solutions == a_only.a_solutions
    assert both.candidates == combine_abstractions(
        c_only.c_solutions, a_only.a_solutions
    )


def test_result_payload_is_json_ready() -> None:
    eq = parse_equation(WORKED)
    result = solve_source(eq, SolveConfig())
    payload = result_payload(eq, result)
    encoded = json.loads(json.dumps(payload))
    assert sorted(encoded) == [
        "a_solutions",
        "c_solutions",
        "candidates",
        "stats",
        "truncated",
    ]
    assert {"x1": 3, "x2": 62} in encoded["c_solutions"]
    assert {"x1": "1*C3", "x2": "2*C4 + 1*C6"} in encoded["a_solutions"]
    assert {
        "x1": {"cardinality": 3, "cycles": "1*C3"},
        "x2": {"cardinality": 62, "cycles": "2*C4 + 1*C6"},
    } in encoded["candidates"]


def test_max_solutions_truncates() -> None:
    eq = parse_equation(WORKED)
    result = solve_source(eq, SolveConfig(max_solutions=2))
    assert len(result.c_solutions) == 2
    assert result.truncated


def test_cli_solve_json(capsys) -> None:
    assert main(["solve", WORKED, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["c_solutions"]) == 4
    assert len(payload["a_solutions"]) == 6
    assert len(payload["candidates"]) == 4
    assert payload["truncated"] is False
    assert payload["stats"]["systems_explored"] == 6


def test_cli_solve_text(capsys) -> None:
    assert main(["solve-c", WORKED]) == 0
    out = capsys.readouterr().out
    assert "c-solutions: 4" in out
    assert "x1=7; x2=12" in out


def test_cli_emit_mdd(tmp_path, capsys) -> None:
    target = tmp_path / "diagrams.json"
    assert main(["solve", WORKED, "--format", "json", "--emit-mdd", str(target)]) == 0
    capsys.readouterr()
    emitted = json.loads(target.read_text())
    assert sorted(emitted) == ["c_mdd", "cs"]
    assert emitted["cs"]["node_count"] == 10
    assert emitted["cs"]["edge_count"] == 14


def test_cli_root(capsys) -> None:
    assert main(["root", "2*C2+3*C3+2*C6", "2"]) == 0
    assert capsys.readouterr().out.strip() == "1*C2 + 1*C3"
    assert main(["root", "3*C2", "2", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"root": None}


def test_cli_oracle_subcommands(capsys) -> None:
    assert main(["oracle", "basic", "4", "12", "1", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"solutions": ["1*C3"]}
    assert main(["oracle", "solve-c", WORKED, "--format", "json"]) == 0
    assert len(json.loads(capsys.readouterr().out)["c_solutions"]) == 4
    assert main(["oracle", "solve-a", WORKED, "--format", "json"]) == 0
    assert len(json.loads(capsys.readouterr().out)["a_solutions"]) == 6


def test_cli_exit_codes(capsys) -> None:
    assert main(["solve-c", "[1*C2;2] * x1 + = [1*C2;2]"]) == 1
    capsys.readouterr()
    assert main(["no-such-command"]) == 1
    capsys.readouterr()
    assert (
        main(
            [
                "solve-c",
                "[1*C1;1] * x1 + [1*C1;1] * x2 = [1*C1;100000]",
                "--node-budget",
                "50",
            ]
        )
        == 2
    )
    capsys.readouterr()
    assert main(["root", "1*C2", "0"]) == 1
    capsys.readouterr()


def test_cli_reports_empty_solution_sets(capsys) -> None:
    assert main(["solve-a", "[1*C4;4] * x1 = [1*C5;5]", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["a_solutions"] == []
    assert payload["truncated"] is False
