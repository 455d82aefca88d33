"""Shared pytest configuration.

Prints one PASS/FAIL line per acceptance criterion at the end of the run
so the gate can be read off directly from the terminal output.
"""

from __future__ import annotations

import pytest

ACCEPTANCE_FILE = "test_acceptance.py"

CRITERIA = {
    "test_criterion_1_count_solver_golden": "criterion 1: count-solver golden diagram",
    "test_criterion_2_basic_equation_golden": "criterion 2: basic-equation golden set",
    "test_criterion_3_infeasibility": "criterion 3: infeasible basic equations",
    "test_criterion_4_registry_counts": "criterion 4: candidate/necessary registry counts",
    "test_criterion_5_end_to_end": "criterion 5: end-to-end worked instance",
    "test_criterion_6_root_round_trip": "criterion 6: root round-trip property",
    "test_criterion_7_oracle_equivalence": "criterion 7: oracle equivalence sweeps",
    "test_criterion_8_algebra_homomorphisms": "criterion 8: algebra and homomorphism laws",
    "test_criterion_9_diagram_properties": "criterion 9: diagram reduce/intersect properties",
}


def _criterion_key(nodeid: str) -> str | None:
    if ACCEPTANCE_FILE not in nodeid:
        return None
    name = nodeid.rsplit("::", 1)[-1]
    base = name.split("[", 1)[0]
    return base if base in CRITERIA else None


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter) -> None:
    outcomes: dict[str, str] = {}
    for status in ("passed", "failed", "error", "skipped"):
        for report in terminalreporter.stats.get(status, ()):
            key = _criterion_key(getattr(report, "nodeid", ""))
            if key is None:
                continue
            previous = outcomes.get(key)
            if previous != "FAIL":
                outcomes[key] = "FAIL" if status in ("failed", "error") else (
                    "SKIP" if status == "skipped" else "PASS"
                )
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for key, label in CRITERIA.items():
        verdict = outcomes.get(key, "NOT RUN")
        terminalreporter.write_line(f"{label}: {verdict}")
