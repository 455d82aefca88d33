#!/usr/bin/env python3
"""Measures how reduced-diagram size scales against the raw solution count.

For a family of atomic cycle-allocation problems (one coefficient cycle of
length p, targets of n cycles of length q) the number of solutions grows
combinatorially with n while the reduced diagram stays small; this script
tabulates nodes, edges, and path counts across the family so the effect
can be read off directly.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from ddsolve.asymptotic import build_basic_mdd, feasible_divisors
from ddsolve.equations import BasicEquation
from ddsolve.mdd import count_paths


@dataclass(frozen=True)
class SurveyConfig:
    p: int = 4
    q: int = 12
    max_count: int = 60
    step: int = 4


def run(config: SurveyConfig) -> None:
    divisors = sorted(feasible_divisors(config.p, config.q))
    print(
        f"family: one {config.p}-cycle times X = n cycles of length {config.q}; "
        f"usable labels {divisors or 'none'}"
    )
    print(f"{'n':>5} {'nodes':>7} {'edges':>7} {'solutions':>12}")
    for n in range(config.step, config.max_count + 1, config.step):
        diagram = build_basic_mdd(BasicEquation(p=config.p, q=config.q, n=n))
        print(
            f"{n:>5} {diagram.node_count:>7} {diagram.edge_count:>7} "
            f"{count_paths(diagram):>12}"
        )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=int, default=4, help="coefficient cycle length")
    parser.add_argument("--q", type=int, default=12, help="target cycle length")
    parser.add_argument("--max-count", type=int, default=60, metavar="N")
    parser.add_argument("--step", type=int, default=4)
    args = parser.parse_args()
    run(SurveyConfig(p=args.p, q=args.q, max_count=args.max_count, step=args.step))


if __name__ == "__main__":
    main()
