"""Finite discrete dynamical systems as functional graphs.

A system is a finite state set together with a total next-state map —
equivalently a directed graph in which every node has out-degree one.
Systems form a semiring: addition is disjoint union, multiplication is
the direct product of the maps.  The two abstractions extracted here
ground everything downstream: the cardinality abstraction is the number
of states, and the asymptotic abstraction is the multiset of limit
cycles (every state eventually falls onto exactly one cycle).

Both abstractions are homomorphic: cardinality maps sums to integer sums
and products to integer products, and the asymptotic abstraction maps
them to :mod:`ddsolve.cycles` addition and multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .cycles import CycleSum

__all__ = [
    "Dds",
    "dds_sum",
    "dds_product",
    "c_abstraction",
    "a_abstraction",
    "dds_from_json",
    "dds_to_json",
]


@dataclass(frozen=True)
class Dds:
    """A finite functional graph: states ``0..state_count-1`` and a total
    next-state map."""

    state_count: int
    next_map: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.state_count < 0:
            raise ValueError(f"state_count must be >= 0, got {self.state_count}")
        if len(self.next_map) != self.state_count:
            raise ValueError(
                f"next_map has {len(self.next_map)} entries for "
                f"{self.state_count} states"
            )
        for state, target in enumerate(self.next_map):
            if not 0 <= target < self.state_count:
                raise ValueError(
                    f"next_map[{state}] = {target} is outside "
                    f"[0, {self.state_count})"
                )

    @staticmethod
    def zero() -> "Dds":
        """The empty system (additive neutral)."""
        return Dds(0, ())

    @staticmethod
    def one() -> "Dds":
        """A single fixed point (multiplicative neutral)."""
        return Dds(1, (0,))

    @staticmethod
    def cycle(length: int) -> "Dds":
        """A pure cycle of the given length."""
        if length < 1:
            raise ValueError(f"cycle length must be >= 1, got {length}")
        return Dds(length, tuple((s + 1) % length for s in range(length)))

    @staticmethod
    def from_cycle_sum(cycles: CycleSum) -> "Dds":
        """Disjoint union of pure cycles realizing the given multiset."""
        out = Dds.zero()
        for period, count in cycles.entries:
            for _ in range(count):
                out = dds_sum(out, Dds.cycle(period))
        return out


def dds_sum(a: Dds, b: Dds) -> Dds:
    """Disjoint union: b's states are shifted past a's."""
    shifted = tuple(target + a.state_count for target in b.next_map)
    return Dds(a.state_count + b.state_count, a.next_map + shifted)


def dds_product(a: Dds, b: Dds) -> Dds:
    """Direct product: state (u, v), linearized row-major as u*|b| + v,
    maps to (f(u), g(v))."""
    width = b.state_count
    next_map = tuple(
        a.next_map[u] * width + b.next_map[v]
        for u in range(a.state_count)
        for v in range(width)
    )
    return Dds(a.state_count * width, next_map)


def c_abstraction(a: Dds) -> int:
    """Cardinality abstraction: the number of states."""
    return a.state_count


def a_abstraction(a: Dds) -> CycleSum:
    """Asymptotic abstraction: the multiset of limit-cycle lengths.

    Walks the next-state map once, coloring states; each walk either
    discovers a new cycle (when it closes on the current path) or hits an
    already-resolved state.  Linear in the number of states.
    """
    UNSEEN, ON_PATH, DONE = 0, 1, 2
    status = [UNSEEN] * a.state_count
    counts: dict[int, int] = {}
    for start in range(a.state_count):
        if status[start] != UNSEEN:
            continue
        path: list[int] = []
        position: dict[int, int] = {}
        state = start
        while status[state] == UNSEEN:
            status[state] = ON_PATH
            position[state] = len(path)
            path.append(state)
            state = a.next_map[state]
        if status[state] == ON_PATH:
            length = len(path) - position[state]
            counts[length] = counts.get(length, 0) + 1
        for visited in path:
            status[visited] = DONE
    return CycleSum.from_terms(counts.items())


def dds_from_json(obj: Any) -> Dds:
    """Read the interchange format ``{"states": N, "next": [t0, ...]}``."""
    if not isinstance(obj, dict):
        raise ValueError("DDS JSON must be an object")
    if set(obj) != {"states", "next"}:
        raise ValueError('DDS JSON must have exactly the keys "states" and "next"')
    states = obj["states"]
    nxt = obj["next"]
    if not isinstance(states, int) or isinstance(states, bool):
        raise ValueError('"states" must be an integer')
    if not isinstance(nxt, list) or any(
        not isinstance(t, int) or isinstance(t, bool) for t in nxt
    ):
        raise ValueError('"next" must be a list of integers')
    return Dds(states, tuple(nxt))


def dds_to_json(a: Dds) -> dict[str, Any]:
    """Serialize to the interchange format accepted by :func:`dds_from_json`."""
    return {"states": a.state_count, "next": list(a.next_map)}
