"""Layered decision diagrams used to enumerate admissible assignments.

Solution sets are encoded as rooted, edge-labelled DAGs arranged in levels:
every edge goes from a lower level to a strictly higher one, and every
complete assignment corresponds to the label sequence of one path from the
root to the single terminal node.  The terminal acts as a sink, so an edge
may jump past intermediate levels and finish a path early.

The module provides budgeted construction (`MddBuilder`), a reduction pass
that removes nodes lying on no root-to-terminal path and merges
interchangeable ones while preserving the multiset of path label sequences,
path enumeration and counting, sequential stacking (the terminal of one
diagram is fused with the root of the next), and intersection of the
solution sets described by stacked diagrams.
"""

from __future__ import annotations

from collections import defaultdict, deque
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import product

from .cycles import ZERO, CycleSum, cycle_add

DEFAULT_NODE_BUDGET = 10_000_000


class NodeBudgetExceeded(RuntimeError):
    """Raised when a diagram under construction outgrows its node budget."""


@dataclass(frozen=True)
class MddNode:
    """Diagram node; ``val`` is the accumulated quantity the node stands for."""

    uid: int
    level: int
    val: int


@dataclass(frozen=True)
class MddEdge:
    """Labelled edge between two nodes of strictly increasing level."""

    src: int
    label: int
    dst: int


@dataclass(frozen=True)
class Mdd:
    """Immutable layered diagram with one root and one sink terminal.

    Node uids index into ``nodes``; edges are kept sorted by
    (src, label, dst) so serialization and enumeration are reproducible.
    """

    nodes: tuple[MddNode, ...]
    edges: tuple[MddEdge, ...]
    root: int
    terminal: int

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def level_count(self) -> int:
        return self.nodes[self.terminal].level + 1


class MddBuilder:
    """Incrementally assembles a diagram, enforcing a limit on created nodes."""

    def __init__(self, node_budget: int = DEFAULT_NODE_BUDGET) -> None:
        if node_budget < 2:
            raise ValueError("node budget must allow at least a root and a terminal")
        self._node_budget = node_budget
        self._levels: list[int] = []
        self._vals: list[int] = []
        self._edges: list[MddEdge] = []

    @property
    def node_count(self) -> int:
        return len(self._levels)

    def add_node(self, level: int, val: int) -> int:
        """Creates a node and returns its uid; fails once the budget is spent."""
        if len(self._levels) >= self._node_budget:
            raise NodeBudgetExceeded(
                f"diagram construction exceeded the budget of {self._node_budget} nodes"
            )
        if level < 0:
            raise ValueError("node level must be non-negative")
        self._levels.append(level)
        self._vals.append(val)
        return len(self._levels) - 1

    def add_edge(self, src: int, label: int, dst: int) -> None:
        if not (0 <= src < len(self._levels) and 0 <= dst < len(self._levels)):
            raise ValueError("edge endpoints must be existing nodes")
        if label < 0:
            raise ValueError("edge labels must be non-negative")
        if self._levels[src] >= self._levels[dst]:
            raise ValueError("edges must go from a lower level to a strictly higher one")
        self._edges.append(MddEdge(src, label, dst))

    def build(self, root: int, terminal: int) -> Mdd:
        """Freezes the builder content into an immutable diagram."""
        if not (0 <= root < len(self._levels) and 0 <= terminal < len(self._levels)):
            raise ValueError("root and terminal must be existing nodes")
        if root == terminal:
            raise ValueError("root and terminal must be distinct")
        if any(edge.src == terminal for edge in self._edges):
            raise ValueError("the terminal node cannot have outgoing edges")
        nodes = tuple(
            MddNode(uid, level, val)
            for uid, (level, val) in enumerate(zip(self._levels, self._vals))
        )
        edges = tuple(sorted(self._edges, key=lambda e: (e.src, e.label, e.dst)))
        return Mdd(nodes=nodes, edges=edges, root=root, terminal=terminal)


def _outgoing(m: Mdd) -> dict[int, list[MddEdge]]:
    adjacency: dict[int, list[MddEdge]] = defaultdict(list)
    for edge in m.edges:
        adjacency[edge.src].append(edge)
    return adjacency


def _incoming(m: Mdd) -> dict[int, list[MddEdge]]:
    adjacency: dict[int, list[MddEdge]] = defaultdict(list)
    for edge in m.edges:
        adjacency[edge.dst].append(edge)
    return adjacency


def _closure(seeds: Iterable[int], successors: Callable[[int], Iterable[int]]) -> set[int]:
    seen = set(seeds)
    queue = deque(seen)
    while queue:
        uid = queue.popleft()
        for nxt in successors(uid):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def reduce_mdd(m: Mdd) -> Mdd:
    """Prunes dead nodes and merges interchangeable ones.

    A node survives when it lies on at least one root-to-terminal path (the
    root and terminal always survive, even when no path exists).  Surviving
    nodes on one level merge when they carry the same value and the same
    multiset of labelled edges into already-merged successors; this cannot
    change the multiset of root-to-terminal label sequences.  Merging runs
    bottom-up, which reaches a fixpoint in one pass, and the result uses a
    deterministic numbering, so reducing twice returns the same diagram.
    """
    out = _outgoing(m)
    inc = _incoming(m)
    reachable = _closure({m.root}, lambda uid: (e.dst for e in out[uid]))
    coreachable = _closure({m.terminal}, lambda uid: (e.src for e in inc[uid]))
    keep = (reachable & coreachable) | {m.root, m.terminal}

    by_level: dict[int, list[int]] = defaultdict(list)
    for uid in keep:
        by_level[m.nodes[uid].level].append(uid)

    canon: dict[int, int] = {}
    for level in sorted(by_level, reverse=True):
        sig_to_rep: dict[object, int] = {}
        for uid in sorted(by_level[level]):
            if uid == m.terminal:
                signature: object = "terminal"
            else:
                succ = tuple(
                    sorted((e.label, canon[e.dst]) for e in out[uid] if e.dst in keep)
                )
                signature = (m.nodes[uid].val, succ)
            canon[uid] = sig_to_rep.setdefault(signature, uid)

    survivors = sorted(
        {canon[uid] for uid in keep},
        key=lambda uid: (m.nodes[uid].level, m.nodes[uid].val, uid),
    )
    new_id = {rep: idx for idx, rep in enumerate(survivors)}
    nodes = tuple(
        MddNode(new_id[rep], m.nodes[rep].level, m.nodes[rep].val) for rep in survivors
    )
    edges = tuple(
        sorted(
            (
                MddEdge(new_id[rep], e.label, new_id[canon[e.dst]])
                for rep in survivors
                for e in out[rep]
                if e.dst in keep
            ),
            key=lambda e: (e.src, e.label, e.dst),
        )
    )
    return Mdd(
        nodes=nodes,
        edges=edges,
        root=new_id[canon[m.root]],
        terminal=new_id[canon[m.terminal]],
    )


def enumerate_paths(
    m: Mdd,
    cap: int | None = None,
    *,
    source: int | None = None,
    target: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yields the label sequences of all source-to-target paths.

    Defaults to root-to-terminal paths and stops after ``cap`` sequences
    when a cap is given.  Sequences come out in lexicographic order of the
    traversed (label, destination) pairs.  The target node is a stopping
    point even when it has outgoing edges, which happens for the internal
    boundaries of stacked diagrams.
    """
    src = m.root if source is None else source
    dst = m.terminal if target is None else target
    if cap is not None and cap <= 0:
        return
    if src == dst:
        yield ()
        return
    inc = _incoming(m)
    useful = _closure({dst}, lambda uid: (e.src for e in inc[uid]))
    if src not in useful:
        return
    out = _outgoing(m)
    adjacency = {
        uid: sorted(
            (e for e in out[uid] if e.dst in useful), key=lambda e: (e.label, e.dst)
        )
        for uid in useful
    }
    emitted = 0
    frames: list[Iterator[MddEdge]] = [iter(adjacency[src])]
    labels: list[int] = []
    while frames:
        edge = next(frames[-1], None)
        if edge is None:
            frames.pop()
            if labels:
                labels.pop()
            continue
        if edge.dst == dst:
            yield (*labels, edge.label)
            emitted += 1
            if cap is not None and emitted >= cap:
                return
            continue
        labels.append(edge.label)
        frames.append(iter(adjacency[edge.dst]))


def count_paths(m: Mdd, *, source: int | None = None, target: int | None = None) -> int:
    """Counts source-to-target paths without enumerating them."""
    src = m.root if source is None else source
    dst = m.terminal if target is None else target
    if src == dst:
        return 1
    out = _outgoing(m)
    counts = {dst: 1}
    order = sorted(range(len(m.nodes)), key=lambda uid: m.nodes[uid].level, reverse=True)
    for uid in order:
        if uid == dst:
            continue
        total = sum(counts.get(e.dst, 0) for e in out[uid])
        if total:
            counts[uid] = total
    return counts.get(src, 0)


def stack_product(parts: Sequence[Mdd]) -> Mdd:
    """Fuses diagrams sequentially: each terminal becomes the next root.

    Level ranges are laid end to end, so every path through the result is
    the concatenation of one path through each part and the path count is
    the product of the per-part path counts.
    """
    if not parts:
        raise ValueError("need at least one diagram to stack")
    if len(parts) == 1:
        return parts[0]
    nodes: list[MddNode] = []
    edges: list[MddEdge] = []
    offset = 0
    boundary = 0
    root = 0
    for index, part in enumerate(parts):
        if part.nodes[part.root].level != 0:
            raise ValueError("stacked diagrams must be rooted at level zero")
        remap: dict[int, int] = {}
        for node in part.nodes:
            if index > 0 and node.uid == part.root:
                remap[node.uid] = boundary
                continue
            remap[node.uid] = len(nodes)
            nodes.append(MddNode(len(nodes), node.level + offset, node.val))
        for edge in part.edges:
            edges.append(MddEdge(remap[edge.src], edge.label, remap[edge.dst]))
        if index == 0:
            root = remap[part.root]
        boundary = remap[part.terminal]
        offset += part.nodes[part.terminal].level
    edges.sort(key=lambda e: (e.src, e.label, e.dst))
    return Mdd(nodes=tuple(nodes), edges=tuple(edges), root=root, terminal=boundary)


@dataclass(frozen=True)
class StackComponent:
    """Level span of one stacked part plus the decoder for its path labels."""

    start_level: int
    end_level: int
    decode: Callable[[tuple[int, ...]], CycleSum]


def stack_with_components(
    parts: Sequence[Mdd],
    decoders: Sequence[Callable[[tuple[int, ...]], CycleSum]],
) -> tuple[Mdd, tuple[StackComponent, ...]]:
    """Stacks diagrams and records each part's level span and decoder."""
    if len(parts) != len(decoders):
        raise ValueError("need exactly one decoder per stacked diagram")
    stacked = stack_product(parts)
    components: list[StackComponent] = []
    start = 0
    for part, decode in zip(parts, decoders):
        end = start + part.nodes[part.terminal].level
        components.append(StackComponent(start_level=start, end_level=end, decode=decode))
        start = end
    return stacked, tuple(components)


def _node_at_level(m: Mdd, level: int) -> int | None:
    uids = [node.uid for node in m.nodes if node.level == level]
    if not uids:
        return None
    if len(uids) > 1:
        raise ValueError(f"expected at most one node at level {level}, found {len(uids)}")
    return uids[0]


def component_solutions(m: Mdd, component: StackComponent) -> frozenset[CycleSum]:
    """Solution set contributed by one component of a stacked diagram.

    Component boundaries are levels realized by at most one node each:
    every complete path crosses every boundary, so reduction keeps exactly
    one node there whenever any path exists (and none otherwise).
    """
    src = _node_at_level(m, component.start_level)
    dst = _node_at_level(m, component.end_level)
    if src is None or dst is None:
        return frozenset()
    return frozenset(
        component.decode(labels)
        for labels in enumerate_paths(m, source=src, target=dst)
    )


def _sum_all(terms: Iterable[CycleSum]) -> CycleSum:
    total = ZERO
    for term in terms:
        total = cycle_add(total, term)
    return total


def _decomposes(target_sum: CycleSum, parts: Sequence[frozenset[CycleSum]]) -> bool:
    """Whether the sum splits into one solution from every component set."""
    memo: dict[tuple[int, CycleSum], bool] = {}

    def recurse(index: int, remaining: CycleSum) -> bool:
        if index == len(parts):
            return remaining.is_zero
        key = (index, remaining)
        cached = memo.get(key)
        if cached is not None:
            return cached
        result = False
        for candidate in parts[index]:
            rest = remaining.subtract(candidate)
            if rest is not None and recurse(index + 1, rest):
                result = True
                break
        memo[key] = result
        return result

    return recurse(0, target_sum)


def intersect(
    targets: Sequence[tuple[Mdd, Sequence[StackComponent]]],
) -> frozenset[CycleSum]:
    """Intersects the solution sets described by stacked diagrams.

    A single-component target contributes exactly its decoded path set; a
    multi-component target contributes every sum that picks one solution
    per component.  Single-component sets are intersected first to seed the
    candidate set (when there is none, the first multi-component target is
    expanded in full instead); every remaining target then keeps the
    candidates that split into one solution per component.  Membership in
    each target is checked independently, so the outcome does not depend on
    the order of the targets.
    """
    if not targets:
        raise ValueError("need at least one target to intersect")
    plain: list[frozenset[CycleSum]] = []
    compound: list[tuple[Mdd, Sequence[StackComponent]]] = []
    for diagram, components in targets:
        if len(components) == 1:
            plain.append(component_solutions(diagram, components[0]))
        else:
            compound.append((diagram, components))
    if plain:
        candidates = frozenset.intersection(*plain)
        remaining = compound
    else:
        first, first_components = compound[0]
        first_sets = [component_solutions(first, c) for c in first_components]
        candidates = frozenset(_sum_all(combo) for combo in product(*first_sets))
        remaining = compound[1:]
    for diagram, components in remaining:
        if not candidates:
            break
        sets = [component_solutions(diagram, c) for c in components]
        candidates = frozenset(x for x in candidates if _decomposes(x, sets))
    return candidates


def mdd_to_debug_json(m: Mdd) -> dict[str, object]:
    """JSON-ready description of a diagram for inspection and golden tests."""
    levels: dict[int, list[int]] = defaultdict(list)
    for node in m.nodes:
        levels[node.level].append(node.uid)
    return {
        "node_count": m.node_count,
        "edge_count": m.edge_count,
        "level_count": m.level_count,
        "root": m.root,
        "terminal": m.terminal,
        "levels": [levels[level] for level in sorted(levels)],
        "nodes": [{"id": n.uid, "level": n.level, "val": n.val} for n in m.nodes],
        "edges": [{"src": e.src, "label": e.label, "dst": e.dst} for e in m.edges],
    }
