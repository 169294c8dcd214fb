# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later
import heapq
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Set, Tuple

from opsr.errors import NodeKindError, UnreachableError
from opsr.lot import LotGraph, NodeKind

logger = logging.getLogger(__name__)

# Relative tolerance used to tell apart equally long paths whose lengths
# were summed in different orders.
_TIE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SearchCost:
    # Meters traveled from the start
    g: float
    # Straight line meters to the goal
    h: float

    @property
    def f(self) -> float:
        return self.g + self.h


@dataclass(frozen=True)
class Expansion:
    node: str
    cost: SearchCost


@dataclass(frozen=True)
class Path:
    nodes: Tuple[str, ...]
    length: float
    # Nodes in the order the search closed them
    expansions: Tuple[Expansion, ...] = field(default=(), compare=False, repr=False)


def _heuristic(graph: LotGraph, node: str, goal: str) -> float:
    return graph.distance(node, goal)


def _is_tight(g: Dict[str, float], a: str, b: str, length: float) -> bool:
    return math.isclose(g[a] + length, g[b], rel_tol=_TIE_TOLERANCE, abs_tol=1e-12)


def _smallest_path(
    graph: LotGraph, start: str, goal: str, g: Dict[str, float], closed: Set[str]
) -> List[str]:
    """
    Picks the lexicographically smallest node sequence among all shortest paths.
    Every node on a shortest path has been closed, so `g` is exact for them.
    """
    # Nodes from which the goal can be reached along shortest path edges.
    on_path = {goal}
    stack = [goal]
    while stack:
        current = stack.pop()
        for other, length in graph.neighbors(current):
            if other in closed and other not in on_path and _is_tight(g, other, current, length):
                on_path.add(other)
                stack.append(other)

    nodes = [start]
    while nodes[-1] != goal:
        current = nodes[-1]
        nodes.append(
            min(
                other
                for other, length in graph.neighbors(current)
                if other in on_path and _is_tight(g, current, other, length)
            )
        )
    return nodes


def _path_length(graph: LotGraph, nodes: Iterable[str]) -> float:
    # fsum doesn't depend on the order of the edges, a path and its
    # reverse always have the same length.
    nodes = list(nodes)
    return math.fsum(
        min(w for other, w in graph.neighbors(a) if other == b)
        for a, b in zip(nodes, nodes[1:])
    )


def astar(graph: LotGraph, start: str, goal: str) -> Path:
    """
    Shortest path between `start` and `goal` using A* with the straight line
    distance as heuristic.

    Equally long paths are resolved in favour of the lexicographically smallest
    node sequence so the result never depends on expansion details.
    """
    graph.node(start)
    graph.node(goal)
    if start == goal:
        return Path(nodes=(start,), length=0.0)

    g = {start: 0.0}
    closed: Set[str] = set()
    expansions: List[Expansion] = []
    # Equal f prefers larger g, then the smaller node id.
    heap = [(_heuristic(graph, start, goal), -0.0, start)]
    best = None

    while heap:
        f, _, current = heapq.heappop(heap)
        if current in closed:
            continue
        if best is not None and f > best * (1 + _TIE_TOLERANCE) + 1e-12:
            # Everything left is longer than the shortest path.
            break

        closed.add(current)
        expansions.append(
            Expansion(
                current,
                SearchCost(g=g[current], h=_heuristic(graph, current, goal)),
            )
        )
        if current == goal:
            best = g[current]
            # Keep going to close the nodes of other equally short paths.
            continue

        for other, length in graph.neighbors(current):
            if other in closed:
                continue
            candidate = g[current] + length
            if candidate < g.get(other, math.inf):
                g[other] = candidate
                heapq.heappush(
                    heap,
                    (candidate + _heuristic(graph, other, goal), -candidate, other),
                )

    if best is None:
        msg = f"No path between '{start}' and '{goal}'"
        raise UnreachableError(msg)

    logger.debug("A* %s -> %s expanded %d nodes", start, goal, len(expansions))
    nodes = _smallest_path(graph, start, goal, g, closed)
    return Path(
        nodes=tuple(nodes),
        length=_path_length(graph, nodes),
        expansions=tuple(expansions),
    )


def shortest_lengths(graph: LotGraph, source: str, targets: Iterable[str]) -> Dict[str, float]:
    """
    Shortest path length from `source` to every node in `targets` with a
    single search, A* without heuristic.

    Lengths are equal to the ones of `astar` in both directions since the
    graph is undirected.
    """
    graph.node(source)
    wanted = set(targets)
    for target in wanted:
        graph.node(target)

    g = {source: 0.0}
    parent: Dict[str, str] = {}
    closed: Set[str] = set()
    heap = [(0.0, source)]
    remaining = len(wanted)
    while heap and remaining:
        _, current = heapq.heappop(heap)
        if current in closed:
            continue
        closed.add(current)
        if current in wanted:
            remaining -= 1
        for other, length in graph.neighbors(current):
            if other in closed:
                continue
            candidate = g[current] + length
            if candidate < g.get(other, math.inf):
                g[other] = candidate
                parent[other] = current
                heapq.heappush(heap, (candidate, other))

    lengths = {}
    for target in sorted(wanted):
        if target not in closed:
            msg = f"No path between '{source}' and '{target}'"
            raise UnreachableError(msg)
        nodes = [target]
        while nodes[-1] != source:
            nodes.append(parent[nodes[-1]])
        lengths[target] = _path_length(graph, nodes)
    logger.debug("Single source search from %s closed %d nodes", source, len(closed))
    return lengths


def default_entrance(graph: LotGraph) -> str:
    """
    Returns the lexicographically first entrance of the lot.
    """
    if not graph.entrances:
        msg = "The lot has no entrance"
        raise NodeKindError(msg)
    return graph.entrances[0]


def driving_distance(graph: LotGraph, entrance: str, space: str) -> float:
    """
    Meters driven from `entrance` to `space`.
    """
    graph.require(entrance, NodeKind.ENTRANCE)
    graph.require(space, NodeKind.SPACE)
    return astar(graph, entrance, space).length


def walking_distance(graph: LotGraph, space: str, exits: Iterable[str]) -> float:
    """
    Meters walked from `space` to the closest of `exits`.
    Pedestrians use the same roads as cars.
    """
    graph.require(space, NodeKind.SPACE)
    exits = list(exits)
    if not exits:
        msg = "At least one exit is needed to compute walking distance"
        raise NodeKindError(msg)
    for exit_id in exits:
        graph.require(exit_id, NodeKind.EXIT)
    return min(astar(graph, space, exit_id).length for exit_id in exits)
