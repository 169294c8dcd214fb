# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from enum import StrEnum
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Any, Dict, Iterable, List, Mapping, Tuple

import yaml

from opsr.errors import (
    LotParseError,
    LotValidationError,
    NodeKindError,
    OccupancyError,
    UnknownNodeError,
)

logger = logging.getLogger(__name__)

REFERENCE_LOT = "reference_lot.yml"

_DOCUMENT_FIELDS = {"nodes", "edges", "neighbors", "occupied"}
_NODE_FIELDS = {"id", "kind", "x", "y"}
_EDGE_FIELDS = {"a", "b", "length"}

# libyaml parses big layouts much faster, it's not always compiled in
_Loader = getattr(yaml, "CSafeLoader", yaml.SafeLoader)


class NodeKind(StrEnum):
    ENTRANCE = "entrance"
    EXIT = "exit"
    INTERSECTION = "intersection"
    SPACE = "space"


@dataclass(frozen=True)
class Node:
    id: str
    kind: NodeKind
    # Coordinates in meters
    x: float
    y: float


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    # Length in meters, never shorter than the straight line between a and b
    length: float


@dataclass(frozen=True)
class LotGraph:
    """
    Undirected graph of a parking lot.

    Building one only indexes the nodes, use `check_lot` or `load_lot`
    to get a fully validated graph.
    """

    nodes: Tuple[Node, ...]
    edges: Tuple[Edge, ...]
    # Pairs of spaces that are physically side by side
    neighbor_pairs: Tuple[Tuple[str, str], ...] = ()
    _index: Mapping[str, Node] = field(init=False, repr=False, compare=False)
    _adjacency: Mapping[str, Tuple[Tuple[str, float], ...]] = field(
        init=False, repr=False, compare=False
    )
    _space_neighbors: Mapping[str, Tuple[str, ...]] = field(
        init=False, repr=False, compare=False
    )
    _kinds: Mapping[NodeKind, Tuple[str, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index: Dict[str, Node] = {}
        for node in self.nodes:
            if node.id in index:
                msg = f"Duplicate node id '{node.id}'"
                raise LotValidationError(msg)
            index[node.id] = node

        adjacency: Dict[str, List[Tuple[str, float]]] = {n: [] for n in index}
        for edge in self.edges:
            for end in (edge.a, edge.b):
                if end not in index:
                    msg = f"Edge '{edge.a}'-'{edge.b}' references unknown node '{end}'"
                    raise LotValidationError(msg)
            adjacency[edge.a].append((edge.b, edge.length))
            adjacency[edge.b].append((edge.a, edge.length))

        space_neighbors: Dict[str, List[str]] = {}
        for pair in self.neighbor_pairs:
            for end in pair:
                if end not in index:
                    msg = f"Neighbor pair {list(pair)} references unknown node '{end}'"
                    raise LotValidationError(msg)
            first, second = pair
            space_neighbors.setdefault(first, []).append(second)
            space_neighbors.setdefault(second, []).append(first)

        object.__setattr__(self, "_index", MappingProxyType(index))
        object.__setattr__(
            self,
            "_adjacency",
            MappingProxyType({k: tuple(sorted(v)) for k, v in adjacency.items()}),
        )
        object.__setattr__(
            self,
            "_space_neighbors",
            MappingProxyType({k: tuple(sorted(v)) for k, v in space_neighbors.items()}),
        )
        object.__setattr__(
            self,
            "_kinds",
            MappingProxyType(
                {
                    kind: tuple(sorted(n.id for n in self.nodes if n.kind == kind))
                    for kind in NodeKind
                }
            ),
        )

    def __contains__(self, node_id: object) -> bool:
        return node_id in self._index

    def node(self, node_id: str) -> Node:
        try:
            return self._index[node_id]
        except KeyError as exc:
            msg = f"Unknown node '{node_id}'"
            raise UnknownNodeError(msg) from exc

    def neighbors(self, node_id: str) -> Tuple[Tuple[str, float], ...]:
        """
        Returns `(node id, edge length)` for every node joined to `node_id`,
        sorted by node id.
        """
        try:
            return self._adjacency[node_id]
        except KeyError as exc:
            msg = f"Unknown node '{node_id}'"
            raise UnknownNodeError(msg) from exc

    def ids(self, kind: NodeKind) -> Tuple[str, ...]:
        """
        Returns the ids of all nodes of the given kind sorted lexicographically.
        """
        return self._kinds[kind]

    @property
    def spaces(self) -> Tuple[str, ...]:
        return self.ids(NodeKind.SPACE)

    @property
    def entrances(self) -> Tuple[str, ...]:
        return self.ids(NodeKind.ENTRANCE)

    @property
    def exits(self) -> Tuple[str, ...]:
        return self.ids(NodeKind.EXIT)

    def require(self, node_id: str, kind: NodeKind) -> Node:
        """
        Returns the node with the given id, raises if it's missing or of another kind.
        """
        node = self.node(node_id)
        if node.kind != kind:
            msg = f"Node '{node_id}' is a {node.kind.value}, not a {kind.value}"
            raise NodeKindError(msg)
        return node

    def space_neighbors(self, space: str) -> Tuple[str, ...]:
        """
        Returns the declared side by side neighbors of a space, at most two.
        """
        self.require(space, NodeKind.SPACE)
        return self._space_neighbors.get(space, ())

    def distance(self, a: str, b: str) -> float:
        """
        Straight line distance between two nodes in meters.
        """
        try:
            first, second = self._index[a], self._index[b]
        except KeyError as exc:
            msg = f"Unknown node '{exc.args[0]}'"
            raise UnknownNodeError(msg) from exc
        return math.dist((first.x, first.y), (second.x, second.y))


@dataclass(frozen=True)
class OccupancyState:
    """
    Occupied/vacant flag for every space of a graph.

    States are snapshots, `set_occupancy` returns a new one.
    """

    graph: LotGraph = field(repr=False)
    occupied: Mapping[str, bool]

    def __post_init__(self):
        occupied = MappingProxyType(dict(sorted(self.occupied.items())))
        if set(occupied) != set(self.graph.spaces):
            msg = "Occupancy keys must be exactly the spaces of the lot"
            raise OccupancyError(msg)
        object.__setattr__(self, "occupied", occupied)

    @classmethod
    def for_graph(cls, graph: LotGraph, occupied: Iterable[str] = ()) -> "OccupancyState":
        """
        Creates a state where only the given spaces are occupied.
        """
        flags = {space: False for space in graph.spaces}
        for space in occupied:
            graph.require(space, NodeKind.SPACE)
            flags[space] = True
        return cls(graph=graph, occupied=flags)

    def is_occupied(self, space: str) -> bool:
        self.graph.require(space, NodeKind.SPACE)
        return self.occupied[space]


@dataclass(frozen=True)
class LotLayout:
    """
    A loaded layout document: the graph and its optional initial occupancy.
    """

    graph: LotGraph
    occupied: Tuple[str, ...] = ()

    def occupancy(self) -> OccupancyState:
        return OccupancyState.for_graph(self.graph, self.occupied)


def set_occupancy(state: OccupancyState, space: str, occupied: bool) -> OccupancyState:
    """
    Returns a copy of `state` with only the flag of `space` changed.
    """
    state.graph.require(space, NodeKind.SPACE)
    flags = dict(state.occupied)
    flags[space] = occupied
    return OccupancyState(graph=state.graph, occupied=flags)


def vacant_spaces(graph: LotGraph, state: OccupancyState) -> List[str]:
    """
    Returns the vacant spaces sorted by id, this is the canonical candidate order.
    """
    if set(state.occupied) != set(graph.spaces):
        msg = "Occupancy state doesn't match the lot"
        raise OccupancyError(msg)
    return [space for space in graph.spaces if not state.occupied[space]]


def space_difficulty(graph: LotGraph, state: OccupancyState, space: str) -> int:
    """
    Returns how hard it is to park in `space`:
    3 with both neighbors occupied, 2 with only one, 1 otherwise.
    Undeclared neighbors count as vacant.
    """
    neighbors = graph.space_neighbors(space)
    return 1 + sum(1 for n in neighbors if state.occupied[n])


def check_lot(graph: LotGraph) -> LotGraph:
    """
    Validates a graph, raises `LotValidationError` naming the first violation.
    """
    for kind in (NodeKind.ENTRANCE, NodeKind.EXIT, NodeKind.SPACE):
        if not graph.ids(kind):
            msg = f"The lot has no {kind.value} node"
            raise LotValidationError(msg)

    for node in graph.nodes:
        if not (math.isfinite(node.x) and math.isfinite(node.y)):
            msg = f"Node '{node.id}' has non finite coordinates"
            raise LotValidationError(msg)

    seen = set()
    for edge in graph.edges:
        name = f"'{edge.a}'-'{edge.b}'"
        if edge.a == edge.b:
            msg = f"Edge {name} is a loop"
            raise LotValidationError(msg)
        pair = frozenset((edge.a, edge.b))
        if pair in seen:
            msg = f"Edge {name} is declared more than once"
            raise LotValidationError(msg)
        seen.add(pair)
        if not (math.isfinite(edge.length) and edge.length > 0):
            msg = f"Edge {name} must have a positive length, got {edge.length}"
            raise LotValidationError(msg)
        straight = graph.distance(edge.a, edge.b)
        if edge.length < straight:
            msg = (
                f"Edge {name} is {edge.length} m long but its ends are "
                f"{straight} m apart"
            )
            raise LotValidationError(msg)

    seen = set()
    for first, second in graph.neighbor_pairs:
        for end in (first, second):
            if graph.node(end).kind != NodeKind.SPACE:
                msg = f"Neighbor pair ['{first}', '{second}'] references non space '{end}'"
                raise LotValidationError(msg)
        pair = frozenset((first, second))
        if first == second or pair in seen:
            msg = f"Neighbor pair ['{first}', '{second}'] is invalid or repeated"
            raise LotValidationError(msg)
        seen.add(pair)
    for space in graph.spaces:
        if len(graph.space_neighbors(space)) > 2:
            msg = f"Space '{space}' declares more than two neighbors"
            raise LotValidationError(msg)

    # The graph is undirected so reaching every node from one entrance
    # means the whole driving network is connected.
    start = graph.entrances[0]
    reached = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for other, _ in graph.neighbors(current):
            if other not in reached:
                reached.add(other)
                queue.append(other)
    for node in graph.nodes:
        if node.id not in reached:
            msg = f"{node.kind.value.capitalize()} '{node.id}' is not reachable from '{start}'"
            raise LotValidationError(msg)

    return graph


def _check_fields(item: Any, allowed: set, what: str) -> Dict[str, Any]:
    if not isinstance(item, dict):
        msg = f"Every {what} must be a mapping, got {item!r}"
        raise LotParseError(msg)
    if unknown := sorted(set(item) - allowed):
        msg = f"Unknown {what} fields: {', '.join(map(str, unknown))}"
        raise LotParseError(msg)
    return item


def _number(value: Any, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        msg = f"{what} must be a number, got {value!r}"
        raise LotParseError(msg)
    return float(value)


def _build_layout(document: Any) -> LotLayout:
    document = _check_fields(document, _DOCUMENT_FIELDS, "document")

    nodes = []
    for item in document.get("nodes") or []:
        item = _check_fields(item, _NODE_FIELDS, "node")
        try:
            node_id = str(item["id"])
            kind = NodeKind(str(item["kind"]).lower())
        except KeyError as exc:
            msg = f"Node {item!r} is missing field {exc}"
            raise LotParseError(msg) from exc
        except ValueError as exc:
            msg = f"Node '{item['id']}' has unknown kind '{item['kind']}'"
            raise LotParseError(msg) from exc
        x = _number(item.get("x"), f"Node '{node_id}' x")
        y = _number(item.get("y"), f"Node '{node_id}' y")
        nodes.append(Node(id=node_id, kind=kind, x=x, y=y))

    coordinates = {n.id: (n.x, n.y) for n in nodes}
    edges = []
    for item in document.get("edges") or []:
        item = _check_fields(item, _EDGE_FIELDS, "edge")
        try:
            a, b = str(item["a"]), str(item["b"])
        except KeyError as exc:
            msg = f"Edge {item!r} is missing field {exc}"
            raise LotParseError(msg) from exc
        if "length" in item and item["length"] is not None:
            length = _number(item["length"], f"Edge '{a}'-'{b}' length")
        elif a in coordinates and b in coordinates:
            length = math.dist(coordinates[a], coordinates[b])
        else:
            missing = a if a not in coordinates else b
            msg = f"Edge '{a}'-'{b}' references unknown node '{missing}'"
            raise LotValidationError(msg)
        edges.append(Edge(a=a, b=b, length=length))

    pairs = []
    for item in document.get("neighbors") or []:
        if not isinstance(item, list) or len(item) != 2:
            msg = f"Neighbor pairs must be lists of two space ids, got {item!r}"
            raise LotParseError(msg)
        pairs.append((str(item[0]), str(item[1])))

    occupied = document.get("occupied") or []
    if not isinstance(occupied, list):
        msg = "'occupied' must be a list of space ids"
        raise LotParseError(msg)

    graph = check_lot(
        LotGraph(nodes=tuple(nodes), edges=tuple(edges), neighbor_pairs=tuple(pairs))
    )
    for space in occupied:
        if str(space) not in graph:
            msg = f"Occupied space '{space}' is not in the lot"
            raise LotValidationError(msg)
        if graph.node(str(space)).kind != NodeKind.SPACE:
            msg = f"Occupied id '{space}' is not a space"
            raise LotValidationError(msg)

    logger.info(
        "Loaded lot with %d nodes, %d edges, %d spaces",
        len(graph.nodes),
        len(graph.edges),
        len(graph.spaces),
    )
    return LotLayout(graph=graph, occupied=tuple(str(s) for s in occupied))


def parse_lot(text: str) -> LotLayout:
    """
    Loads a layout from YAML text, JSON works too being a subset of YAML.
    """
    try:
        document = yaml.load(text, Loader=_Loader)
    except yaml.YAMLError as exc:
        msg = f"Invalid layout document: {exc}"
        raise LotParseError(msg) from exc
    return _build_layout(document)


def load_layout(source: Path | str | Mapping[str, Any]) -> LotLayout:
    """
    Load a layout from a file path or from an already parsed document.
    """
    if isinstance(source, Mapping):
        return _build_layout(dict(source))

    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        msg = f"Can't read layout file '{path}': {exc.strerror or exc}"
        raise LotParseError(msg) from exc
    return parse_lot(text)


def load_lot(source: Path | str | Mapping[str, Any]) -> LotGraph:
    return load_layout(source).graph


def reference_lot() -> LotLayout:
    """
    Returns the reference four row lot shipped with the package.
    """
    text = resources.files("opsr.lot").joinpath(REFERENCE_LOT).read_text(encoding="utf-8")
    return parse_lot(text)
