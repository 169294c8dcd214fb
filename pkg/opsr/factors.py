# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Tuple

import numpy as np

from opsr.errors import (
    DegenerateError,
    LotFullError,
    NodeKindError,
    OccupancyError,
    OpsrError,
)
from opsr.lot import LotGraph, NodeKind, OccupancyState, space_difficulty, vacant_spaces
from opsr.pathfind import driving_distance, shortest_lengths, walking_distance

# Highest possible parking difficulty, used to normalize S
DIFFICULTY_MAX = 3


@dataclass(frozen=True)
class RawFactors:
    space: str
    # Driving distance from the entrance in meters
    x: float
    # Walking distance to the closest exit in meters
    l: float  # noqa: E741
    # Parking difficulty, 1 to 3
    s: int


@dataclass(frozen=True)
class FactorRow:
    space: str
    x: float
    l: float  # noqa: E741
    s: float

    @property
    def values(self) -> Tuple[float, float, float]:
        return (self.x, self.l, self.s)


@dataclass(frozen=True)
class FactorMatrix:
    """
    Normalized factors of every vacant space, rows sorted by space id.
    """

    rows: Tuple[FactorRow, ...]
    # Reference distances the rows were normalized with
    x_max: float
    l_max: float
    raw: Tuple[RawFactors, ...] = ()

    @property
    def spaces(self) -> Tuple[str, ...]:
        return tuple(row.space for row in self.rows)

    @property
    def values(self) -> np.ndarray:
        """
        Returns the rows as a m×3 array.
        """
        return np.array([row.values for row in self.rows], dtype=float).reshape(-1, 3)


def raw_factors(
    graph: LotGraph,
    state: OccupancyState,
    space: str,
    entrance: str,
    exits: Iterable[str],
) -> RawFactors:
    return RawFactors(
        space=space,
        x=driving_distance(graph, entrance, space),
        l=walking_distance(graph, space, exits),
        s=space_difficulty(graph, state, space),
    )


@dataclass(frozen=True)
class LotDistances:
    # Driving distance from the entrance of every space
    x: Mapping[str, float]
    # Walking distance to the closest exit of every space
    l: Mapping[str, float]  # noqa: E741


def lot_distances(graph: LotGraph, entrance: str, exits: Iterable[str]) -> LotDistances:
    """
    Driving and walking distances of every space, occupied or not.
    Needs one search from the entrance and one from each exit.
    """
    graph.require(entrance, NodeKind.ENTRANCE)
    exits = list(exits)
    if not exits:
        msg = "At least one exit is needed to compute walking distance"
        raise NodeKindError(msg)
    for exit_id in exits:
        graph.require(exit_id, NodeKind.EXIT)

    spaces = graph.spaces
    x = shortest_lengths(graph, entrance, spaces)
    from_exits = [shortest_lengths(graph, exit_id, spaces) for exit_id in exits]
    l = {space: min(lengths[space] for lengths in from_exits) for space in spaces}  # noqa: E741
    return LotDistances(x=MappingProxyType(x), l=MappingProxyType(l))


def reference_distances(
    graph: LotGraph, entrance: str, exits: Iterable[str], distances: LotDistances | None = None
) -> Tuple[float, float]:
    """
    Returns the farthest driving and walking distances over all the spaces,
    occupied or not, so normalization doesn't move when the lot fills up.
    """
    if distances is None:
        distances = lot_distances(graph, entrance, exits)
    x_max = max(distances.x.values())
    l_max = max(distances.l.values())
    if x_max <= 0 or l_max <= 0:
        msg = "Reference distances must be positive, every space sits on the entrance or exit"
        raise DegenerateError(msg)
    return x_max, l_max


def fuzzy_normalize(value: float, maximum: float) -> float:
    """
    Maps `value` into [0, 1] with a linear membership that reaches 1 at `maximum`.
    """
    if maximum <= 0:
        msg = f"Normalization maximum must be positive, got {maximum}"
        raise DegenerateError(msg)
    if value < 0 or value > maximum:
        msg = f"Value {value} is outside [0, {maximum}]"
        raise OpsrError(msg)
    return value / maximum


def build_factor_matrix(
    graph: LotGraph,
    state: OccupancyState,
    entrance: str,
    exits: Iterable[str],
) -> FactorMatrix:
    exits = list(exits)
    spaces = vacant_spaces(graph, state)
    if not spaces:
        msg = "There are no vacant spaces"
        raise LotFullError(msg)
    if state.graph != graph:
        msg = "Occupancy state belongs to another lot"
        raise OccupancyError(msg)

    distances = lot_distances(graph, entrance, exits)
    x_max, l_max = reference_distances(graph, entrance, exits, distances)
    raw = tuple(
        RawFactors(
            space=space,
            x=distances.x[space],
            l=distances.l[space],
            s=space_difficulty(graph, state, space),
        )
        for space in spaces
    )
    rows = tuple(
        FactorRow(
            space=r.space,
            x=fuzzy_normalize(r.x, x_max),
            l=fuzzy_normalize(r.l, l_max),
            s=fuzzy_normalize(r.s, DIFFICULTY_MAX),
        )
        for r in raw
    )
    return FactorMatrix(rows=rows, x_max=x_max, l_max=l_max, raw=raw)
