# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Dict, Iterable, List, Sequence, Tuple

from opsr.errors import OccupancyError, ScenarioError, WeightsError
from opsr.factors import RawFactors, raw_factors
from opsr.lot import LotGraph, OccupancyState, reference_lot, vacant_spaces
from opsr.pathfind import default_entrance
from opsr.recommend import BASELINES, ENTROPY, recommend
from opsr.recommend.recommend import Weights

from .config import DurationModel

logger = logging.getLogger(__name__)

OPSR = "OPSR"
METHODS = (OPSR, *BASELINES)

SCENARIOS: Dict[str, str] = {
    "A": "Vacant",
    "B": "Every candidate is surrounded by two cars",
    "C": "Same driving distance",
    "D": "Same walking distance",
}

_VACANT_ONLY: Dict[str, Tuple[str, ...]] = {
    "C": ("C3", "C4", "C5", "D3", "D5"),
    "D": ("A3", "A5", "B3", "B4", "B5"),
}


@dataclass(frozen=True)
class Duration:
    # All values in seconds
    drive: float
    maneuver: float
    walk: float
    total: float


@dataclass(frozen=True)
class Scenario:
    id: str
    description: str
    occupancy: OccupancyState


@dataclass(frozen=True)
class ComparisonCell:
    scenario: str
    method: str
    space: str
    drive_s: float
    maneuver_s: float
    walk_s: float
    total_s: float

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class ComparisonReport:
    # Sorted by scenario then method
    cells: Tuple[ComparisonCell, ...]

    @property
    def scenarios(self) -> Tuple[str, ...]:
        return tuple(dict.fromkeys(c.scenario for c in self.cells))

    def cell(self, scenario: str, method: str) -> ComparisonCell:
        for c in self.cells:
            if c.scenario == scenario and c.method == method:
                return c
        msg = f"No cell for scenario '{scenario}' and method '{method}'"
        raise KeyError(msg)

    def opsr_lowest(self) -> Dict[str, bool]:
        """
        For every scenario tells whether OPSR had the lowest total duration,
        ties included. Scenarios without an OPSR cell are left out.
        """
        summary = {}
        for scenario in self.scenarios:
            cells = [c for c in self.cells if c.scenario == scenario]
            opsr = [c for c in cells if c.method == OPSR]
            if not opsr:
                continue
            lowest = min(c.total_s for c in cells)
            summary[scenario] = opsr[0].total_s <= lowest + 1e-9
        return summary


def duration_of(raw: RawFactors, model: DurationModel) -> Duration:
    drive = raw.x / model.drive_speed
    maneuver = model.maneuver_times[raw.s]
    walk = raw.l / model.walk_speed
    return Duration(drive=drive, maneuver=maneuver, walk=walk, total=drive + maneuver + walk)


def duration(
    graph: LotGraph,
    state: OccupancyState,
    space: str,
    model: DurationModel,
    entrance: str,
    exits: Iterable[str],
) -> Duration:
    """
    Time needed to drive to `space`, park there and walk to the closest exit.
    """
    if state.is_occupied(space):
        msg = f"Space '{space}' is occupied"
        raise OccupancyError(msg)
    return duration_of(raw_factors(graph, state, space, entrance, exits), model)


def _surrounded(graph: LotGraph) -> List[str]:
    """
    Picks vacant spaces so that each has two declared neighbors, both occupied.
    """
    vacant: List[str] = []
    for space in graph.spaces:
        neighbors = graph.space_neighbors(space)
        if len(neighbors) == 2 and not any(n in vacant for n in neighbors):
            vacant.append(space)
    return vacant


def build_scenario(scenario_id: str, graph: LotGraph | None = None) -> Scenario:
    """
    Builds one of the comparison scenarios, on the reference lot by default.
    """
    if scenario_id not in SCENARIOS:
        msg = f"Unknown scenario '{scenario_id}', expected one of {', '.join(SCENARIOS)}"
        raise ScenarioError(msg)
    if graph is None:
        graph = reference_lot().graph

    if scenario_id == "A":
        vacant = list(graph.spaces)
    elif scenario_id == "B":
        vacant = _surrounded(graph)
        if not vacant:
            msg = "Scenario B needs spaces with two declared neighbors"
            raise ScenarioError(msg)
    else:
        vacant = list(_VACANT_ONLY[scenario_id])
        for space in vacant:
            if space not in graph.spaces:
                msg = f"Scenario {scenario_id} needs space '{space}' which is not in the lot"
                raise ScenarioError(msg)

    occupied = [space for space in graph.spaces if space not in vacant]
    return Scenario(
        id=scenario_id,
        description=SCENARIOS[scenario_id],
        occupancy=OccupancyState.for_graph(graph, occupied),
    )


def method_weights(method: str) -> Weights:
    if method == OPSR:
        return ENTROPY
    if method not in BASELINES:
        msg = f"Unknown method '{method}', expected one of {', '.join(METHODS)}"
        raise WeightsError(msg)
    return BASELINES[method]


def _run_cell(
    scenario: Scenario,
    method: str,
    model: DurationModel,
    entrance: str | None,
    exits: Sequence[str] | None,
) -> ComparisonCell:
    state = scenario.occupancy
    graph = state.graph
    entrance = entrance or default_entrance(graph)
    exits = exits or graph.exits

    chosen = recommend(graph, state, entrance, exits, method_weights(method))
    spent = duration(graph, state, chosen.space, model, entrance, exits)
    logger.info(
        "Scenario %s, method %s: %s in %.3f s (%d candidates)",
        scenario.id,
        method,
        chosen.space,
        spent.total,
        len(vacant_spaces(graph, state)),
    )
    return ComparisonCell(
        scenario=scenario.id,
        method=method,
        space=chosen.space,
        drive_s=spent.drive,
        maneuver_s=spent.maneuver,
        walk_s=spent.walk,
        total_s=spent.total,
    )


def run_comparison(
    scenarios: Iterable[Scenario],
    methods: Iterable[str] = METHODS,
    model: DurationModel | None = None,
    entrance: str | None = None,
    exits: Sequence[str] | None = None,
    jobs: int = 1,
) -> ComparisonReport:
    """
    Recommends a space with every method in every scenario and measures how
    long each choice takes.

    Cells are independent, with `jobs > 1` they run on a thread pool.
    The report order is always scenario then method as given.
    """
    model = model or DurationModel()
    methods = list(methods)
    for method in methods:
        method_weights(method)
    tasks = [(scenario, method) for scenario in scenarios for method in methods]

    def _run(task: Tuple[Scenario, str]) -> ComparisonCell:
        return _run_cell(task[0], task[1], model, entrance, exits)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(_run, tasks))
    else:
        cells = [_run(task) for task in tasks]
    return ComparisonReport(cells=tuple(cells))
