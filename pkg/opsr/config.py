# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Tuple

from opsr.entropy import WeightVector
from opsr.errors import OpsrError, WeightsError
from opsr.lot import LotGraph, OccupancyState, load_layout
from opsr.pathfind import default_entrance
from opsr.recommend import ENTROPY
from opsr.recommend.recommend import Weights

COMMANDS = ("validate", "recommend", "weights", "factors", "compare", "render")
FORMATS = ("table", "structured")


def parse_ids(value: str | None) -> List[str] | None:
    """
    Splits a comma separated list of ids, None stays None.
    """
    if value is None:
        return None
    return [item.strip() for item in value.split(",") if item.strip()]


def parse_weights(value: str | None) -> Weights:
    """
    Parses `entropy` or three comma separated weights like `1,10,1`.
    """
    if value is None or value.strip().lower() == ENTROPY:
        return ENTROPY
    parts = parse_ids(value) or []
    if len(parts) != 3:
        msg = f"Weights must be '{ENTROPY}' or three comma separated numbers, got '{value}'"
        raise WeightsError(msg)
    try:
        weights = WeightVector(*(float(p) for p in parts))
    except ValueError as exc:
        msg = f"Invalid weights '{value}': {exc}"
        raise WeightsError(msg) from exc
    if not any(weights.values):
        msg = "At least one weight must be positive"
        raise WeightsError(msg)
    return weights


@dataclass
class CliConfig:
    # The command being run
    command: str
    # Path to the lot layout file
    lot_path: Path
    # Occupied spaces, overrides the layout `occupied` list.
    # None means the layout list is used.
    occupied: List[str] | None = None
    # Either "entropy" or a fixed weight vector
    weights_mode: Weights = ENTROPY
    # How results are printed, "table" or "structured"
    output_format: str = "table"
    # File to write the output to, standard output if None
    out_path: Path | None = None
    # Scenarios to run with the compare command
    scenarios: List[str] = field(default_factory=lambda: ["A", "B", "C", "D"])
    # Entrance the driving distance is measured from.
    # None means the lexicographically first one.
    entrance: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            msg = f"Unknown command '{self.command}'"
            raise OpsrError(msg)
        if self.output_format not in FORMATS:
            msg = f"Unknown format '{self.output_format}', expected one of {', '.join(FORMATS)}"
            raise OpsrError(msg)
        if isinstance(self.weights_mode, WeightVector) and not any(self.weights_mode.values):
            msg = "At least one weight must be positive"
            raise WeightsError(msg)

    @property
    def structured(self) -> bool:
        return self.output_format == "structured"

    def load(self) -> Tuple[LotGraph, OccupancyState]:
        """
        Loads the lot and its occupancy, the `occupied` option wins over the file.
        """
        layout = load_layout(self.lot_path)
        if self.occupied is None:
            return layout.graph, layout.occupancy()
        return layout.graph, OccupancyState.for_graph(layout.graph, self.occupied)

    def entrance_for(self, graph: LotGraph) -> str:
        return self.entrance or default_entrance(graph)
