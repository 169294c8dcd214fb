# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later
from .lot import (
    Edge,
    LotGraph,
    LotLayout,
    Node,
    NodeKind,
    OccupancyState,
    check_lot,
    load_layout,
    load_lot,
    parse_lot,
    reference_lot,
    set_occupancy,
    space_difficulty,
    vacant_spaces,
)

__all__ = [
    "Edge",
    "LotGraph",
    "LotLayout",
    "Node",
    "NodeKind",
    "OccupancyState",
    "check_lot",
    "load_layout",
    "load_lot",
    "parse_lot",
    "reference_lot",
    "set_occupancy",
    "space_difficulty",
    "vacant_spaces",
]
