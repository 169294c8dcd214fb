# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later
from .config import DurationModel
from .evaluate import (
    METHODS,
    OPSR,
    SCENARIOS,
    ComparisonCell,
    ComparisonReport,
    Duration,
    Scenario,
    build_scenario,
    duration,
    duration_of,
    method_weights,
    run_comparison,
)

__all__ = [
    "METHODS",
    "OPSR",
    "SCENARIOS",
    "ComparisonCell",
    "ComparisonReport",
    "Duration",
    "DurationModel",
    "Scenario",
    "build_scenario",
    "duration",
    "duration_of",
    "method_weights",
    "run_comparison",
]
