# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later
from .recommend import (
    BASELINES,
    ENTROPY,
    Recommendation,
    composite_index,
    recommend,
    select,
)

__all__ = [
    "BASELINES",
    "ENTROPY",
    "Recommendation",
    "composite_index",
    "recommend",
    "select",
]
