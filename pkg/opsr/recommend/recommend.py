# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Literal, Sequence, Tuple

from opsr.entropy import EQUAL_WEIGHTS, EntropyReport, WeightVector, entropy_weights
from opsr.errors import WeightsError
from opsr.factors import FactorMatrix, FactorRow, build_factor_matrix
from opsr.lot import LotGraph, OccupancyState

logger = logging.getLogger(__name__)

ENTROPY = "entropy"

# Fixed weight vectors the entropy weights are compared against
BASELINES: Dict[str, WeightVector] = {
    "I": WeightVector(1, 1, 1),
    "II": WeightVector(10, 1, 1),
    "III": WeightVector(1, 10, 1),
    "IV": WeightVector(1, 1, 10),
}

Weights = WeightVector | Literal["entropy"]


@dataclass(frozen=True)
class Recommendation:
    space: str
    h_value: float
    # Composite index of every vacant space, sorted by space id
    per_space_indices: Tuple[Tuple[str, float], ...]
    weights_used: WeightVector
    # Set when the weights didn't come from the entropy of the candidates,
    # either a single candidate or uniform factors
    fallback_flag: bool
    factors: FactorMatrix
    entropy: EntropyReport | None = None

    def ranking(self) -> Tuple[Tuple[str, float], ...]:
        """
        Returns the vacant spaces from best to worst.
        """
        return tuple(sorted(self.per_space_indices, key=lambda p: (p[1], p[0])))


def composite_index(row: FactorRow | Sequence[float], w: WeightVector) -> float:
    """
    Weighted sum of the normalized factors, smaller is better.
    """
    x, l, s = row.values if isinstance(row, FactorRow) else row  # noqa: E741
    if not any(w.values):
        msg = "At least one weight must be positive"
        raise WeightsError(msg)
    return w.w1 * x + w.w2 * l + w.w3 * s


def select(
    factors: FactorMatrix, weights: WeightVector
) -> Tuple[str, float, Tuple[Tuple[str, float], ...]]:
    """
    Returns the space with the smallest composite index, ties go to the smallest id.
    """
    indices = tuple((row.space, composite_index(row, weights)) for row in factors.rows)
    space, value = min(indices, key=lambda p: (p[1], p[0]))
    return space, value, indices


def recommend(
    graph: LotGraph,
    state: OccupancyState,
    entrance: str,
    exits: Iterable[str],
    weights: Weights = ENTROPY,
) -> Recommendation:
    """
    Recommends the vacant space with the best composite index.

    With `weights="entropy"` the weights are derived from the current candidates
    every time, otherwise the given vector is used as is.
    """
    if isinstance(weights, str) and weights != ENTROPY:
        msg = f"Unknown weights mode '{weights}'"
        raise WeightsError(msg)

    factors = build_factor_matrix(graph, state, entrance, exits)

    report = None
    if len(factors.rows) == 1:
        # Nothing to weigh, the only candidate wins.
        used = EQUAL_WEIGHTS if weights == ENTROPY else weights
        fallback = True
    elif weights == ENTROPY:
        report = entropy_weights(factors)
        used = report.w
        fallback = report.fallback
    else:
        used = weights
        fallback = False

    space, value, indices = select(factors, used)
    logger.info("Recommending %s with H=%.6f", space, value)
    return Recommendation(
        space=space,
        h_value=value,
        per_space_indices=indices,
        weights_used=used,
        fallback_flag=fallback,
        factors=factors,
        entropy=report,
    )
