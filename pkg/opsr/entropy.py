# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later
import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from opsr.errors import DegenerateColumnError, DegeneratePopulationError, WeightsError
from opsr.factors import FactorMatrix

logger = logging.getLogger(__name__)

# Entropies this close to 0 or 1 are snapped to the bound.
_ENTROPY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class WeightVector:
    w1: float
    w2: float
    w3: float

    def __post_init__(self):
        for value in self.values:
            if not math.isfinite(value) or value < 0:
                msg = f"Weights must be finite and nonnegative, got {self.values}"
                raise WeightsError(msg)

    @property
    def values(self) -> Tuple[float, float, float]:
        return (self.w1, self.w2, self.w3)

    def scaled(self, factor: float) -> "WeightVector":
        return WeightVector(*(w * factor for w in self.values))


EQUAL_WEIGHTS = WeightVector(1 / 3, 1 / 3, 1 / 3)


@dataclass(frozen=True)
class EntropyReport:
    k: float
    # Entropy of each factor
    e: Tuple[float, float, float]
    # Information utility of each factor, 1 - e
    h: Tuple[float, float, float]
    w: WeightVector
    # True when the entropy carried no information and equal weights were used
    fallback: bool = False
    # Factors whose column sums to zero, reported with e = 1 and h = 0
    degenerate: Tuple[int, ...] = ()


def column_normalize(values: np.ndarray | Sequence[Sequence[float]]) -> np.ndarray:
    """
    Divides every entry by its column sum so each column adds up to 1.
    """
    matrix = np.asarray(values, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] < 1:
        msg = f"Expected a non empty m×n matrix, got shape {matrix.shape}"
        raise DegeneratePopulationError(msg)
    sums = matrix.sum(axis=0)
    if np.any(sums <= 0):
        columns = [int(j) for j in np.flatnonzero(sums <= 0)]
        msg = f"Columns {columns} sum to zero"
        raise DegenerateColumnError(msg)
    return matrix / sums


def entropy_coefficient(m: int) -> float:
    """
    Returns k = 1 / ln(m), the factor that bounds entropies to [0, 1].
    """
    if m <= 1:
        msg = f"Entropy needs at least two candidates, got {m}"
        raise DegeneratePopulationError(msg)
    return 1 / math.log(m)


def column_entropy(column: np.ndarray | Sequence[float], k: float) -> float:
    """
    Entropy of a normalized column, zero entries contribute nothing.
    """
    y = np.asarray(column, dtype=float)
    positive = y > 0
    terms = np.zeros_like(y)
    terms[positive] = y[positive] * np.log(y[positive])
    e = float(-k * terms.sum())
    if e > 1 - _ENTROPY_TOLERANCE:
        return 1.0
    if e < _ENTROPY_TOLERANCE:
        return 0.0
    return e


def utility_weights(h: Sequence[float]) -> WeightVector:
    """
    Turns information utilities into weights summing to 1.
    """
    h = np.asarray(h, dtype=float)
    total = h.sum()
    if total <= 0:
        msg = "Information utilities are all zero"
        raise WeightsError(msg)
    return WeightVector(*(float(v) for v in h / total))


def entropy_weights(matrix: FactorMatrix | np.ndarray) -> EntropyReport:
    """
    Derives factor weights with the entropy method.

    Factors that vary more across the candidates get a larger weight.
    Falls back to equal weights when no factor discriminates between candidates.
    """
    values = matrix.values if isinstance(matrix, FactorMatrix) else np.asarray(matrix, dtype=float)
    if values.ndim != 2:
        msg = f"Expected a m×3 matrix, got shape {values.shape}"
        raise DegeneratePopulationError(msg)
    m = values.shape[0]
    k = entropy_coefficient(m)

    e_values = []
    degenerate = []
    for j in range(values.shape[1]):
        try:
            y = column_normalize(values[:, [j]])
        except DegenerateColumnError:
            degenerate.append(j)
            e_values.append(1.0)
            continue
        e_values.append(column_entropy(y[:, 0], k))

    e = tuple(e_values)
    h = tuple(1 - v for v in e)
    logger.debug("Entropy k=%s e=%s h=%s", k, e, h)

    if degenerate:
        logger.warning("Falling back to equal weights: factors %s sum to zero", degenerate)
        return EntropyReport(
            k=k, e=e, h=h, w=EQUAL_WEIGHTS, fallback=True, degenerate=tuple(degenerate)
        )

    if not any(h):
        logger.warning("Falling back to equal weights: every factor is uniform")
        return EntropyReport(k=k, e=e, h=h, w=EQUAL_WEIGHTS, fallback=True)

    return EntropyReport(k=k, e=e, h=h, w=utility_weights(h))
