# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: MIT
import random

import pytest

from opsr.entropy import EQUAL_WEIGHTS, WeightVector
from opsr.errors import LotFullError, WeightsError
from opsr.factors import FactorMatrix, FactorRow
from opsr.lot import OccupancyState
from opsr.recommend import BASELINES, ENTROPY, composite_index, recommend, select

from . import oracles

PUBLISHED = WeightVector(0.17, 0.64, 0.19)


def _matrix(*rows) -> FactorMatrix:
    return FactorMatrix(
        rows=tuple(FactorRow(f"p{i}", *row) for i, row in enumerate(rows, start=1)),
        x_max=1.0,
        l_max=1.0,
    )


@pytest.mark.parametrize(
    "row, expected",
    [((1, 1, 1), 1.0), ((0, 0, 0), 0.0), ((0.5, 0.2, 1 / 3), 0.2763333333)],
)
def test_composite_index(row, expected):
    assert composite_index(row, PUBLISHED) == pytest.approx(expected)


def test_composite_index_needs_a_positive_weight():
    with pytest.raises(WeightsError):
        composite_index((0.5, 0.5, 0.5), WeightVector(0, 0, 0))


def test_select_smallest_index():
    space, value, indices = select(_matrix((0.5, 0.2, 1 / 3), (0.2, 0.8, 1.0)), PUBLISHED)

    assert space == "p1"
    assert value == pytest.approx(0.2763333333)
    assert indices[1] == ("p2", pytest.approx(0.736))


def test_select_breaks_ties_on_smallest_id():
    space, _, _ = select(_matrix((0.3, 0.3, 0.3), (0.3, 0.3, 0.3)), PUBLISHED)
    assert space == "p1"


def test_single_vacant_space(tee_graph):
    state = OccupancyState.for_graph(tee_graph, ["a", "b"])

    result = recommend(tee_graph, state, "in", ["out"])
    assert result.space == "c"
    assert result.fallback_flag
    assert result.weights_used == EQUAL_WEIGHTS
    assert result.entropy is None

    fixed = recommend(tee_graph, state, "in", ["out"], BASELINES["II"])
    assert fixed.space == "c"
    assert fixed.weights_used == BASELINES["II"]


def test_lot_full(tee_graph):
    state = OccupancyState.for_graph(tee_graph, tee_graph.spaces)
    with pytest.raises(LotFullError):
        recommend(tee_graph, state, "in", ["out"])


def test_unknown_weights_mode(tee_graph):
    with pytest.raises(WeightsError):
        recommend(tee_graph, OccupancyState.for_graph(tee_graph), "in", ["out"], "critic")


def test_identical_candidates_pick_smallest_id(tee_graph):
    # a and c mirror each other around the junction
    state = OccupancyState.for_graph(tee_graph, ["b"])
    result = recommend(tee_graph, state, "in", ["out"])

    assert result.space == "a"
    assert result.fallback_flag
    assert result.weights_used == EQUAL_WEIGHTS


def test_recommend_reference_lot(reference):
    graph, state = reference.graph, reference.occupancy()
    result = recommend(graph, state, "IN", ["OUT"])

    rows, x_max, l_max = oracles.raw_rows(graph, state, "IN", ["OUT"])
    normalized = [(x / x_max, l / l_max, s / 3) for _, x, l, s in rows]
    w = oracles.entropy_weights(normalized)
    expected = min(
        ((sum(a * b for a, b in zip(w, row)), space) for (space, *_), row in zip(rows, normalized))
    )

    assert result.space == expected[1]
    assert result.h_value == pytest.approx(expected[0], rel=1e-9)
    assert result.h_value == min(h for _, h in result.per_space_indices)
    assert [s for s, _ in result.per_space_indices] == sorted(s for s, *_ in rows)
    assert not result.fallback_flag
    assert sum(result.weights_used.values) == pytest.approx(1.0)


def test_recommend_is_deterministic(reference):
    graph, state = reference.graph, reference.occupancy()
    assert recommend(graph, state, "IN", ["OUT"]) == recommend(graph, state, "IN", ["OUT"])


def test_ranking_is_sorted(reference):
    result = recommend(reference.graph, reference.occupancy(), "IN", ["OUT"], BASELINES["I"])
    ranking = result.ranking()

    assert ranking[0][0] == result.space
    assert [h for _, h in ranking] == sorted(h for _, h in ranking)
    assert sorted(ranking) == sorted(result.per_space_indices)


@pytest.mark.parametrize("name", ["I", "II", "III", "IV", ENTROPY])
@pytest.mark.parametrize("factor", [0.1, 1, 10])
def test_argmin_does_not_depend_on_weight_scale(reference, name, factor):
    graph, state = reference.graph, reference.occupancy()
    if name == ENTROPY:
        weights = recommend(graph, state, "IN", ["OUT"]).weights_used
    else:
        weights = BASELINES[name]

    base = recommend(graph, state, "IN", ["OUT"], weights)
    scaled = recommend(graph, state, "IN", ["OUT"], weights.scaled(factor))
    assert scaled.space == base.space


def test_dominated_space_never_wins():
    rng = random.Random(1000)
    for _ in range(1000):
        m = rng.randint(2, 10)
        rows = [tuple(rng.uniform(0, 0.9) for _ in range(3)) for _ in range(m)]
        better = rng.randrange(m)
        bumps = [rng.choice([0.0, rng.uniform(0.01, 0.1)]) for _ in range(3)]
        bumps[rng.randrange(3)] = rng.uniform(0.01, 0.1)
        worse = tuple(v + d for v, d in zip(rows[better], bumps))
        rows.append(worse)
        weights = WeightVector(*(rng.uniform(0.01, 10) for _ in range(3)))

        space, _, indices = select(_matrix(*rows), weights)

        assert space != f"p{m + 1}"
        assert dict(indices)[f"p{better + 1}"] < dict(indices)[f"p{m + 1}"]
