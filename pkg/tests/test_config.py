# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: MIT
import pytest

from opsr.config import CliConfig, parse_ids, parse_weights
from opsr.entropy import WeightVector
from opsr.errors import OpsrError, WeightsError
from opsr.recommend import ENTROPY

from .lots import REFERENCE_LOT_PATH, REFERENCE_VACANT


@pytest.mark.parametrize(
    "value, expected",
    [(None, None), ("", []), ("A1", ["A1"]), (" A1, B2 ,,C3 ", ["A1", "B2", "C3"])],
)
def test_parse_ids(value, expected):
    assert parse_ids(value) == expected


@pytest.mark.parametrize(
    "value, expected",
    [
        (None, ENTROPY),
        ("entropy", ENTROPY),
        (" Entropy ", ENTROPY),
        ("1,10,1", WeightVector(1, 10, 1)),
        ("0.17, 0.64, 0.19", WeightVector(0.17, 0.64, 0.19)),
    ],
)
def test_parse_weights(value, expected):
    assert parse_weights(value) == expected


@pytest.mark.parametrize("value", ["1,2", "1,2,3,4", "x,1,1", "0,0,0", "-1,1,1"])
def test_parse_weights_rejects(value):
    with pytest.raises(WeightsError):
        parse_weights(value)


def test_config_validation():
    with pytest.raises(OpsrError):
        CliConfig(command="serve", lot_path=REFERENCE_LOT_PATH)
    with pytest.raises(OpsrError):
        CliConfig(command="recommend", lot_path=REFERENCE_LOT_PATH, output_format="xml")
    with pytest.raises(WeightsError):
        CliConfig(
            command="recommend",
            lot_path=REFERENCE_LOT_PATH,
            weights_mode=WeightVector(0, 0, 0),
        )


def test_occupied_option_overrides_layout():
    config = CliConfig(command="recommend", lot_path=REFERENCE_LOT_PATH)
    graph, state = config.load()
    assert [s for s in graph.spaces if not state.occupied[s]] == list(REFERENCE_VACANT)

    config = CliConfig(command="recommend", lot_path=REFERENCE_LOT_PATH, occupied=["A1"])
    _, state = config.load()
    assert [s for s, flag in state.occupied.items() if flag] == ["A1"]
    assert config.entrance_for(graph) == "IN"
    assert config.structured is False
