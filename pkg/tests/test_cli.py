# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: MIT
import json
import re
import time
import xml.etree.ElementTree as ET

import pytest
from click.testing import CliRunner

from opsr.__about__ import __version__
from opsr.cli import main
from opsr.console import INVALID, LOT_FULL, OK

from .lots import REFERENCE_LOT_PATH, REFERENCE_VACANT, grid_lot, tee_lot

LOT = str(REFERENCE_LOT_PATH)
ALL_SPACES = [f"{row}{col}" for row in "ABCD" for col in range(1, 8)]

SVG = "{http://www.w3.org/2000/svg}"


@pytest.fixture
def runner():
    return CliRunner()


def test_version(runner):
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == OK
    assert __version__ in result.output


def test_validate_reference_lot(runner):
    result = runner.invoke(main, ["validate", LOT])
    assert result.exit_code == OK
    assert "is valid" in result.output
    assert "28" in result.output


def test_validate_dangling_edge(runner, write_lot):
    document = tee_lot()
    document["edges"].append({"a": "j", "b": "ghost"})
    result = runner.invoke(main, ["validate", str(write_lot(document))])

    assert result.exit_code == INVALID
    assert "ghost" in result.output


def test_validate_missing_file(runner, tmp_path):
    result = runner.invoke(main, ["validate", str(tmp_path / "missing.yml")])
    assert result.exit_code == INVALID


def test_recommend_structured(runner):
    result = runner.invoke(main, ["recommend", LOT, "--format", "structured"])
    assert result.exit_code == OK

    data = json.loads(result.output)
    assert data["space"] in REFERENCE_VACANT
    assert [i["space"] for i in data["indices"]] == list(REFERENCE_VACANT)
    assert sum(data["weights"].values()) == pytest.approx(1.0, abs=1e-5)
    assert data["h_value"] == min(i["h"] for i in data["indices"])
    assert data["fallback"] is False


def test_recommend_all_vacant(runner):
    result = runner.invoke(
        main, ["recommend", LOT, "--occupied", "", "--format", "structured"]
    )
    assert result.exit_code == OK
    data = json.loads(result.output)
    assert len(data["indices"]) == 28
    assert sum(data["weights"].values()) == pytest.approx(1.0, abs=1e-5)


def test_recommend_table(runner):
    result = runner.invoke(main, ["recommend", LOT, "--weights", "1,1,1"])
    assert result.exit_code == OK
    assert "Recommended space: B7" in result.output
    assert "W1=1.000000" in result.output


def test_recommend_single_vacant_space(runner):
    occupied = ",".join(s for s in ALL_SPACES if s != "C5")
    result = runner.invoke(main, ["recommend", LOT, "--occupied", occupied])

    assert result.exit_code == OK
    assert "Recommended space: C5" in result.output
    assert "Fallback" in result.output


def test_recommend_lot_full(runner):
    result = runner.invoke(main, ["recommend", LOT, "--occupied", ",".join(ALL_SPACES)])
    assert result.exit_code == LOT_FULL


@pytest.mark.parametrize(
    "options",
    [
        ["--weights", "1,2"],
        ["--weights", "0,0,0"],
        ["--weights", "a,b,c"],
        ["--format", "xml"],
        ["--occupied", "Z9"],
        ["--entrance", "NOPE"],
        ["--entrance", "OUT"],
    ],
)
def test_recommend_invalid_input(runner, options):
    result = runner.invoke(main, ["recommend", LOT, *options])
    assert result.exit_code == INVALID


def test_weights_of_reference_lot(runner):
    result = runner.invoke(main, ["weights", LOT])
    assert result.exit_code == OK
    assert "k = 0.480898" in result.output

    structured = runner.invoke(main, ["weights", LOT, "--format", "structured"])
    data = json.loads(structured.output)
    assert data["m"] == 8
    assert data["k"] == 0.480898
    assert sum(data["w"]) == pytest.approx(1.0, abs=1e-5)


def test_weights_fallback(runner, write_lot):
    document = tee_lot()
    document["occupied"] = ["b"]
    result = runner.invoke(main, ["weights", str(write_lot(document))])

    assert result.exit_code == OK
    assert result.output.count("0.333333") == 3
    assert "Fallback" in result.output


def test_weights_single_vacant_space(runner):
    occupied = ",".join(s for s in ALL_SPACES if s != "C5")
    result = runner.invoke(main, ["weights", LOT, "--occupied", occupied])
    assert result.exit_code == INVALID


def test_factors_structured(runner):
    result = runner.invoke(main, ["factors", LOT, "--format", "structured"])
    assert result.exit_code == OK

    data = json.loads(result.output)
    assert data["x_max"] == 41.8
    assert data["l_max"] == 41.8
    assert [r["space"] for r in data["rows"]] == list(REFERENCE_VACANT)
    assert all(0 <= r["x_norm"] <= 1 for r in data["rows"])


def test_factors_lot_full(runner):
    result = runner.invoke(main, ["factors", LOT, "--occupied", ",".join(ALL_SPACES)])
    assert result.exit_code == LOT_FULL


def test_compare_structured(runner):
    result = runner.invoke(main, ["compare", LOT, "--format", "structured"])
    assert result.exit_code == OK

    data = json.loads(result.output)
    assert len(data["cells"]) == 20
    assert list(data["cells"][0]) == [
        "scenario",
        "method",
        "space",
        "drive_s",
        "maneuver_s",
        "walk_s",
        "total_s",
    ]
    assert data["summary"]["informational"] is True
    assert set(data["summary"]["opsr_lowest"]) == {"A", "B", "C", "D"}

    numbers = re.findall(r'"\w+_s": (\S+?),?\n', result.output)
    assert len(numbers) == 80
    assert all(re.fullmatch(r"\d+\.\d{6}", n) for n in numbers)
    assert '"maneuver_s": 105.000000' in result.output


def test_compare_is_byte_identical(runner):
    outputs = {
        runner.invoke(main, ["compare", LOT, "--format", "structured"]).output
        for _ in range(5)
    }
    assert len(outputs) == 1


def test_compare_parallel_matches_serial(runner):
    serial = runner.invoke(main, ["compare", LOT, "--format", "structured"])
    parallel = runner.invoke(main, ["compare", LOT, "--format", "structured", "--jobs", "4"])
    assert serial.output == parallel.output


def test_compare_single_scenario(runner):
    result = runner.invoke(main, ["compare", LOT, "--scenario", "A", "--format", "structured"])
    assert result.exit_code == OK
    assert len(json.loads(result.output)["cells"]) == 5


def test_compare_table(runner, tmp_path):
    out = tmp_path / "report.txt"
    result = runner.invoke(main, ["compare", LOT, "--out", str(out)])

    assert result.exit_code == OK
    text = out.read_text(encoding="utf-8")
    assert "informational" in text
    assert "OPSR" in text


def test_compare_lot_without_named_space(runner, write_lot):
    result = runner.invoke(main, ["compare", str(write_lot(tee_lot())), "--scenario", "C"])
    assert result.exit_code == INVALID
    assert "C3" in result.output


def test_compare_unknown_scenario(runner):
    result = runner.invoke(main, ["compare", LOT, "--scenario", "Q"])
    assert result.exit_code == INVALID


def test_compare_unwritable_output(runner, tmp_path):
    out = tmp_path / "missing" / "report.json"
    result = runner.invoke(main, ["compare", LOT, "--out", str(out)])
    assert result.exit_code == INVALID


def test_compare_invalid_settings(runner, isolated_settings):
    config = isolated_settings / "config.yml"
    config.write_text("walk_speed: fast\n", encoding="utf-8")
    try:
        result = runner.invoke(main, ["compare", LOT, "--scenario", "A"])
    finally:
        config.unlink()

    assert result.exit_code == INVALID
    assert "walk_speed" in result.output


@pytest.mark.parametrize(
    "command",
    [
        ["recommend", "--format", "structured"],
        ["weights", "--format", "structured"],
        ["factors", "--format", "structured"],
        ["render"],
    ],
)
def test_commands_are_fast_on_big_lots(runner, write_lot, command):
    document = grid_lot(aisles=8, columns=20)
    assert len(document["nodes"]) <= 500
    path = str(write_lot(document))

    start = time.perf_counter()
    result = runner.invoke(main, [command[0], path, *command[1:]])
    elapsed = time.perf_counter() - start

    assert result.exit_code == OK
    assert elapsed < 1.0


def test_render_all_vacant(runner, tmp_path):
    out = tmp_path / "lot.svg"
    result = runner.invoke(main, ["render", LOT, "--occupied", "", "--out", str(out)])
    assert result.exit_code == OK

    root = ET.fromstring(out.read_text(encoding="utf-8"))
    rects = root.findall(f".//{SVG}rect")
    assert len(rects) == 28
    assert sorted(r.get("id") for r in rects) == sorted(ALL_SPACES)
    assert [r.get("class") for r in rects].count("space recommended") == 1
    assert len(root.findall(f".//{SVG}polyline")) == 2


def test_render_marks_occupied_spaces(runner):
    result = runner.invoke(main, ["render", LOT])
    assert result.exit_code == OK

    root = ET.fromstring(result.output)
    classes = {r.get("id"): r.get("class") for r in root.iter(f"{SVG}rect")}
    assert sum(c == "space occupied" for c in classes.values()) == 20
    assert sum(c == "space vacant" for c in classes.values()) == 7


def test_render_lot_full(runner, tmp_path):
    out = tmp_path / "full.svg"
    result = runner.invoke(
        main, ["render", LOT, "--occupied", ",".join(ALL_SPACES), "--out", str(out)]
    )

    assert result.exit_code == OK
    assert "full" in result.output
    root = ET.fromstring(out.read_text(encoding="utf-8"))
    assert len(root.findall(f".//{SVG}rect")) == 28
    assert not root.findall(f".//{SVG}polyline")
    assert "recommended" not in out.read_text(encoding="utf-8")


def test_render_unwritable_output(runner, tmp_path):
    out = tmp_path / "missing" / "lot.svg"
    result = runner.invoke(main, ["render", LOT, "--out", str(out)])
    assert result.exit_code == INVALID
