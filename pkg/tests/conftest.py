# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: MIT
from pathlib import Path

import pytest
import yaml

from opsr.lot import LotGraph, LotLayout, load_layout, reference_lot
from opsr.settings import SETTINGS

from .lots import row_lot, tee_lot


@pytest.fixture(autouse=True, scope="session")
def isolated_settings(tmp_path_factory):
    """
    Points the settings to an empty folder so a user config never leaks in.
    """
    folder = tmp_path_factory.mktemp("opsr-home")
    with pytest.MonkeyPatch.context() as patch:
        patch.setattr(SETTINGS, "folder", folder)
        patch.setattr(SETTINGS, "_config", folder / "config.yml")
        yield folder


@pytest.fixture(scope="session")
def reference() -> LotLayout:
    return reference_lot()


@pytest.fixture(scope="session")
def reference_graph(reference) -> LotGraph:
    return reference.graph


@pytest.fixture
def row_graph() -> LotGraph:
    return load_layout(row_lot()).graph


@pytest.fixture
def tee_graph() -> LotGraph:
    return load_layout(tee_lot()).graph


@pytest.fixture
def write_lot(tmp_path):
    """
    Dumps a layout document to a YAML file and returns its path.
    """

    def _write(document, name: str = "lot.yml") -> Path:
        path = tmp_path / name
        path.write_text(yaml.safe_dump(document), encoding="utf-8")
        return path

    return _write
