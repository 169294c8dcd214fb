# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later
import math
import os
from pathlib import Path
from typing import Any, Dict, Tuple

import yaml

from opsr.errors import OpsrError

CONFIG_FILE = "config.yml"

_DEFAULTS: Dict[str, Any] = {
    "walk_speed": 1.1,
    "drive_speed_kmh": 5.0,
    "maneuver_times": {3: 210.0, 2: 157.5, 1: 105.0},
    "svg_scale": 10.0,
    "stall_width": 2.4,
    "stall_depth": 5.3,
    "decimals": 6,
}

# Settings that must be positive numbers
_POSITIVE = ("walk_speed", "drive_speed_kmh", "svg_scale", "stall_width", "stall_depth")


def _is_number(value: Any) -> bool:
    return not isinstance(value, bool) and isinstance(value, (int, float))


class _Settings:
    """
    Manages the whole app settings.

    Values come from an optional `config.yml` in the settings folder,
    anything missing falls back to the defaults. The folder is never created.
    """

    def __init__(self, folder: Path):
        self.folder = folder
        self._config = folder / CONFIG_FILE
        self._cache: Tuple[Any, Dict[str, Any]] | None = None

    def _check(self, user: Dict[str, Any]) -> Dict[str, Any]:
        """
        Validates user values, raises `OpsrError` naming the first bad one.
        """
        where = f"in '{self._config}'"
        checked = {}
        for name in _POSITIVE:
            if name not in user:
                continue
            value = user[name]
            if not _is_number(value) or not math.isfinite(value) or value <= 0:
                msg = f"Setting '{name}' {where} must be a positive number, got {value!r}"
                raise OpsrError(msg)
            checked[name] = float(value)

        if "decimals" in user:
            value = user["decimals"]
            if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value <= 12:
                msg = f"Setting 'decimals' {where} must be an integer from 0 to 12, got {value!r}"
                raise OpsrError(msg)
            checked["decimals"] = value

        if "maneuver_times" in user:
            value = user["maneuver_times"]
            if not isinstance(value, dict):
                msg = f"Setting 'maneuver_times' {where} must map difficulties to seconds"
                raise OpsrError(msg)
            times = {}
            for difficulty, seconds in value.items():
                try:
                    difficulty = int(difficulty)
                except (TypeError, ValueError) as exc:
                    msg = f"Maneuver difficulty {difficulty!r} {where} is not an integer"
                    raise OpsrError(msg) from exc
                if not _is_number(seconds) or not math.isfinite(seconds):
                    msg = f"Maneuver time {difficulty} {where} must be a number, got {seconds!r}"
                    raise OpsrError(msg)
                times[difficulty] = float(seconds)
            checked["maneuver_times"] = times
        return checked

    def _read(self) -> Dict[str, Any]:
        try:
            user = yaml.safe_load(self._config.read_text(encoding="utf-8")) or {}
        except yaml.YAMLError as exc:
            msg = f"Invalid settings file '{self._config}': {exc}"
            raise OpsrError(msg) from exc

        if not isinstance(user, dict):
            msg = f"Settings file '{self._config}' must contain a mapping"
            raise OpsrError(msg)

        if unknown := sorted(set(map(str, user)) - set(_DEFAULTS)):
            msg = f"Unknown settings in '{self._config}': {', '.join(unknown)}"
            raise OpsrError(msg)

        data = dict(_DEFAULTS)
        data.update(self._check(user))
        return data

    @property
    def values(self) -> Dict[str, Any]:
        """
        Returns all the settings, user values merged over the defaults.
        The file is parsed again only when it changes, edits are picked up
        without restarting.
        """
        try:
            stat = self._config.stat()
        except FileNotFoundError:
            return dict(_DEFAULTS)

        key = (self._config, stat.st_mtime_ns, stat.st_size, stat.st_ino)
        if self._cache is None or self._cache[0] != key:
            self._cache = (key, self._read())
        return dict(self._cache[1])

    def __getattr__(self, name: str) -> Any:
        if name.startswith("_"):
            raise AttributeError(name)
        values = self.values
        if name not in values:
            raise AttributeError(name)
        return values[name]


SETTINGS = _Settings(Path(os.environ.get("OPSR_HOME", Path.home() / ".opsr")))
