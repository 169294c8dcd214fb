# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from opsr.errors import OpsrError
from opsr.settings import SETTINGS


def kmh_to_ms(speed: float) -> float:
    return speed * 1000 / 3600


def _default_maneuver_times() -> Mapping[int, float]:
    return MappingProxyType({3: 210.0, 2: 157.5, 1: 105.0})


@dataclass(frozen=True)
class DurationModel:
    # Pedestrian speed in m/s
    walk_speed: float = 1.1
    # Car speed in m/s, 5 km/h
    drive_speed: float = 25 / 18
    # Seconds spent parking for each difficulty
    maneuver_times: Mapping[int, float] = field(default_factory=_default_maneuver_times)

    def __post_init__(self):
        if self.walk_speed <= 0 or self.drive_speed <= 0:
            msg = "Walking and driving speeds must be positive"
            raise OpsrError(msg)
        times = dict(self.maneuver_times)
        if sorted(times) != [1, 2, 3]:
            msg = f"Maneuver times must cover difficulties 1, 2 and 3, got {sorted(times)}"
            raise OpsrError(msg)
        if not times[3] > times[2] > times[1] >= 0:
            msg = "Maneuver times must grow with difficulty"
            raise OpsrError(msg)
        object.__setattr__(self, "maneuver_times", MappingProxyType(times))

    @classmethod
    def from_settings(cls) -> "DurationModel":
        return cls(
            walk_speed=float(SETTINGS.walk_speed),
            drive_speed=kmh_to_ms(float(SETTINGS.drive_speed_kmh)),
            maneuver_times=SETTINGS.maneuver_times,
        )
