# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later
from pathlib import Path

import click
from rich.table import Table

from opsr.config import FORMATS, CliConfig, parse_ids
from opsr.console import LOT_FULL, emit, fail, number, structured
from opsr.errors import LotFullError, OpsrError
from opsr.lot import load_lot

from .config import DurationModel
from .evaluate import SCENARIOS, ComparisonReport, build_scenario, run_comparison


def _summary(report: ComparisonReport) -> str:
    lowest = report.opsr_lowest()
    if not lowest:
        return "OPSR not compared"
    verdicts = ", ".join(f"{s}: {'yes' if v else 'no'}" for s, v in lowest.items())
    return f"OPSR lowest total (informational): {verdicts}"


@click.command()
@click.argument("lot_path", type=click.Path(path_type=Path))
@click.option(
    "--scenario",
    "scenarios",
    default=",".join(SCENARIOS),
    help="Comma separated scenarios to run.",
)
@click.option("--format", "output_format", default="table", help=f"One of {', '.join(FORMATS)}.")
@click.option("--out", type=click.Path(path_type=Path), help="Write the output to this file.")
@click.option("--jobs", default=1, type=int, help="Cells evaluated in parallel.")
def compare(
    lot_path: Path,
    scenarios: str = "A,B,C,D",
    output_format: str = "table",
    out: Path | None = None,
    jobs: int = 1,
):
    """
    Compares OPSR against the fixed weight baselines in the reference scenarios.
    """
    try:
        config = CliConfig(
            command="compare",
            lot_path=lot_path,
            output_format=output_format,
            out_path=out,
            scenarios=parse_ids(scenarios) or [],
        )
        graph = load_lot(config.lot_path)
        built = [build_scenario(s, graph) for s in config.scenarios]
        report = run_comparison(built, model=DurationModel.from_settings(), jobs=jobs)
    except LotFullError as exc:
        fail(exc, LOT_FULL)
    except OpsrError as exc:
        fail(exc)

    if config.structured:
        output = structured(
            {
                "cells": [c.as_dict() for c in report.cells],
                "summary": {
                    "opsr_lowest": report.opsr_lowest(),
                    "informational": True,
                },
            }
        )
    else:
        output = Table(title="Approach comparison, durations in seconds", caption=_summary(report))
        for column in ("Scenario", "Method", "Space", "Drive", "Maneuver", "Walk", "Total"):
            output.add_column(column, justify="right" if column[0] in "DMWT" else "left")
        for c in report.cells:
            output.add_row(
                c.scenario,
                c.method,
                c.space,
                number(c.drive_s),
                number(c.maneuver_s),
                number(c.walk_s),
                number(c.total_s),
            )

    try:
        emit(output, config.out_path, raw=config.structured)
    except OSError as exc:
        fail(f"Can't write '{config.out_path}': {exc.strerror or exc}")
