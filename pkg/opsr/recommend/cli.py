# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later
from pathlib import Path

import click
from rich.markup import escape
from rich.table import Table

from opsr.config import FORMATS, CliConfig, parse_ids, parse_weights
from opsr.console import LOT_FULL, emit, fail, number, structured
from opsr.entropy import entropy_weights
from opsr.errors import DegeneratePopulationError, LotFullError, OpsrError
from opsr.factors import build_factor_matrix

from .recommend import recommend

_FACTORS = ("X", "L", "S")

lot_argument = click.argument("lot_path", type=click.Path(path_type=Path))
occupied_option = click.option(
    "--occupied", help="Comma separated occupied spaces, overrides the layout file."
)
entrance_option = click.option(
    "--entrance", help="Entrance to drive from, defaults to the first one."
)
format_option = click.option(
    "--format", "output_format", default="table", help=f"One of {', '.join(FORMATS)}."
)


@click.command("recommend")
@lot_argument
@occupied_option
@click.option("--weights", default="entropy", help="'entropy' or three comma separated weights.")
@entrance_option
@format_option
def recommend_space(
    lot_path: Path,
    occupied: str | None = None,
    weights: str = "entropy",
    entrance: str | None = None,
    output_format: str = "table",
):
    """
    Recommends the best vacant space of the lot.
    """
    try:
        config = CliConfig(
            command="recommend",
            lot_path=lot_path,
            occupied=parse_ids(occupied),
            weights_mode=parse_weights(weights),
            output_format=output_format,
            entrance=entrance,
        )
        graph, state = config.load()
        result = recommend(
            graph, state, config.entrance_for(graph), graph.exits, config.weights_mode
        )
    except LotFullError as exc:
        fail(exc, LOT_FULL)
    except OpsrError as exc:
        fail(exc)

    w = result.weights_used
    if config.structured:
        emit(
            structured(
                {
                    "space": result.space,
                    "h_value": result.h_value,
                    "weights": {"w1": w.w1, "w2": w.w2, "w3": w.w3},
                    "fallback": result.fallback_flag,
                    "indices": [{"space": s, "h": h} for s, h in result.per_space_indices],
                }
            ),
            raw=True,
        )
        return

    table = Table(title="Composite index")
    table.add_column("Space")
    table.add_column("H", justify="right")
    for space, value in result.per_space_indices:
        style = "bold green" if space == result.space else None
        table.add_row(space, number(value), style=style)
    emit(f"Recommended space: [bold green]{escape(result.space)}[/]")
    emit(table)
    emit(f"Weights: W1={number(w.w1)} W2={number(w.w2)} W3={number(w.w3)}")
    if result.fallback_flag:
        emit("[yellow]Fallback:[/] weights not derived from the entropy of the candidates")


@click.command("weights")
@lot_argument
@occupied_option
@entrance_option
@format_option
def weights(
    lot_path: Path,
    occupied: str | None = None,
    entrance: str | None = None,
    output_format: str = "table",
):
    """
    Shows the entropy, information utility and weight of every factor.
    """
    try:
        config = CliConfig(
            command="weights",
            lot_path=lot_path,
            occupied=parse_ids(occupied),
            output_format=output_format,
            entrance=entrance,
        )
        graph, state = config.load()
        factors = build_factor_matrix(graph, state, config.entrance_for(graph), graph.exits)
        report = entropy_weights(factors)
    except (LotFullError, DegeneratePopulationError) as exc:
        fail(f"Entropy weights need at least two vacant spaces: {exc}")
    except OpsrError as exc:
        fail(exc)

    if config.structured:
        emit(
            structured(
                {
                    "m": len(factors.rows),
                    "k": report.k,
                    "e": list(report.e),
                    "h": list(report.h),
                    "w": list(report.w.values),
                    "fallback": report.fallback,
                }
            ),
            raw=True,
        )
        return

    table = Table(title=f"Entropy weights over {len(factors.rows)} vacant spaces")
    table.add_column("Factor")
    table.add_column("e", justify="right")
    table.add_column("h", justify="right")
    table.add_column("w", justify="right")
    for name, e, h, w in zip(_FACTORS, report.e, report.h, report.w.values):
        table.add_row(name, number(e), number(h), number(w))
    emit(f"k = {number(report.k)}")
    emit(table)
    if report.fallback:
        emit("[yellow]Fallback:[/] no factor discriminates, equal weights used")


@click.command("factors")
@lot_argument
@occupied_option
@entrance_option
@format_option
def factors(
    lot_path: Path,
    occupied: str | None = None,
    entrance: str | None = None,
    output_format: str = "table",
):
    """
    Shows raw and normalized factors of every vacant space.
    """
    try:
        config = CliConfig(
            command="factors",
            lot_path=lot_path,
            occupied=parse_ids(occupied),
            output_format=output_format,
            entrance=entrance,
        )
        graph, state = config.load()
        matrix = build_factor_matrix(graph, state, config.entrance_for(graph), graph.exits)
    except LotFullError as exc:
        fail(exc, LOT_FULL)
    except OpsrError as exc:
        fail(exc)

    if config.structured:
        emit(
            structured(
                {
                    "x_max": matrix.x_max,
                    "l_max": matrix.l_max,
                    "rows": [
                        {
                            "space": row.space,
                            "x": raw.x,
                            "l": raw.l,
                            "s": raw.s,
                            "x_norm": row.x,
                            "l_norm": row.l,
                            "s_norm": row.s,
                        }
                        for raw, row in zip(matrix.raw, matrix.rows)
                    ],
                }
            ),
            raw=True,
        )
        return

    table = Table(
        title=f"Factors (X max {number(matrix.x_max)} m, L max {number(matrix.l_max)} m)"
    )
    for column in ("Space", "X (m)", "L (m)", "S", "X norm", "L norm", "S norm"):
        table.add_column(column, justify="left" if column == "Space" else "right")
    for raw, row in zip(matrix.raw, matrix.rows):
        table.add_row(
            row.space,
            number(raw.x),
            number(raw.l),
            str(raw.s),
            number(row.x),
            number(row.l),
            number(row.s),
        )
    emit(table)
