# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later
from pathlib import Path

import click
import rich
from rich.console import Console

from opsr.config import CliConfig, parse_ids, parse_weights
from opsr.console import emit, fail
from opsr.errors import LotFullError, OpsrError
from opsr.pathfind import astar
from opsr.recommend import recommend

from .lot import load_lot
from .render import render_svg


@click.command()
@click.argument("lot_path", type=click.Path(path_type=Path))
def validate(lot_path: Path):
    """
    Checks that a lot layout file describes a valid lot.
    """
    try:
        graph = load_lot(lot_path)
    except OpsrError as exc:
        fail(f"Invalid lot '{lot_path}': {exc}")

    rich.print(f"Lot [bold green]{lot_path}[/] is valid")
    rich.print(f"- [bold]{len(graph.nodes)}[/] nodes, [bold]{len(graph.edges)}[/] edges")
    rich.print(
        f"- [bold]{len(graph.spaces)}[/] spaces, "
        f"[bold]{len(graph.entrances)}[/] entrances, [bold]{len(graph.exits)}[/] exits"
    )
    rich.print("- every space is reachable from every entrance and exit")
    rich.print("- no edge is shorter than the straight line between its ends")


@click.command()
@click.argument("lot_path", type=click.Path(path_type=Path))
@click.option("--occupied", help="Comma separated occupied spaces, overrides the layout file.")
@click.option("--weights", default="entropy", help="'entropy' or three comma separated weights.")
@click.option("--entrance", help="Entrance to drive from, defaults to the first one.")
@click.option("--out", type=click.Path(path_type=Path), help="SVG file, standard output if missing.")
def render(
    lot_path: Path,
    occupied: str | None = None,
    weights: str = "entropy",
    entrance: str | None = None,
    out: Path | None = None,
):
    """
    Draws the lot as SVG with the recommended space and the paths to and from it.
    """
    try:
        config = CliConfig(
            command="render",
            lot_path=lot_path,
            occupied=parse_ids(occupied),
            weights_mode=parse_weights(weights),
            out_path=out,
            entrance=entrance,
        )
        graph, state = config.load()
        start = config.entrance_for(graph)
        try:
            chosen = recommend(graph, state, start, graph.exits, config.weights_mode)
        except LotFullError:
            Console(stderr=True).print(
                "[bold yellow]Warning[/]: the lot is full, nothing to recommend"
            )
            svg = render_svg(graph, state)
        else:
            drive = astar(graph, start, chosen.space)
            walk = min(
                (astar(graph, chosen.space, e) for e in graph.exits),
                key=lambda p: (p.length, p.nodes),
            )
            svg = render_svg(graph, state, chosen.space, drive.nodes, walk.nodes)
    except OpsrError as exc:
        fail(exc)

    try:
        emit(svg, config.out_path, raw=True)
    except OSError as exc:
        fail(f"Can't write '{config.out_path}': {exc.strerror or exc}")
