# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later
import json
import logging
import re
from pathlib import Path
from typing import Any, NoReturn

import click
from rich.console import Console, RenderableType
from rich.logging import RichHandler
from rich.markup import escape

from opsr.settings import SETTINGS

# Exit codes
OK = 0
INVALID = 1
LOT_FULL = 2

_FLOAT_MARK = "\x00"
_MARKED_FLOAT = re.compile(r'"\\u0000(-?\d+(?:\.\d+)?)\\u0000"')


def setup_logging(verbosity: int):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def number(value: float) -> str:
    return f"{value:.{SETTINGS.decimals}f}"


def _marked(data: Any, decimals: int) -> Any:
    # Floats become marked strings, unquoted again once dumped.
    if isinstance(data, float):
        return f"{_FLOAT_MARK}{data:.{decimals}f}{_FLOAT_MARK}"
    if isinstance(data, dict):
        return {k: _marked(v, decimals) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [_marked(v, decimals) for v in data]
    return data


def structured(data: Any) -> str:
    """
    Dumps `data` as JSON with every float written with the configured decimals,
    `105.0` becomes `105.000000`.
    Keys keep their insertion order so the same data always gives the same text.
    """
    text = json.dumps(_marked(data, SETTINGS.decimals), indent=2)
    return _MARKED_FLOAT.sub(r"\1", text)


def emit(output: RenderableType | str, out_path: Path | None = None, raw: bool = False):
    """
    Prints `output` or writes it to `out_path`.
    Raw output skips rich markup and wrapping, used for JSON and SVG.
    """
    if out_path is None:
        if raw:
            click.echo(output)
        else:
            Console().print(output)
        return

    with out_path.open("w", encoding="utf-8") as f:
        if raw:
            f.write(str(output))
            f.write("\n")
        else:
            Console(file=f, width=120).print(output)


def fail(message: Any, code: int = INVALID) -> NoReturn:
    Console(stderr=True).print(f"[bold red]Error[/]: [bold red]{escape(str(message))}[/]")
    click.get_current_context().exit(code)
