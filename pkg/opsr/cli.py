# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later

import click

from opsr.__about__ import __version__
from opsr.console import setup_logging
from opsr.evaluate.cli import compare
from opsr.lot.cli import render, validate
from opsr.recommend.cli import factors, recommend_space, weights


@click.group
@click.version_option(__version__)
@click.option("-v", "--verbose", count=True, help="Log more, repeat for debug output.")
def main(verbose: int = 0):
    setup_logging(verbose)


main.add_command(validate)
main.add_command(recommend_space)
main.add_command(weights)
main.add_command(factors)
main.add_command(compare)
main.add_command(render)
