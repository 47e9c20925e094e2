#!/usr/bin/env python

# pylint: disable=logging-fstring-interpolation

import logging
import sys
from typing import Any, Optional

import click
import click_log  # type: ignore

from lnlslab.asymptotics.commands import resurgence as resurgence_cli
from lnlslab.configuration.configuration import CONFIG, ConfigNonAllowedFieldError
from lnlslab.help import common_options
from lnlslab.reports.commands import checks as checks_cli
from lnlslab.reports.commands import plotdata as plotdata_cli
from lnlslab.reports.commands import tables as tables_cli
from lnlslab.solver.commands import solve as solve_cli
from lnlslab.solver.commands import sweep as sweep_cli
from lnlslab.spectral.commands import spectrum as spectrum_cli
from lnlslab.version import __version__

logger = logging.getLogger()
click_log.basic_config(logger)

CONTEXT_SETTINGS = {"help_option_names": ["--help", "-h"]}  # help options


# invoke_without_command=True -> forces the application not to show aids before
# losing them with a --h
@click.group(context_settings=CONTEXT_SETTINGS, invoke_without_command=True)
@click_log.simple_verbosity_option(logger)
@click.version_option(__version__, prog_name="lnlslab")
@click.option(
    "-c",
    "--config",
    type=click.Path(),
    envvar="LNLSLAB_CONFIG",
    help=common_options["config"],
)
@click.pass_context
def main(ctx: Any, config: Optional[str]) -> None:
    """
    Command line interface to the lattice NLS ground-state lab.
    """
    if config is not None:
        try:
            logger.debug(f"Loading config file contents in '{config}'")
            CONFIG.load_config(config)
        except (ValueError, OSError, ConfigNonAllowedFieldError) as exc:
            logger.error(f"The configuration file '{config}' could not be loaded.")
            logger.exception(exc)
            sys.exit(1)
    ctx.obj = CONFIG
    logger.debug("Existing sub-commands need to be used with lnlslab.")


main.add_command(solve_cli)  # add solve command
main.add_command(sweep_cli)  # add sweep command
main.add_command(spectrum_cli)  # add spectrum command
main.add_command(resurgence_cli)  # add resurgence command
main.add_command(tables_cli)  # add tables command
main.add_command(checks_cli)  # add checks command
main.add_command(plotdata_cli)  # add plotdata commands


if __name__ == "__main__":
    main()  # pylint: disable=no-value-for-parameter
