"""
Command line front end
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from cli.fol_commands import FolCommands
from cli.jet_commands import JetCommands, catalog_listing
from config import (
    EXIT_INPUT_ERROR,
    EXIT_INTERNAL_ASSERTION,
    OUTPUT_FORMATS,
    AppSettings,
)
from utils.exceptions import InputError, InvariantViolation
from utils.file_handlers import export_rows
from utils.logger import setup_logging
from utils.validators import sanitize_filename


def build_parser() -> argparse.ArgumentParser:
    """Parser with the `jet`, `fol` and `catalog` commands"""
    common = argparse.ArgumentParser(add_help=False)
    output = common.add_argument_group("output")
    output.add_argument("--format", choices=OUTPUT_FORMATS, default="table", help="Report format on stdout")
    output.add_argument("--out", help="Also write the report to this .json, .csv or .xlsx file")
    output.add_argument("--verbose", action="store_true", help="Log progress to stderr")
    output.add_argument("--log-file", action=argparse.BooleanOptionalAction, default=True,
                        help="Write the rotating log file under the data directory")

    parser = argparse.ArgumentParser(
        prog="toolkit",
        description=f"{AppSettings.APP_NAME} v{AppSettings.APP_VERSION}",
    )
    subparsers = parser.add_subparsers(dest="group", required=True)
    JetCommands().register(subparsers, common)
    FolCommands().register(subparsers, common)
    catalog = subparsers.add_parser("catalog", parents=[common], help="List the built-in germs and charts")
    catalog.set_defaults(handler=catalog_listing)
    return parser


def _report_error(message: str) -> None:
    sys.stderr.write(f"error: {message}\n")


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and return its exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help
        return e.code if isinstance(e.code, int) else EXIT_INPUT_ERROR

    setup_logging(verbose=args.verbose, log_to_file=args.log_file)
    try:
        result = args.handler(args)
    except InputError as e:
        logging.info(f"Input error: {e}", exc_info=True)
        _report_error(str(e))
        return EXIT_INPUT_ERROR
    except InvariantViolation as e:
        logging.error(f"Internal cross-check failed: {e}", exc_info=True)
        _report_error(f"internal cross-check failed: {e}")
        return EXIT_INTERNAL_ASSERTION

    sys.stdout.write(result.render(args.format))
    if args.out:
        sheet = sanitize_filename(result.title)
        if not export_rows(result.rows, result.report, args.out, sheet):
            _report_error(f"could not write {Path(args.out).name}")
            return EXIT_INPUT_ERROR
    return result.exit_code
