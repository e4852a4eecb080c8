import argparse
import logging
import sys
import time
from typing import List, Optional

from constants import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VERDICT_FALSE
from controllers import (
    BoundsController,
    ConstructController,
    DecodeController,
    EncodeController,
    SearchController,
    StandardizeController,
    VerifyController,
)
from exceptions import BudgetExceededError, PmdsError

logger = logging.getLogger(__name__)


class PmdsPlayground:
    def __init__(self):
        self._parser = argparse.ArgumentParser(
            prog="pmds",
            description="Construct, verify, classify and erasure-decode PMDS codes",
        )
        self._parser.add_argument(
            "--json", action="store_true", help="Print the JSON report instead of text"
        )
        self._parser.add_argument(
            "-v",
            "--verbose",
            action="count",
            default=0,
            help="Log to stderr (-v info, -vv debug)",
        )

        # Subcommands
        subparsers = self._parser.add_subparsers(dest="command", required=True)
        self._controllers = [
            ConstructController(),
            VerifyController(),
            DecodeController(),
            EncodeController(),
            SearchController(),
            BoundsController(),
            StandardizeController(),
        ]
        for controller in self._controllers:
            controller.register(subparsers)

    @staticmethod
    def _configure_logging(verbosity: int):
        level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
        logging.basicConfig(
            level=level,
            stream=sys.stderr,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
            force=True,
        )

    def run(self, argv: Optional[List[str]] = None) -> int:
        try:
            args = self._parser.parse_args(argv)
        except SystemExit as error:
            return EXIT_OK if error.code in (0, None) else EXIT_USAGE
        self._configure_logging(args.verbose)

        started = time.perf_counter()
        try:
            report = args.controller.run(args)
        except BudgetExceededError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_BUDGET
        except (PmdsError, OSError) as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_USAGE
        report.timing_seconds = time.perf_counter() - started

        if args.json:
            sys.stdout.write(report.dumps())
        else:
            sys.stdout.write(report.verdict.get("output") or report.to_text())
        return EXIT_OK if report.ok else EXIT_VERDICT_FALSE


if __name__ == "__main__":
    app = PmdsPlayground()
    sys.exit(app.run())
