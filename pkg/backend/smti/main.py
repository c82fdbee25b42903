"""
Command-line entry point: `smti <generate|solve|check|encode|bench> ...`
"""
import argparse
import sys
import uuid
from typing import List, Optional

from pydantic import ValidationError

from smti.cli import COMMANDS
from smti.cli.errors import handle_smti_exception, handle_validation_error
from smti.core.config import settings
from smti.core.exceptions import SmtiException
from smti.core.logging import get_logger, set_run_id, setup_logging

logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smti",
        description="Stable marriage with ties and incomplete lists: generate, solve, check, encode, bench.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    parser.add_argument(
        "--log-level",
        default=settings.LOG_LEVEL,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="stderr log level",
    )
    parser.add_argument("--log-format", default=settings.LOG_FORMAT, choices=["json", "text"])

    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(level=args.log_level, fmt=args.log_format)
    set_run_id(uuid.uuid4().hex[:12])
    logger.debug("Command started", extra={"extra_fields": {"command": args.command}})

    try:
        return args.handler(args)
    except SmtiException as exc:
        return handle_smti_exception(exc)
    except ValidationError as exc:
        return handle_validation_error(exc)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
