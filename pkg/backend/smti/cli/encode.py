"""
encode: emit the ASP program, the LP model or the canonical native form.
"""
import argparse
from pathlib import Path
from typing import Optional

from smti.cli.files import emit, load_instance
from smti.models.enums import Objective
from smti.utils.asp import emit_asp
from smti.utils.instance_format import emit_instance
from smti.utils.lp import emit_lp

FORMATS = ("asp", "lp", "native")


def cmd_encode(instance_file: Path, fmt: str, objective: Optional[Objective] = None) -> str:
    """LP needs an objective and defaults to max-cardinality; ASP without one is the decision program"""
    inst = load_instance(instance_file)
    if fmt == "asp":
        return emit_asp(inst, objective)
    if fmt == "lp":
        return emit_lp(inst, objective or Objective.MAX_CARDINALITY)
    return emit_instance(inst)


def _run(args: argparse.Namespace) -> int:
    objective = Objective(args.objective) if args.objective else None
    emit(cmd_encode(args.instance, args.format, objective), args.output)
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("encode", help="emit an ASP, LP or native encoding")
    parser.add_argument("instance", type=Path)
    parser.add_argument("--format", choices=FORMATS, default="asp")
    parser.add_argument("--objective", choices=[o.value for o in Objective])
    parser.add_argument("-o", "--output", type=Path, help="write here instead of stdout")
    parser.set_defaults(handler=_run)
