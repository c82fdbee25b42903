"""
check: verify a matching against an instance.
"""
import argparse
from pathlib import Path
from typing import List

from smti.cli.files import load_instance, load_matching
from smti.models.enums import Objective
from smti.models.instance import Instance, Matching
from smti.services.stability import blocking_pairs, cost


def format_check(inst: Instance, mu: Matching) -> str:
    bps = blocking_pairs(inst, mu)
    verdict = "unstable" if bps else "stable"
    lines: List[str] = [f"{verdict}, {len(bps)} blocking pairs"]
    lines += [f"({bp.man}, {bp.woman}) {bp.case.value}" for bp in bps]
    lines += [f"{objective.value}: {cost(inst, mu, objective)}" for objective in Objective]
    return "\n".join(lines) + "\n"


def cmd_check(instance_file: Path, matching_file: Path) -> str:
    inst = load_instance(instance_file)
    return format_check(inst, load_matching(matching_file, inst))


def _run(args: argparse.Namespace) -> int:
    print(cmd_check(args.instance, args.matching), end="")
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("check", help="list blocking pairs and costs of a matching")
    parser.add_argument("instance", type=Path)
    parser.add_argument("matching", type=Path)
    parser.set_defaults(handler=_run)
