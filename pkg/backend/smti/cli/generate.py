"""
generate: write a corpus of random instances in the native format.
"""
import argparse
from pathlib import Path
from typing import List

from smti.cli.files import write_text
from smti.core.exceptions import InvalidParameterError, OutputWriteError
from smti.core.logging import get_logger
from smti.models.schemas import GenParams
from smti.services.generator import derive_seed, generate
from smti.utils.instance_format import emit_instance

logger = get_logger(__name__)


def instance_filename(n: int, p1: float, p2: float, k: int) -> str:
    return f"inst_{n}_{p1:g}_{p2:g}_{k}.smti"


def cmd_generate(n: int, p1: float, p2: float, count: int, seed: int, out_dir: Path) -> List[Path]:
    """Instance k is generated from derive_seed(seed, 0, 0, k)"""
    # validate before touching the filesystem
    GenParams(n=n, p1=p1, p2=p2, seed=seed)
    if count < 1:
        raise InvalidParameterError("count", count, "must be at least 1")
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputWriteError(str(out_dir), str(exc)) from exc

    written = []
    for k in range(count):
        inst = generate(GenParams(n=n, p1=p1, p2=p2, seed=derive_seed(seed, 0, 0, k)))
        path = out_dir / instance_filename(n, p1, p2, k)
        write_text(path, emit_instance(inst))
        written.append(path)

    logger.info(
        "Corpus written",
        extra={"extra_fields": {"n": n, "p1": p1, "p2": p2, "count": count, "out_dir": str(out_dir)}}
    )
    return written


def _run(args: argparse.Namespace) -> int:
    for path in cmd_generate(args.n, args.p1, args.p2, args.count, args.seed, args.out_dir):
        print(path)
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("generate", help="generate random SMTI instances")
    parser.add_argument("--n", type=int, required=True, help="agents per side")
    parser.add_argument("--p1", type=float, default=0.0, help="incompleteness probability in [0, 1)")
    parser.add_argument("--p2", type=float, default=0.0, help="tie probability in [0, 1]")
    parser.add_argument("--count", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-dir", type=Path, default=Path("."))
    parser.set_defaults(handler=_run)
