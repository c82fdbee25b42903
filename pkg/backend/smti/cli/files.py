from pathlib import Path
from typing import Optional

from smti.core.exceptions import InputReadError, OutputWriteError
from smti.models.instance import Instance, Matching
from smti.utils.instance_format import parse_instance, parse_matching


def read_text(path: Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputReadError(str(path), str(exc)) from exc


def write_text(path: Path, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OutputWriteError(str(path), str(exc)) from exc


def load_instance(path: Path) -> Instance:
    return parse_instance(read_text(path))


def load_matching(path: Path, inst: Instance) -> Matching:
    return parse_matching(read_text(path), inst)


def emit(text: str, output: Optional[Path]) -> None:
    """Write to the output file when given, else to stdout"""
    if output is None:
        print(text, end="")
    else:
        write_text(output, text)
