"""
bench: run the experiment grid from a config file and write the CSV summary.
"""
import argparse
from pathlib import Path
from typing import Optional

import pandas as pd

from smti.core.exceptions import InvalidParameterError
from smti.services.bench_service import load_bench_config, run_bench, write_csv


def cmd_bench(config_file: Path, jobs: Optional[int] = None, output: Optional[Path] = None) -> pd.DataFrame:
    if jobs is not None and jobs < 1:
        raise InvalidParameterError("jobs", jobs, "must be at least 1")
    config = load_bench_config(config_file)
    summary = run_bench(config, jobs)
    write_csv(summary, output or config.output)
    return summary


def _run(args: argparse.Namespace) -> int:
    summary = cmd_bench(args.config, args.jobs, args.output)
    print(f"{len(summary)} rows written")
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("bench", help="run a benchmark grid")
    parser.add_argument("config", type=Path, help="KEY=value benchmark config file")
    parser.add_argument("--jobs", type=int, help="parallel worker processes (overrides JOBS)")
    parser.add_argument("-o", "--output", type=Path, help="CSV path (overrides OUTPUT)")
    parser.set_defaults(handler=_run)
