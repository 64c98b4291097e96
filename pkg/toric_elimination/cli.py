"""
The ``toric-elim`` command line.

Structured results go to standard output as ``key = value`` lines (or one JSON
object), a one-line human summary goes to standard error. Verdicts such as
"infeasible" are part of the output; the exit status reports only whether the
command ran.
"""
import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from ._version import __version__
from .commands import COMMANDS, get_strategy
from .exceptions import BudgetExceededError, EliminationError, SystemParseError
from .execution_config import (
    DefaultExecutionConfig,
    ExecutionConfig,
    SUPPORTED_DENSITY_MODES,
    SUPPORTED_PROBE_STRATEGIES,
)
from .polynomials import parse_system

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4

SUPPORTED_FORMATS = ["kv", "json"]


# pylint: disable=too-many-instance-attributes
@dataclass
class CommandConfig:
    command: str
    input_path: str
    nvars: Optional[int] = None
    mono: Optional[Tuple[int, ...]] = None
    seed: int = DefaultExecutionConfig.seed
    workers: Optional[int] = None
    mode: str = DefaultExecutionConfig.density_mode
    A: int = DefaultExecutionConfig.window_constant
    t_range: Tuple[int, int] = DefaultExecutionConfig.t_range
    budget: int = DefaultExecutionConfig.budget
    t: Optional[int] = None
    probe_strategy: str = DefaultExecutionConfig.probe_strategy
    output_format: str = "kv"
    verbose: int = 0
    extra: dict = field(default_factory=dict)
    """Further :class:`ExecutionConfig` fields"""

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"command must be in {COMMANDS}, got {self.command} instead.")
        if not os.path.isfile(self.input_path):
            raise ValueError(f"input file {self.input_path} does not exist.")
        if self.output_format not in SUPPORTED_FORMATS:
            raise ValueError(f"output_format must be in {SUPPORTED_FORMATS}, got {self.output_format} instead.")
        if self.mono is not None:
            self.mono = tuple(int(e) for e in self.mono)
        if self.t is not None and self.t < 1:
            raise ValueError(f"t must be positive, got {self.t} instead.")

    def execution_config(self) -> ExecutionConfig:
        return ExecutionConfig.from_environment(
            seed=self.seed,
            max_workers=self.workers,
            probe_strategy=self.probe_strategy,
            density_mode=self.mode,
            window_constant=self.A,
            t_range=tuple(self.t_range),
            budget=self.budget,
            **self.extra,
        )


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, (list, tuple)):
        return " ".join(_format_value(v) for v in value)
    return str(value)


def format_output(output: dict, output_format: str = "kv") -> str:
    if output_format == "json":
        return json.dumps(output, sort_keys=False)
    return "\n".join(f"{key} = {_format_value(value)}" for key, value in output.items())


def run(cfg: CommandConfig) -> Tuple[int, str]:
    """Run one command; returns the exit status and the structured output."""
    try:
        with open(cfg.input_path, encoding="utf-8") as handle:
            system = parse_system(handle.read(), cfg.nvars)
        strategy = get_strategy(cfg.command)
        output = strategy.execute(system, cfg, cfg.execution_config())
    except SystemParseError as error:
        logger.error("%s:%d:%d: %s", cfg.input_path, error.line, error.column, error)
        return EXIT_PARSE, ""
    except BudgetExceededError as error:
        logger.error("budget exhausted: %s", error)
        return EXIT_BUDGET, ""
    except ValueError as error:
        logger.error("invalid input: %s", error)
        return EXIT_PARSE, ""
    except EliminationError as error:
        logger.error("%s failed: %s", cfg.command, error)
        return EXIT_INTERNAL, ""
    print(strategy.summary(output), file=sys.stderr)
    return EXIT_OK, format_output(output, cfg.output_format)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toric-elim", description="Exact sparse elimination for polynomial systems.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("input", help="file with one polynomial per line")
    parser.add_argument("--nvars", type=int, help="number of unknowns (default: largest index used)")
    parser.add_argument("--mono", type=int, nargs="+", help="exponents of the monomial for `reduce`")
    parser.add_argument("--seed", type=int, default=DefaultExecutionConfig.seed)
    parser.add_argument("--workers", type=int, help="process pool size for determinant evaluation")
    parser.add_argument("--mode", choices=SUPPORTED_DENSITY_MODES, default=DefaultExecutionConfig.density_mode)
    parser.add_argument("--A", dest="A", type=int, default=DefaultExecutionConfig.window_constant)
    parser.add_argument("--t-range", type=int, nargs=2, metavar=("LO", "HI"), default=DefaultExecutionConfig.t_range)
    parser.add_argument("--budget", type=int, default=DefaultExecutionConfig.budget)
    parser.add_argument("--t", type=int, help="count the primes of a single window instead of searching")
    parser.add_argument(
        "--probe-strategy", choices=SUPPORTED_PROBE_STRATEGIES, default=DefaultExecutionConfig.probe_strategy
    )
    parser.add_argument("--format", dest="output_format", choices=SUPPORTED_FORMATS, default="kv")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = CommandConfig(
            command=args.command,
            input_path=args.input,
            nvars=args.nvars,
            mono=args.mono,
            seed=args.seed,
            workers=args.workers,
            mode=args.mode,
            A=args.A,
            t_range=tuple(args.t_range),
            budget=args.budget,
            t=args.t,
            probe_strategy=args.probe_strategy,
            output_format=args.output_format,
            verbose=args.verbose,
        )
    except ValueError as error:
        logger.error("%s", error)
        return EXIT_PARSE
    status, output = run(cfg)
    if output:
        print(output)
    return status


if __name__ == "__main__":
    sys.exit(main())
