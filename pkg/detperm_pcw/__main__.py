"""detperm-pcw: determinant and permanent pseudo-codewords of parity-check matrices."""

from __future__ import annotations

import argparse
import logging
import logging.config
import sys
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from . import __version__
from .algebra.errors import ConfigError, PcwError
from .algebra.types import ColumnSubset
from .commands import cmd_check, cmd_compute, cmd_gaussian, cmd_generate, cmd_histogram
from .config import Command, Config, RunConfig, edge_grid

COMMANDS: dict[Command, Callable[[RunConfig], Any]] = {
    Command.COMPUTE: cmd_compute,
    Command.HISTOGRAM: cmd_histogram,
    Command.CHECK: cmd_check,
    Command.GAUSSIAN: cmd_gaussian,
    Command.GENERATE: cmd_generate,
}


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numbers, got {text!r}") from None


def _edges(text: str) -> list[float]:
    """``start:stop:step`` or an explicit list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError("edge grid must be start:stop:step")
        try:
            start, stop, step = (float(p) for p in parts)
            return edge_grid(start, stop, step)
        except (ValueError, ConfigError) as e:
            raise argparse.ArgumentTypeError(str(e)) from None
    return _float_list(text)


class PcwProgram:
    name = "detperm-pcw"
    command = "python -m detperm_pcw"
    description = "Determinant and permanent pseudo-codewords of binary parity-check matrices."
    version = __version__

    log: logging.Logger

    def __init__(self) -> None:
        self.log = logging.getLogger("pcw.main")
        self.parser = self._build_parser()

    def _build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog=self.command, description=self.description)
        parser.add_argument("--version", action="version", version=f"{self.name} {self.version}")
        parser.add_argument("-c", "--config", type=Path, help="YAML file overriding the packaged defaults")
        parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
        sub = parser.add_subparsers(dest="command", required=True)

        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--matrix", type=Path, help="parity-check matrix (.alist or dense 0/1 text)")
        common.add_argument("--out", type=Path, help="output file (default: stdout)")
        common.add_argument("--seed", type=int, default=0)

        batch = argparse.ArgumentParser(add_help=False)
        batch.add_argument("--kind", choices=["det", "absdet", "perm"])
        batch.add_argument("--subset", type=_int_list, action="append", default=[], help="column indices, repeatable")
        batch.add_argument(
            "--all-subsets",
            action="store_true",
            help="every size-(m+1) subset; this is already the default, the flag only rules out --subset",
        )
        batch.add_argument("--dedupe", action="store_true", help="one row per distinct vector")
        batch.add_argument("--threads", type=int)

        compute = sub.add_parser("compute", parents=[common, batch], help="vectors for column subsets")
        compute.add_argument("--minimality", action="store_true", default=None, help="add an is_minimal column")

        histogram = sub.add_parser("histogram", parents=[common, batch], help="cumulative pseudo-weight histogram")
        histogram.add_argument("--edges", type=_edges, help="start:stop:step or a comma-separated list")
        histogram.add_argument("--vectors", type=Path, help="records CSV from a previous compute run")
        histogram.add_argument("--gnuplot", type=Path, help="also write a two-column plot file")

        check = sub.add_parser("check", parents=[common], help="fundamental-cone verdict for a vector")
        check.add_argument("--vector", type=_int_list, required=True)

        gaussian = sub.add_parser("gaussian", parents=[common], help="Gaussian-model limit check")
        gaussian.add_argument("--subset", type=_int_list, action="append", default=[])
        gaussian.add_argument("--eps", type=_float_list, help="strictly decreasing epsilon schedule")

        generate = sub.add_parser("generate", parents=[common], help="write a parity-check matrix")
        generate.add_argument("generator", choices=["h422", "dumbbell", "regular", "decycle", "tree"])
        generate.add_argument("--k", type=int, help="dumbbell cycle length")
        generate.add_argument("--n", type=int, help="number of bits")
        generate.add_argument("--m", type=int, help="number of checks (tree)")
        generate.add_argument("--dv", type=int, help="bit degree")
        generate.add_argument("--dc", type=int, help="check degree")
        return parser

    def prepare_logging(self, config: Config, verbose: bool) -> None:
        logging.config.dictConfig(config.logging)
        if verbose:
            logging.getLogger("pcw").setLevel(logging.DEBUG)

    def build_run_config(self, args: argparse.Namespace, config: Config) -> RunConfig:
        command = Command(args.command)
        fields: dict[str, Any] = {
            "command": command,
            "matrix": args.matrix,
            "out": args.out,
            "seed": args.seed,
            "threads": config.threads,
            "block_size": config["compute.block_size"],
            "perm_max_dim": config["compute.perm_max_dim"],
            "minimality": bool(config["compute.minimality"]),
            "edges": config.histogram_edges,
            "rtol": config["gaussian.rtol"],
            "zero_atol": config["gaussian.zero_atol"],
            "retry_budget": config["generate.retry_budget"],
            "swap_budget": config["generate.swap_budget"],
        }
        if command.needs_kind:
            fields["kind"] = args.kind or config.default_kind
            fields["all_subsets"] = args.all_subsets
            fields["dedupe"] = args.dedupe
            if args.threads is not None:
                fields["threads"] = args.threads
        if getattr(args, "subset", None):
            try:
                fields["subsets"] = [ColumnSubset.of(s) for s in args.subset]
            except ValueError as e:
                raise ConfigError(f"bad --subset: {e}") from None
        if command is Command.COMPUTE and args.minimality is not None:
            fields["minimality"] = args.minimality
        if command is Command.HISTOGRAM:
            if args.edges is not None:
                fields["edges"] = args.edges
            fields["vectors"] = args.vectors
            fields["gnuplot"] = args.gnuplot
        if command is Command.CHECK:
            fields["vector"] = tuple(args.vector)
        if command is Command.GAUSSIAN:
            fields["eps"] = args.eps if args.eps is not None else config.schedule
        if command is Command.GENERATE:
            fields.update(generator=args.generator, k=args.k, n=args.n, m=args.m, dv=args.dv, dc=args.dc)
        return RunConfig.build(**fields)

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        args = self.parser.parse_args(argv)
        try:
            config = Config(args.config)
            self.prepare_logging(config, args.verbose)
            cfg = self.build_run_config(args, config)
            self.log.debug("Running %s with %s", cfg.command.value, cfg)
            COMMANDS[cfg.command](cfg)
        except PcwError as e:
            self.log.error("%s", e)
            return e.exit_code
        except OSError as e:
            self.log.error("I/O error: %s", e)
            return 1
        except Exception:
            self.log.exception("Unexpected error")
            return 2
        return 0


def main() -> None:
    sys.exit(PcwProgram().run())


if __name__ == "__main__":
    main()
