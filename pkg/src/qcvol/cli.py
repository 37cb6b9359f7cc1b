import argparse
import asyncio
import logging
import os
import sys
import tomllib

from dotenv import load_dotenv
from pydantic import ValidationError

from .commands import (
    DENSITY_NAMES,
    cmd_density,
    cmd_invariance,
    cmd_iterate,
    cmd_push,
    cmd_sample,
    cmd_volume,
)
from .config import Config, load_config
from .container import init_dishka_container
from .errors import DomainError, SampleTooSmallError
from .models import ChannelKind, Command, OutputFormat, RunConfig, SamplingMethod

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

COMMANDS = {
    Command.volume: cmd_volume,
    Command.sample: cmd_sample,
    Command.push: cmd_push,
    Command.density: cmd_density,
    Command.invariance: cmd_invariance,
    Command.iterate: cmd_iterate,
}

logger = logging.getLogger(__name__)


def _seed(value: str) -> int:
    return int(value, 0)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kind", choices=[k.value for k in ChannelKind])
    common.add_argument("--n", type=int, help="trials, samples or ensemble size")
    common.add_argument("--seed", type=_seed, help="64-bit seed, decimal or 0x-prefixed")
    common.add_argument("--r0", type=float, help="Bloch radius of the input state")
    common.add_argument("--bins", type=int)
    common.add_argument("--grid", type=int, help="grid points of analytic curves")
    common.add_argument("--steps", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("--rotations", type=int)
    common.add_argument("--which", choices=DENSITY_NAMES)
    common.add_argument("--method", choices=[m.value for m in SamplingMethod])
    common.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat])
    common.add_argument("--out", dest="output_path", help="write here instead of stdout")
    common.add_argument("--config", help="TOML config, defaults to $QCVOL_CONFIG")
    common.add_argument("--verbose", action="store_true")
    # contraction applied in the invariance test, a negative control
    common.add_argument("--distort", dest="distortion", type=float, help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="qcvol", description="Volumes and random-channel statistics of qubit channels."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser("volume", parents=[common], help="Monte Carlo volume estimate")
    subparsers.add_parser("sample", parents=[common], help="uniformly random channel parameters")
    subparsers.add_parser("push", parents=[common], help="radii of random images of a state")
    subparsers.add_parser("density", parents=[common], help="analytic curves on a grid")
    subparsers.add_parser("invariance", parents=[common], help="rotation invariance KS tests")
    subparsers.add_parser("iterate", parents=[common], help="repeated random channels")
    return parser


def _default_seed(config: Config) -> int:
    env_seed = os.environ.get("QCVOL_SEED")
    if env_seed:
        return _seed(env_seed)
    return config.run.seed


def make_run_config(args: argparse.Namespace, config: Config, argv: list[str]) -> RunConfig:
    flags = {
        key: value
        for key, value in vars(args).items()
        if value is not None and key not in ("config", "verbose")
    }
    flags.setdefault("seed", _default_seed(config))
    flags.setdefault("workers", config.run.workers)
    flags.setdefault("output_format", config.run.output_format)
    return RunConfig(**flags, argv=argv)


async def main(argv: list[str] | None = None) -> int:
    load_dotenv()
    argv = sys.argv[1:] if argv is None else argv

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s - %(levelname)s - %(name)s - %(message)s",
        stream=sys.stderr,
        force=True,
        encoding="utf-8",
    )

    try:
        config = load_config(args.config or os.environ.get("QCVOL_CONFIG"))
        cfg = make_run_config(args, config, argv)
    except (OSError, tomllib.TOMLDecodeError, ValidationError, ValueError) as err:
        parser.print_usage(sys.stderr)
        logger.error("invalid arguments: %s", err)
        return EXIT_USAGE

    container = init_dishka_container(config)
    try:
        return await COMMANDS[cfg.command](cfg, container)
    except (DomainError, SampleTooSmallError) as err:
        logger.error("%s: %s", cfg.command.value, err)
        return EXIT_USAGE
    except Exception as err:
        logger.error("%s failed", cfg.command.value, exc_info=err)
        return EXIT_FAIL
    finally:
        await container.close()


def cli():
    """Wrapper for command line"""
    try:
        sys.exit(asyncio.run(main()))
    except KeyboardInterrupt:
        print("Interrupted!", file=sys.stderr)
        sys.exit(130)


if __name__ == "__main__":
    cli()
