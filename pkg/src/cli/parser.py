import argparse
from typing import Any, Dict, List, Optional

from src.config.settings import Settings
from src.exceptions.cli import CliUsageError
from src.schemas.cli import (
    CliConfig,
    DeutschStrategyEnum,
    GeometryFamilyEnum,
    OutputFormatEnum,
    SubcommandEnum,
)


class CliArgumentParser(argparse.ArgumentParser):
    """Raises instead of exiting so that usage errors share exit status 1."""

    def error(self, message: str):
        raise CliUsageError(message)


def _integer(value: str) -> int:
    return int(value, 0)


def _common_flags(settings: Settings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_integer, default=settings.DEFAULT_SEED, help="Seed for all sampling")
    common.add_argument("--tolerance", type=float, default=settings.TOLERANCE, help="Equality tolerance")
    common.add_argument(
        "--format",
        dest="output_format",
        choices=[item.value for item in OutputFormatEnum],
        default=settings.OUTPUT_FORMAT,
    )
    common.add_argument("--log-level", default=settings.LOG_LEVEL)
    return common


def _oracle_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--oracle", help="Built-in oracle name")
    parser.add_argument("--oracle-file", help="Path to a truth table JSON file")


def build_parser(settings: Settings) -> CliArgumentParser:
    common = _common_flags(settings)
    parser = CliArgumentParser(
        prog="qlogic",
        description="Statevector runs of the Deutsch, Simon and Shor algorithms with subspace geometry",
    )
    commands = parser.add_subparsers(dest="subcommand", required=True, parser_class=CliArgumentParser)

    deutsch = commands.add_parser(SubcommandEnum.DEUTSCH.value, parents=[common], help="Original XOR algorithm")
    _oracle_flags(deutsch)
    deutsch.add_argument(
        "--strategy",
        choices=[item.value for item in DeutschStrategyEnum],
        default=DeutschStrategyEnum.BOTH_REGISTERS.value,
    )

    cleve = commands.add_parser(SubcommandEnum.CLEVE.value, parents=[common], help="Phase-kickback variant")
    _oracle_flags(cleve)

    dj = commands.add_parser(SubcommandEnum.DJ.value, parents=[common], help="Deutsch-Jozsa on n bits")
    dj.add_argument("--n", type=int)
    _oracle_flags(dj)

    simon = commands.add_parser(SubcommandEnum.SIMON.value, parents=[common], help="Simon period finding")
    simon.add_argument("--n", type=int)
    simon.add_argument("--r", type=_integer, help="Period, e.g. 3 or 0b011")
    simon.add_argument("--max-trials", type=int)
    simon.add_argument("--oracle-file", help="Path to a truth table JSON file")

    shor = commands.add_parser(SubcommandEnum.SHOR.value, parents=[common], help="Shor factoring")
    shor.add_argument("--N", dest="modulus", type=int)
    shor.add_argument("--a", type=int, help="Force this a in every round")
    shor.add_argument("--s", type=int, help="Input register dimension")
    shor.add_argument("--max-rounds", type=int)
    shor.add_argument("--exact-output-dim", action="store_true", help="Output register of dimension N")

    geometry = commands.add_parser(SubcommandEnum.GEOMETRY.value, parents=[common], help="Subspace pictures")
    geometry.add_argument("--family", choices=[item.value for item in GeometryFamilyEnum])
    geometry.add_argument("--n", type=int)
    geometry.add_argument("--r", type=_integer)
    geometry.add_argument("--N", dest="modulus", type=int)
    geometry.add_argument("--a", type=int)
    geometry.add_argument("--s", type=int)

    commands.add_parser(SubcommandEnum.REPRODUCE.value, parents=[common], help="Run every reproduction check")
    return parser


def parse_config(argv: Optional[List[str]], settings: Settings) -> CliConfig:
    """Parse and validate a command line; raises CliUsageError or ValidationError."""
    namespace = build_parser(settings).parse_args(argv)
    values: Dict[str, Any] = {key: value for key, value in vars(namespace).items() if value is not None}
    return CliConfig(**values)
