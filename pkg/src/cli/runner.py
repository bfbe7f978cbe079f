import logging
from typing import List, Tuple, Union

from src.config.dependencies import (
    get_deutsch_service,
    get_random_source,
    get_reproduction_service,
    get_shor_service,
    get_simon_service,
)
from src.config.settings import Settings, get_settings
from src.number_theory.gf2 import to_bitstring
from src.oracles.generators import (
    constant_table,
    make_simon_instance,
    named_deutsch_oracle,
    random_balanced_table,
)
from src.oracles.truth_tables import TruthTable, load_truth_table
from src.schemas.checks import ReproductionReport
from src.schemas.cli import CliConfig, GeometryFamilyEnum, OutputFormatEnum, SubcommandEnum
from src.schemas.reports import RunReport
from src.simulation.registers import smallest_power_of_two_at_least


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2

Report = Union[RunReport, ReproductionReport]


def _deutsch_oracle(config: CliConfig) -> TruthTable:
    if config.oracle_file is not None:
        return load_truth_table(config.oracle_file)
    return named_deutsch_oracle(config.oracle)


def _jozsa_oracle(config: CliConfig, settings: Settings) -> TruthTable:
    if config.oracle_file is not None:
        return load_truth_table(config.oracle_file)
    if config.oracle == "balanced":
        # separate stream so the balanced table does not shift the measurement draws
        return random_balanced_table(config.n, get_random_source(config.seed, settings).spawn(1)[0])
    return constant_table(config.n, 0 if config.oracle == "constant0" else 1)


def _simon_oracle(config: CliConfig, settings: Settings) -> TruthTable:
    if config.oracle_file is not None:
        return load_truth_table(config.oracle_file)
    return make_simon_instance(config.n, config.r, get_random_source(config.seed, settings).spawn(1)[0])


def execute(config: CliConfig, settings: Settings) -> Report:
    """Dispatch a validated configuration to the matching service."""
    command = config.subcommand
    if command == SubcommandEnum.DEUTSCH:
        service = get_deutsch_service(config.seed, config.tolerance, settings)
        return service.deutsch_xor(_deutsch_oracle(config), strategy=config.strategy)
    if command == SubcommandEnum.CLEVE:
        service = get_deutsch_service(config.seed, config.tolerance, settings)
        return service.deutsch_cleve(_deutsch_oracle(config))
    if command == SubcommandEnum.DJ:
        service = get_deutsch_service(config.seed, config.tolerance, settings)
        return service.deutsch_jozsa(_jozsa_oracle(config, settings), config.n)
    if command == SubcommandEnum.SIMON:
        service = get_simon_service(config.seed, config.tolerance, settings)
        return service.simon(_simon_oracle(config, settings), config.n, max_trials=config.max_trials)
    if command == SubcommandEnum.SHOR:
        service = get_shor_service(config.seed, config.tolerance, settings)
        return service.shor_factor(
            config.modulus,
            max_rounds=config.max_rounds,
            a=config.a,
            s=config.s,
            exact_output_dim=config.exact_output_dim,
        )
    if command == SubcommandEnum.GEOMETRY:
        return _geometry(config, settings)
    return get_reproduction_service(config.seed, config.tolerance, settings).reproduce()


def _geometry(config: CliConfig, settings: Settings) -> RunReport:
    if config.family == GeometryFamilyEnum.DEUTSCH:
        return get_deutsch_service(config.seed, config.tolerance, settings).deutsch_geometry_report(config.seed)
    if config.family == GeometryFamilyEnum.SIMON:
        service = get_simon_service(config.seed, config.tolerance, settings)
        return service.simon_geometry_report(config.n, config.seed, config.r)
    s = config.s or smallest_power_of_two_at_least(config.modulus * config.modulus)
    service = get_shor_service(config.seed, config.tolerance, settings)
    return service.shor_geometry_report(config.a, config.modulus, s, config.seed)


def exit_code(report: Report) -> int:
    if isinstance(report, ReproductionReport):
        return EXIT_OK if report.passed else EXIT_ERROR
    return EXIT_OK if report.conclusive else EXIT_INCONCLUSIVE


def render_text(report: Report) -> str:
    if isinstance(report, ReproductionReport):
        lines = [f"{'PASS' if check.passed else 'FAIL'}  {check.check_id:<36} {check.detail}" for check in report.checks]
        lines.append(f"{len(report.checks) - len(report.failed_checks)}/{len(report.checks)} checks passed")
        return "\n".join(lines)

    verdict = report.verdict.value if hasattr(report.verdict, "value") else report.verdict
    if report.algorithm.value == "simon" and report.verdict is not None:
        verdict = to_bitstring(report.verdict, report.details["n"])
    lines: List[str] = [
        f"algorithm:  {report.algorithm.value}",
        f"verdict:    {verdict if report.conclusive else 'inconclusive'}",
        f"trials:     {report.trials_used}",
        f"seed:       {report.seed}",
    ]
    if report.trace:
        lines.append("measurements:")
        lines.extend(
            f"  register {item.register_index}: {item.label} (p={item.probability:.4f})" for item in report.trace
        )
    for shor_round in report.rounds:
        status = "factors " + str(shor_round.factors) if shor_round.success else shor_round.failure_reason.value
        lines.append(f"  round {shor_round.round_index}: a={shor_round.a} c={shor_round.c} "
                     f"r={shor_round.candidate_r} -> {status}")
    if report.geometry:
        lines.append("geometry:")
        for entry in report.geometry:
            labels = "" if entry.basis_labels is None else f" span{entry.basis_labels}"
            marker = "contains" if entry.contains_final else "excludes"
            lines.append(f"  {entry.name} (dim {entry.dimension}){labels}: {marker} final state")
    return "\n".join(lines)


def render(report: Report, output_format: OutputFormatEnum) -> str:
    if output_format == OutputFormatEnum.JSON:
        return report.model_dump_json(indent=2)
    return render_text(report)


def run(config: CliConfig, settings: Settings | None = None) -> Tuple[int, str]:
    """
    Execute one command and return (exit status, report text).

    Domain errors and malformed oracle files become status 1 with a diagnostic;
    the exception message names the offending field.
    """
    settings = settings or get_settings()
    logger.info(f"Running command {config.subcommand.value} with seed {config.seed}")
    try:
        report = execute(config, settings)
    except ValueError as e:
        logger.error(f"Command {config.subcommand.value} failed: {e}")
        return EXIT_ERROR, f"error: {e}"
    return exit_code(report), render(report, config.output_format)
