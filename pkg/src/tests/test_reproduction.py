import pytest

from src.config import get_settings
from src.config.dependencies import get_reproduction_service


@pytest.fixture(scope="module")
def default_report():
    settings = get_settings()
    return get_reproduction_service(settings.DEFAULT_SEED, settings=settings).reproduce()


def test_every_check_passes_at_default_settings(default_report):
    assert [check.check_id for check in default_report.failed_checks] == []
    assert default_report.passed
    assert len(default_report.checks) == 17


def test_report_carries_seed_and_tolerance(default_report, settings):
    assert default_report.seed == settings.DEFAULT_SEED
    assert default_report.tolerance == settings.TOLERANCE
    assert len({check.check_id for check in default_report.checks}) == len(default_report.checks)


def test_impossible_tolerance_fails_the_lattice_check(settings):
    service = get_reproduction_service(settings.DEFAULT_SEED, tolerance=1e-20, settings=settings)

    result = service._run_check("subspace_lattice_laws", "lattice laws", service._subspace_laws)

    assert not result.passed


def test_raising_check_is_reported_not_propagated(reproduction_service):
    def broken():
        raise ZeroDivisionError("boom")

    result = reproduction_service._run_check("broken", "always raises", broken)

    assert not result.passed
    assert result.detail == "ZeroDivisionError: boom"
