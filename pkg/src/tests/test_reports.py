from src.oracles import make_simon_instance, named_deutsch_oracle
from src.schemas.reports import RunReport


def _round_trips(report: RunReport) -> bool:
    return RunReport.model_validate_json(report.model_dump_json()) == report


def test_deutsch_report_round_trips(deutsch_service):
    assert _round_trips(deutsch_service.deutsch_xor(named_deutsch_oracle("identity")))
    assert _round_trips(deutsch_service.deutsch_cleve(named_deutsch_oracle("constant1")))


def test_simon_report_round_trips(simon_service, rng):
    report = simon_service.simon(make_simon_instance(3, 5, rng), 3)

    assert _round_trips(report)


def test_shor_report_round_trips(shor_service, rng):
    report = shor_service.shor_factor(15, rng, a=7, s=64)

    assert report.rounds and report.geometry
    assert _round_trips(report)
    assert _round_trips(shor_service.shor_geometry_report(7, 15, 64, seed=0))
