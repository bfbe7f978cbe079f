from typing import Optional

from src.config.settings import Settings, get_settings
from src.providers.numpy_random_provider import NumpyRandomSource
from src.providers.random_provider import RandomSourceInterface
from src.services.batch.batch_runner import BatchRunner
from src.services.deutsch.deutsch_service import DeutschService
from src.services.reproduction.reproduction_service import ReproductionService
from src.services.shor.shor_service import ShorService
from src.services.simon.simon_service import SimonService


def get_random_source(seed: Optional[int] = None, settings: Optional[Settings] = None) -> RandomSourceInterface:
    """
    Create the seeded random source consumed by measurements.

    When no seed is given, the DEFAULT_SEED from the settings is used so that runs
    stay reproducible.
    """
    settings = settings or get_settings()
    return NumpyRandomSource(settings.DEFAULT_SEED if seed is None else seed)


def get_deutsch_service(
        seed: Optional[int] = None,
        tolerance: Optional[float] = None,
        settings: Optional[Settings] = None
) -> DeutschService:
    settings = settings or get_settings()
    return DeutschService(settings, get_random_source(seed, settings), tolerance)


def get_simon_service(
        seed: Optional[int] = None,
        tolerance: Optional[float] = None,
        settings: Optional[Settings] = None
) -> SimonService:
    settings = settings or get_settings()
    return SimonService(settings, get_random_source(seed, settings), tolerance)


def get_shor_service(
        seed: Optional[int] = None,
        tolerance: Optional[float] = None,
        settings: Optional[Settings] = None
) -> ShorService:
    settings = settings or get_settings()
    return ShorService(settings, get_random_source(seed, settings), tolerance)


def get_reproduction_service(
        seed: Optional[int] = None,
        tolerance: Optional[float] = None,
        settings: Optional[Settings] = None
) -> ReproductionService:
    """
    Wire one random source into every algorithm service and the reproduction checks.

    Sharing the source keeps the whole check table a function of a single seed.
    """
    settings = settings or get_settings()
    random_source = get_random_source(seed, settings)
    return ReproductionService(
        settings=settings,
        random_source=random_source,
        deutsch_service=DeutschService(settings, random_source, tolerance),
        simon_service=SimonService(settings, random_source, tolerance),
        shor_service=ShorService(settings, random_source, tolerance),
        batch_runner=BatchRunner(),
        tolerance=tolerance,
    )
