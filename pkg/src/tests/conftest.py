import os
# Устанавливаем тестовое окружение до импорта модулей
os.environ["ENVIRONMENT"] = "testing"

from typing import List, Sequence, Tuple

import numpy as np
import pytest

from src.config import get_settings
from src.config.dependencies import (
    get_deutsch_service,
    get_reproduction_service,
    get_shor_service,
    get_simon_service,
)
from src.providers.numpy_random_provider import NumpyRandomSource
from src.providers.random_provider import RandomSourceInterface
from src.services.batch.batch_runner import BatchRunner


@pytest.fixture(scope="session")
def settings():
    return get_settings()


@pytest.fixture
def rng(settings):
    """A fresh seeded random source per test."""
    return NumpyRandomSource(settings.DEFAULT_SEED)


@pytest.fixture
def scripted_source():
    """
    Random source that returns prescribed outcomes for choice() in order.

    Used to drive a measurement into a specific branch; it fails loudly when the
    script asks for an outcome of probability zero.
    """
    class ScriptedRandomSource(RandomSourceInterface):
        def __init__(self, outcomes: Sequence[int], seed: int = 0):
            self._outcomes = list(outcomes)
            self._seed = seed
            self.integer_draws: List[int] = []

        @property
        def seed(self) -> int:
            return self._seed

        def choice(self, probabilities: Sequence[float]) -> int:
            outcome = self._outcomes.pop(0)
            assert probabilities[outcome] > 0, f"scripted outcome {outcome} has probability zero"
            return outcome

        def integers(self, low: int, high: int) -> int:
            self.integer_draws.append(low)
            return low

        def permutation(self, size: int) -> List[int]:
            return list(range(size))

        def spawn(self, count: int) -> List[RandomSourceInterface]:
            return [ScriptedRandomSource(self._outcomes, self._seed) for _ in range(count)]

        def standard_normal(self, shape: Tuple[int, ...]) -> np.ndarray:
            return np.ones(shape)

    return ScriptedRandomSource


@pytest.fixture
def deutsch_service(settings):
    return get_deutsch_service(settings.DEFAULT_SEED, settings=settings)


@pytest.fixture
def simon_service(settings):
    return get_simon_service(settings.DEFAULT_SEED, settings=settings)


@pytest.fixture
def shor_service(settings):
    return get_shor_service(settings.DEFAULT_SEED, settings=settings)


@pytest.fixture
def reproduction_service(settings):
    return get_reproduction_service(settings.DEFAULT_SEED, settings=settings)


@pytest.fixture
def batch_runner():
    return BatchRunner()
