from typing import List, Sequence, Tuple

import numpy as np

from src.providers.random_provider import RandomSourceInterface


class NumpyRandomSource(RandomSourceInterface):
    _SEED_MASK = (1 << 64) - 1

    def __init__(self, seed: int, seed_sequence: np.random.SeedSequence | None = None):
        self._seed = int(seed) & self._SEED_MASK
        self._seed_sequence = seed_sequence or np.random.SeedSequence(self._seed)
        self._generator = np.random.default_rng(self._seed_sequence)

    @property
    def seed(self) -> int:
        return self._seed

    def choice(self, probabilities: Sequence[float]) -> int:
        weights = np.clip(np.asarray(probabilities, dtype=float), 0.0, None)
        weights = weights / weights.sum()
        return int(self._generator.choice(weights.size, p=weights))

    def integers(self, low: int, high: int) -> int:
        return int(self._generator.integers(low, high))

    def permutation(self, size: int) -> List[int]:
        return [int(v) for v in self._generator.permutation(size)]

    def spawn(self, count: int) -> List["NumpyRandomSource"]:
        return [
            NumpyRandomSource(self._seed, seed_sequence=child)
            for child in self._seed_sequence.spawn(count)
        ]

    def standard_normal(self, shape: Tuple[int, ...]) -> np.ndarray:
        return self._generator.standard_normal(shape)
