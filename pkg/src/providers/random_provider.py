from abc import ABC, abstractmethod
from typing import List, Sequence, Tuple

import numpy as np


class RandomSourceInterface(ABC):
    """Interface for the explicit randomness consumed by measurements."""

    @property
    @abstractmethod
    def seed(self) -> int:
        pass

    @abstractmethod
    def choice(self, probabilities: Sequence[float]) -> int:
        """Sample an index from a probability vector."""
        pass

    @abstractmethod
    def integers(self, low: int, high: int) -> int:
        """Uniform integer in [low, high)."""
        pass

    @abstractmethod
    def permutation(self, size: int) -> List[int]:
        pass

    @abstractmethod
    def spawn(self, count: int) -> List["RandomSourceInterface"]:
        """Independent child streams for parallel trials."""
        pass

    @abstractmethod
    def standard_normal(self, shape: Tuple[int, ...]) -> np.ndarray:
        pass
