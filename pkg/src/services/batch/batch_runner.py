import asyncio
import logging
from typing import Callable, List, TypeVar

from src.providers.numpy_random_provider import NumpyRandomSource
from src.providers.random_provider import RandomSourceInterface


logger = logging.getLogger(__name__)

T = TypeVar("T")


class BatchRunner:
    """Runs independent seeded trials in worker threads and returns them in trial order."""

    async def run(
            self,
            job: Callable[[RandomSourceInterface], T],
            seed: int,
            count: int
    ) -> List[T]:
        if count < 1:
            raise ValueError(f"count must be positive, got {count}")
        sources = NumpyRandomSource(seed).spawn(count)
        logger.info(f"Starting {count} trials from seed {seed}")
        results = await asyncio.gather(
            *[asyncio.to_thread(job, source) for source in sources]
        )
        logger.info(f"Finished {count} trials from seed {seed}")
        return list(results)

    def run_sync(
            self,
            job: Callable[[RandomSourceInterface], T],
            seed: int,
            count: int
    ) -> List[T]:
        return asyncio.run(self.run(job, seed, count))
