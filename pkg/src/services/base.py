from typing import Optional

from src.config.settings import Settings
from src.providers.random_provider import RandomSourceInterface
from src.schemas.reports import MeasurementSummary
from src.simulation.measurement import MeasurementRecord
from src.simulation.registers import is_power_of_two


class BaseAlgorithmService:
    def __init__(
            self,
            settings: Settings,
            random_source: RandomSourceInterface,
            tolerance: Optional[float] = None
    ):
        self.settings = settings
        self.random_source = random_source
        self.tolerance = settings.TOLERANCE if tolerance is None else tolerance

    def _rng(self, rng: Optional[RandomSourceInterface]) -> RandomSourceInterface:
        return self.random_source if rng is None else rng

    @staticmethod
    def _summarize(record: MeasurementRecord) -> MeasurementSummary:
        dimension = record.post_state.layout.dimension(record.register_index)
        if is_power_of_two(dimension):
            label = format(record.outcome, f"0{dimension.bit_length() - 1}b")
        else:
            label = str(record.outcome)
        return MeasurementSummary(
            register_index=record.register_index,
            outcome=record.outcome,
            label=label,
            probability=record.probability,
        )
