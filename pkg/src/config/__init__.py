from src.config.settings import (
    get_settings,
    resolve_tolerance,
    resolve_rank_tolerance
)
