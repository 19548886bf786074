from .experiment import ExperimentConfig, TradeoffCell

__all__ = [
    "ExperimentConfig",
    "TradeoffCell",
]
