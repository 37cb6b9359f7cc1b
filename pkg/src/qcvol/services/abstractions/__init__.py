from .channel_sampler import ChannelSampler, RejectionSampler
from .monte_carlo_service import MonteCarloService

__all__ = (
    "ChannelSampler",
    "RejectionSampler",
    "MonteCarloService",
)
