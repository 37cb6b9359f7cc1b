from .default_monte_carlo_service import DefaultMonteCarloService
from .rejection_sampler import RejectionGeneralSampler, RejectionUnitalSampler
from .sampler_set import SamplerSet
from .sequential_sampler import SequentialGeneralSampler, SequentialUnitalSampler

__all__ = (
    "DefaultMonteCarloService",
    "RejectionGeneralSampler",
    "RejectionUnitalSampler",
    "SamplerSet",
    "SequentialGeneralSampler",
    "SequentialUnitalSampler",
)
