from abc import ABC, abstractmethod

import numpy as np

from qcvol.models import ChannelKind, DynamicsStep, KsResult, SamplingMethod, VolumeEstimate
from qcvol.rng import RngStream
from qcvol.stats import EmpiricalDistribution


class MonteCarloService(ABC):
    """Estimators over uniformly random channels.

    `method` picks the sampler and falls back to the configured one when omitted.
    Results depend only on the stream and the worker count.
    """

    @abstractmethod
    async def estimate_volume(
        self, kind: ChannelKind, n: int, rng: RngStream, workers: int = 1
    ) -> VolumeEstimate:
        raise NotImplementedError

    @abstractmethod
    async def sample_channels(
        self,
        kind: ChannelKind,
        n: int,
        rng: RngStream,
        workers: int = 1,
        method: SamplingMethod | None = None,
    ) -> np.ndarray:
        raise NotImplementedError

    @abstractmethod
    async def pushforward_radii(
        self,
        kind: ChannelKind,
        r0: float,
        n: int,
        rng: RngStream,
        workers: int = 1,
        method: SamplingMethod | None = None,
    ) -> EmpiricalDistribution:
        raise NotImplementedError

    @abstractmethod
    async def invariance_test(
        self,
        rotation_count: int,
        n: int,
        rng: RngStream,
        distortion: float | None = None,
        workers: int = 1,
        method: SamplingMethod | None = None,
    ) -> list[KsResult]:
        raise NotImplementedError

    @abstractmethod
    async def iterate_dynamics(
        self,
        kind: ChannelKind,
        r0: float,
        steps: int,
        ensemble: int,
        rng: RngStream,
        method: SamplingMethod | None = None,
    ) -> list[DynamicsStep]:
        raise NotImplementedError
