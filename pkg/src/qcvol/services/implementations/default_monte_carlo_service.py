import asyncio
import logging
import math
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from qcvol.config import ValidationConfig
from qcvol.errors import DomainError
from qcvol.models import ChannelKind, DynamicsStep, KsResult, SamplingMethod, VolumeEstimate
from qcvol.rng import RngStream
from qcvol.services.abstractions import ChannelSampler, MonteCarloService, RejectionSampler
from qcvol.stats import EmpiricalDistribution, ks_two_sample
from qcvol.stokes import Rotation3, affine_batch, rotate_post_batch, rotate_pre_batch
from qcvol.utils.mapping import embed_unital_rows

from .sampler_set import SamplerSet

CHANNEL_MEASURE_FACTOR = 2**7


def as_general_rows(kind: ChannelKind, rows: np.ndarray) -> np.ndarray:
    if kind is ChannelKind.unital:
        return embed_unital_rows(rows)
    return rows


def image_radii(kind: ChannelKind, rows: np.ndarray, r0: float) -> np.ndarray:
    """Bloch radii of the images of (0, 0, r0)."""
    v, t = affine_batch(as_general_rows(kind, rows))
    return np.linalg.norm(v + r0 * t[:, :, 2], axis=1)


def chunk_sizes(n: int, workers: int) -> list[int]:
    base = n // workers
    return [base + (1 if i < n % workers else 0) for i in range(workers)]


# module level so the process pool can pickle them
def _count_chunk(sampler: RejectionSampler, rng: RngStream, n: int) -> int:
    return sampler.count_accepted(rng, n)


def _sample_chunk(sampler: ChannelSampler, rng: RngStream, n: int) -> np.ndarray:
    return sampler.sample_batch(rng, n)


def _push_chunk(
    sampler: ChannelSampler, rng: RngStream, n: int, r0: float
) -> EmpiricalDistribution:
    return EmpiricalDistribution(image_radii(sampler.kind, sampler.sample_batch(rng, n), r0))


class DefaultMonteCarloService(MonteCarloService):
    def __init__(self, samplers: SamplerSet, validation_config: ValidationConfig) -> None:
        self._samplers = samplers
        self._validation_config = validation_config
        self._logger = logging.getLogger(__name__)

    async def _run_chunks(
        self, fn: Callable, sampler: ChannelSampler, rng: RngStream, n: int, workers: int, *args
    ) -> list:
        streams = rng.split(workers)
        sizes = chunk_sizes(n, workers)

        if workers == 1:
            return [fn(sampler, streams[0], sizes[0], *args)]

        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            tasks = [
                loop.run_in_executor(pool, fn, sampler, stream, size, *args)
                for stream, size in zip(streams, sizes)
                if size > 0
            ]
            return list(await asyncio.gather(*tasks))

    async def estimate_volume(
        self, kind: ChannelKind, n: int, rng: RngStream, workers: int = 1
    ) -> VolumeEstimate:
        if n < 1:
            raise DomainError("volume estimate needs at least one trial")

        self._logger.info(
            "estimating %s volume with %s trials on %s workers", kind.value, n, workers
        )

        sampler = self._samplers.rejection(kind)
        accepted = sum(await self._run_chunks(_count_chunk, sampler, rng, n, workers))

        p_hat = accepted / n
        lambda_volume = sampler.box_lambda_volume * p_hat
        value = CHANNEL_MEASURE_FACTOR * lambda_volume
        std_error = value * math.sqrt((1.0 - p_hat) / max(1.0, n * p_hat))

        return VolumeEstimate(
            value=value,
            std_error=std_error,
            n_trials=n,
            n_accepted=accepted,
            lambda_volume=lambda_volume,
        )

    async def sample_channels(
        self,
        kind: ChannelKind,
        n: int,
        rng: RngStream,
        workers: int = 1,
        method: SamplingMethod | None = None,
    ) -> np.ndarray:
        if n < 1:
            raise DomainError("need at least one channel")

        sampler = self._samplers.get(kind, method)
        self._logger.info("sampling %s %s channels with %s", n, kind.value, type(sampler).__name__)
        return np.concatenate(await self._run_chunks(_sample_chunk, sampler, rng, n, workers))

    async def pushforward_radii(
        self,
        kind: ChannelKind,
        r0: float,
        n: int,
        rng: RngStream,
        workers: int = 1,
        method: SamplingMethod | None = None,
    ) -> EmpiricalDistribution:
        if not 0.0 <= r0 <= 1.0:
            raise DomainError("r0 must lie in [0, 1]")
        if n < 1:
            raise DomainError("need at least one channel")

        sampler = self._samplers.get(kind, method)
        self._logger.info("pushing (0, 0, %s) through %s %s channels", r0, n, kind.value)
        parts = await self._run_chunks(_push_chunk, sampler, rng, n, workers, r0)
        return EmpiricalDistribution.merge(parts)

    async def invariance_test(
        self,
        rotation_count: int,
        n: int,
        rng: RngStream,
        distortion: float | None = None,
        workers: int = 1,
        method: SamplingMethod | None = None,
    ) -> list[KsResult]:
        if rotation_count < 1:
            raise DomainError("invariance test needs at least one rotation")

        rows = await self.sample_channels(ChannelKind.general, n, rng.child(0), workers, method)
        r0 = self._validation_config.invariance_r0
        scale = 1.0 if distortion is None else distortion
        rotations = rng.child(1).generator

        def z_images(v: np.ndarray, t: np.ndarray, radius: float) -> np.ndarray:
            return v[:, 2] + radius * t[:, 2, 2]

        base_v, base_t = affine_batch(rows)
        base_mixed = z_images(base_v, base_t, 0.0)
        base_pure = z_images(base_v, base_t, r0)

        results = []
        for k in range(rotation_count):
            r = Rotation3.random(rotations).matrix

            v, t = affine_batch(rotate_post_batch(rows, r))
            results.append(
                ks_two_sample(scale * z_images(v, t, 0.0), base_mixed, label=f"post:{k}")
            )

            v, t = affine_batch(rotate_pre_batch(rows, r))
            results.append(ks_two_sample(scale * z_images(v, t, r0), base_pure, label=f"pre:{k}"))

        failures = sum(result.p_value < self._validation_config.p_threshold for result in results)
        self._logger.info("%s of %s invariance p-values below threshold", failures, len(results))
        return results

    async def iterate_dynamics(
        self,
        kind: ChannelKind,
        r0: float,
        steps: int,
        ensemble: int,
        rng: RngStream,
        method: SamplingMethod | None = None,
    ) -> list[DynamicsStep]:
        if steps < 1 or ensemble < 1:
            raise DomainError("steps and ensemble must be positive")
        if not 0.0 <= r0 <= 1.0:
            raise DomainError("r0 must lie in [0, 1]")

        sampler = self._samplers.get(kind, method)
        self._logger.info("iterating %s %s channels for %s steps", ensemble, kind.value, steps)

        x = np.zeros((ensemble, 3))
        x[:, 2] = r0
        trajectory = []
        for step in range(1, steps + 1):
            # step 1 draws from the same stream as a single-worker pushforward
            rows = sampler.sample_batch(rng.child(step - 1), ensemble)
            v, t = affine_batch(as_general_rows(kind, rows))
            x = v + np.einsum("nij,nj->ni", t, x)

            radii = np.linalg.norm(x, axis=1)
            std_error = float(np.std(radii, ddof=1) / math.sqrt(ensemble)) if ensemble > 1 else 0.0
            trajectory.append(
                DynamicsStep(step=step, mean_radius=float(np.mean(radii)), std_error=std_error)
            )
            self._logger.debug("step %s mean radius %s", step, trajectory[-1].mean_radius)

        return trajectory
