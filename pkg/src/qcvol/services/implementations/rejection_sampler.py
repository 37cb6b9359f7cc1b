import logging
import math
from abc import abstractmethod

import numpy as np

from qcvol.choi import (
    GENERAL_PERMUTATION,
    UNITAL_PERMUTATION,
    choi_general_batch,
    choi_unital_batch,
    leading_minors_batch,
    permute_batch,
)
from qcvol.config import SamplingConfig
from qcvol.models import ChannelKind
from qcvol.rng import RngStream
from qcvol.services.abstractions import RejectionSampler
from qcvol.utils.ellipsoid import sample_disk
from qcvol.utils.mapping import join_general_rows, join_unital_rows


def _strictly_positive(q: np.ndarray, permutation: tuple[int, ...]) -> np.ndarray:
    if q.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    return np.all(leading_minors_batch(permute_batch(q, permutation)) > 0.0, axis=1)


class _BoxSampler(RejectionSampler):
    def __init__(self, sampling_config: SamplingConfig) -> None:
        self._batch_size = sampling_config.batch_size
        self._logger = logging.getLogger(__name__)

    @abstractmethod
    def _propose(self, generator: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Proposal rows and the mask of rows with a positive definite Choi matrix."""
        raise NotImplementedError

    def count_accepted(self, rng: RngStream, n_trials: int) -> int:
        accepted = 0
        remaining = n_trials
        while remaining > 0:
            size = min(remaining, self._batch_size)
            _, mask = self._propose(rng.generator, size)
            accepted += int(np.count_nonzero(mask))
            remaining -= size

        self._logger.debug("%s of %s %s proposals accepted", accepted, n_trials, self.kind.value)
        return accepted

    def sample_batch(self, rng: RngStream, n: int) -> np.ndarray:
        chunks = []
        collected = 0
        trials = 0
        while collected < n:
            rows, mask = self._propose(rng.generator, self._batch_size)
            chunks.append(rows[mask])
            collected += int(np.count_nonzero(mask))
            trials += self._batch_size

        self._logger.debug("drew %s %s channels in %s proposals", n, self.kind.value, trials)
        return np.concatenate(chunks)[:n]


class RejectionGeneralSampler(_BoxSampler):
    """a, f uniform; b, c, g on disks of radius 1/2; d, e on disks of radius 1."""

    kind = ChannelKind.general
    BOX_LAMBDA_VOLUME = (math.pi / 4) ** 3 * math.pi**2

    @property
    def box_lambda_volume(self) -> float:
        return self.BOX_LAMBDA_VOLUME

    def _propose(self, generator: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
        a = generator.random(n)
        f = generator.random(n)
        b = sample_disk(generator, 0.5, n)
        c = sample_disk(generator, 0.5, n)
        d = sample_disk(generator, 1.0, n)
        e = sample_disk(generator, 1.0, n)
        g = sample_disk(generator, 0.5, n)
        rows = join_general_rows(a, f, b, c, d, e, g)

        a2, f2 = 1.0 - a, 1.0 - f
        # principal 2x2 minors of the Choi matrix; necessary for positivity
        mask = (
            (np.abs(b) ** 2 < a * a2)
            & (np.abs(c) ** 2 < a * f)
            & (np.abs(c) ** 2 < a2 * f2)
            & (np.abs(d) ** 2 < a * f2)
            & (np.abs(e) ** 2 < a2 * f)
            & (np.abs(g) ** 2 < f * f2)
        )
        candidates = np.flatnonzero(mask)
        mask[candidates] = _strictly_positive(
            choi_general_batch(rows[candidates]), GENERAL_PERMUTATION
        )
        return rows, mask


class RejectionUnitalSampler(_BoxSampler):
    """a uniform; b, c on disks of radius 1/2; d, e on disks of radius 1."""

    kind = ChannelKind.unital
    BOX_LAMBDA_VOLUME = (math.pi / 4) ** 2 * math.pi**2

    @property
    def box_lambda_volume(self) -> float:
        return self.BOX_LAMBDA_VOLUME

    def _propose(self, generator: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
        a = generator.random(n)
        b = sample_disk(generator, 0.5, n)
        c = sample_disk(generator, 0.5, n)
        d = sample_disk(generator, 1.0, n)
        e = sample_disk(generator, 1.0, n)
        rows = join_unital_rows(a, b, c, d, e)

        a2 = 1.0 - a
        mask = (
            (np.abs(b) ** 2 < a * a2)
            & (np.abs(c) ** 2 < a * a2)
            & (np.abs(d) < a)
            & (np.abs(e) < a2)
        )
        candidates = np.flatnonzero(mask)
        mask[candidates] = _strictly_positive(
            choi_unital_batch(rows[candidates]), UNITAL_PERMUTATION
        )
        return rows, mask
