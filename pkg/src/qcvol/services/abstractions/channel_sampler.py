from abc import ABC, abstractmethod

import numpy as np

from qcvol.models import ChannelKind, GeneralChannelParams, UnitalChannelParams
from qcvol.rng import RngStream
from qcvol.utils.mapping import row_to_general_params, row_to_unital_params


class ChannelSampler(ABC):
    """Draws channels uniformly in the channel measure.

    Batches are row arrays: (n, 12) for general channels, (n, 9) for unital ones.
    """

    kind: ChannelKind

    @abstractmethod
    def sample_batch(self, rng: RngStream, n: int) -> np.ndarray:
        raise NotImplementedError

    def sample(self, rng: RngStream) -> GeneralChannelParams | UnitalChannelParams:
        row = self.sample_batch(rng, 1)[0]
        if self.kind is ChannelKind.unital:
            return row_to_unital_params(row)
        return row_to_general_params(row)


class RejectionSampler(ChannelSampler):
    """Sampler built on a bounding box; also counts acceptances for volume estimates."""

    @property
    @abstractmethod
    def box_lambda_volume(self) -> float:
        raise NotImplementedError

    @abstractmethod
    def count_accepted(self, rng: RngStream, n_trials: int) -> int:
        raise NotImplementedError
