from qcvol.config import SamplingConfig
from qcvol.models import ChannelKind, SamplingMethod
from qcvol.services.abstractions import ChannelSampler, RejectionSampler

from .rejection_sampler import RejectionGeneralSampler, RejectionUnitalSampler
from .sequential_sampler import SequentialGeneralSampler, SequentialUnitalSampler


class SamplerSet:
    """Every sampler of the package, looked up by channel kind and sampling method."""

    def __init__(
        self,
        sampling_config: SamplingConfig,
        rejection_general: RejectionGeneralSampler,
        rejection_unital: RejectionUnitalSampler,
        sequential_general: SequentialGeneralSampler,
        sequential_unital: SequentialUnitalSampler,
    ) -> None:
        self._default_method = sampling_config.method
        self._rejection: dict[ChannelKind, RejectionSampler] = {
            ChannelKind.general: rejection_general,
            ChannelKind.unital: rejection_unital,
        }
        self._sequential: dict[ChannelKind, ChannelSampler] = {
            ChannelKind.general: sequential_general,
            ChannelKind.unital: sequential_unital,
        }

    def rejection(self, kind: ChannelKind) -> RejectionSampler:
        return self._rejection[kind]

    def get(self, kind: ChannelKind, method: SamplingMethod | None = None) -> ChannelSampler:
        if (method or self._default_method) is SamplingMethod.rejection:
            return self._rejection[kind]
        return self._sequential[kind]
