from .bloch import BlochVector, ClassicalChannel
from .channel import Complex, GeneralChannelParams, UnitalChannelParams
from .curve import DensityCurve
from .kind import ChannelKind
from .results import DynamicsStep, KsResult, VolumeEstimate
from .run import Command, OutputFormat, RunConfig, SamplingMethod

__all__ = (
    "BlochVector",
    "ClassicalChannel",
    "Complex",
    "GeneralChannelParams",
    "UnitalChannelParams",
    "DensityCurve",
    "ChannelKind",
    "DynamicsStep",
    "KsResult",
    "VolumeEstimate",
    "Command",
    "OutputFormat",
    "RunConfig",
    "SamplingMethod",
)
