import numpy as np
import pytest

from qcvol.config import SamplingConfig, ValidationConfig
from qcvol.models import Complex, GeneralChannelParams, UnitalChannelParams
from qcvol.rng import RngStream
from qcvol.services.implementations import (
    DefaultMonteCarloService,
    RejectionGeneralSampler,
    RejectionUnitalSampler,
    SamplerSet,
    SequentialGeneralSampler,
    SequentialUnitalSampler,
)

TEST_SEED = 20240917


@pytest.fixture(scope="session")
def sampling_config() -> SamplingConfig:
    return SamplingConfig(batch_size=131_072)


@pytest.fixture(scope="session")
def validation_config() -> ValidationConfig:
    return ValidationConfig()


@pytest.fixture(scope="session")
def sampler_set(sampling_config) -> SamplerSet:
    return SamplerSet(
        sampling_config,
        RejectionGeneralSampler(sampling_config),
        RejectionUnitalSampler(sampling_config),
        SequentialGeneralSampler(sampling_config),
        SequentialUnitalSampler(sampling_config),
    )


@pytest.fixture
def monte_carlo_service(sampler_set, validation_config) -> DefaultMonteCarloService:
    return DefaultMonteCarloService(sampler_set, validation_config)


@pytest.fixture
def rng() -> RngStream:
    return RngStream(TEST_SEED)


@pytest.fixture
def generator() -> np.random.Generator:
    return np.random.default_rng(TEST_SEED)


@pytest.fixture
def depolarizing_channel() -> GeneralChannelParams:
    return GeneralChannelParams(a=0.5, f=0.5)


@pytest.fixture
def amplitude_damping_channel() -> GeneralChannelParams:
    # decay 0.3: |1> -> |0> with probability 0.3
    gamma = 0.3
    return GeneralChannelParams(a=1.0, f=gamma, d=Complex(re=np.sqrt(1 - gamma)))


@pytest.fixture
def interior_unital_channel() -> UnitalChannelParams:
    return UnitalChannelParams(
        a=0.4, b=Complex(re=0.05, im=-0.02), c=Complex(re=0.01, im=0.03), d=Complex(re=0.1)
    )
