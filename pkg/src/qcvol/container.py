from dishka import AsyncContainer, Provider, Scope, make_async_container

from qcvol.config import Config
from qcvol.services.abstractions import MonteCarloService
from qcvol.services.implementations import (
    DefaultMonteCarloService,
    RejectionGeneralSampler,
    RejectionUnitalSampler,
    SamplerSet,
    SequentialGeneralSampler,
    SequentialUnitalSampler,
)
from qcvol.services.implementations.providers import ConfigProvider


def init_dishka_container(config: Config) -> AsyncContainer:
    service_provider = Provider(scope=Scope.APP)

    service_provider.provide(RejectionGeneralSampler)
    service_provider.provide(RejectionUnitalSampler)
    service_provider.provide(SequentialGeneralSampler)
    service_provider.provide(SequentialUnitalSampler)
    service_provider.provide(SamplerSet)
    service_provider.provide(DefaultMonteCarloService, provides=MonteCarloService)

    return make_async_container(service_provider, ConfigProvider(config))
