from dishka import Provider, Scope, provide

from qcvol.config import (
    Config,
    QuadratureConfig,
    RunDefaultsConfig,
    SamplingConfig,
    ValidationConfig,
)


class ConfigProvider(Provider):
    def __init__(self, config: Config):
        super().__init__()
        self.config = config

    @provide(scope=Scope.APP)
    def run_config(self) -> RunDefaultsConfig:
        return self.config.run

    @provide(scope=Scope.APP)
    def sampling_config(self) -> SamplingConfig:
        return self.config.sampling

    @provide(scope=Scope.APP)
    def validation_config(self) -> ValidationConfig:
        return self.config.validation

    @provide(scope=Scope.APP)
    def quadrature_config(self) -> QuadratureConfig:
        return self.config.quadrature
