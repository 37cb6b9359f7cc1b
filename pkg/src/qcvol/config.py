import tomllib

from pydantic import BaseModel, Field

from qcvol.models import OutputFormat, SamplingMethod
from qcvol.rng import DEFAULT_SEED


class RunDefaultsConfig(BaseModel):
    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2**64)
    workers: int = Field(default=1, ge=1)
    output_format: OutputFormat = OutputFormat.csv


class SamplingConfig(BaseModel):
    # sampler behind push, iterate, invariance and sample
    method: SamplingMethod = SamplingMethod.sequential
    # proposals per vectorized batch
    batch_size: int = Field(default=262_144, ge=1)


class ValidationConfig(BaseModel):
    p_threshold: float = Field(default=0.01, gt=0.0, lt=1.0)
    invariance_r0: float = Field(default=0.7, ge=0.0, le=1.0)
    # invariance p-values allowed below the threshold, over all rotations
    max_rotation_failures: int = Field(default=2, ge=0)


class QuadratureConfig(BaseModel):
    epsabs: float = Field(default=1e-12, gt=0.0)
    epsrel: float = Field(default=1e-12, gt=0.0)
    limit: int = Field(default=200, ge=1)


class Config(BaseModel):
    run: RunDefaultsConfig = RunDefaultsConfig()
    sampling: SamplingConfig = SamplingConfig()
    validation: ValidationConfig = ValidationConfig()
    quadrature: QuadratureConfig = QuadratureConfig()


def load_config(path: str | None) -> Config:
    if path is None:
        return Config()

    with open(path, encoding="utf-8") as f:
        config_dict = tomllib.loads(f.read())

    return Config.model_validate(config_dict)
