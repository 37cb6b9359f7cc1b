from enum import Enum
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

from .kind import ChannelKind


class Command(Enum):
    volume = "volume"
    sample = "sample"
    push = "push"
    density = "density"
    invariance = "invariance"
    iterate = "iterate"


class OutputFormat(Enum):
    csv = "csv"
    json = "json"


class SamplingMethod(Enum):
    sequential = "sequential"
    rejection = "rejection"


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    command: Command
    kind: ChannelKind = ChannelKind.general
    n: int = Field(default=10_000, ge=1)
    seed: int = Field(ge=0, lt=2**64)
    r0: float = Field(default=0.0, ge=0.0, le=1.0)
    bins: int = Field(default=50, ge=2)
    grid: int = Field(default=101, ge=2)
    steps: int = Field(default=20, ge=1)
    workers: int = Field(default=1, ge=1)
    rotations: int = Field(default=20, ge=1)
    which: str = "eta"
    distortion: float | None = Field(default=None, gt=0.0)
    method: SamplingMethod | None = None
    output_format: OutputFormat = OutputFormat.csv
    output_path: Path | None = None
    argv: list[str] = []
