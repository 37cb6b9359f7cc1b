import math
from typing import ClassVar

from pydantic import BaseModel, ConfigDict, model_validator


class BlochVector(BaseModel):
    model_config = ConfigDict(frozen=True)

    BALL_TOLERANCE: ClassVar[float] = 1e-12

    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @model_validator(mode="after")
    def _inside_ball(self) -> "BlochVector":
        if self.norm() > math.sqrt(1.0 + self.BALL_TOLERANCE):
            raise ValueError(f"bloch vector {self.as_tuple()} lies outside the unit ball")
        return self

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


class ClassicalChannel(BaseModel):
    """Row-stochastic 2x2 matrix obtained by restricting a channel to diagonal states."""

    model_config = ConfigDict(frozen=True)

    ROW_TOLERANCE: ClassVar[float] = 1e-12

    a_row: tuple[float, float]
    f_row: tuple[float, float]

    @model_validator(mode="after")
    def _stochastic(self) -> "ClassicalChannel":
        for row in (self.a_row, self.f_row):
            if min(row) < -self.ROW_TOLERANCE or abs(sum(row) - 1.0) > self.ROW_TOLERANCE:
                raise ValueError(f"row {row} is not a probability vector")
        return self

    def is_bistochastic(self) -> bool:
        return abs(self.a_row[0] + self.f_row[0] - 1.0) <= self.ROW_TOLERANCE

    def apply(self, p0: float, p1: float) -> tuple[float, float]:
        # input distribution (p0, p1) over the diagonal states |0><0|, |1><1|
        return (
            p0 * self.a_row[0] + p1 * self.f_row[0],
            p0 * self.a_row[1] + p1 * self.f_row[1],
        )
