from typing import ClassVar

from pydantic import BaseModel, ConfigDict, model_validator


class DensityCurve(BaseModel):
    """Analytic curve sampled on a grid; `normalization` is its quadrature integral."""

    model_config = ConfigDict(frozen=True)

    NEGATIVE_TOLERANCE: ClassVar[float] = 1e-12

    name: str
    grid: list[float]
    values: list[float]
    normalization: float

    @model_validator(mode="after")
    def _shape(self) -> "DensityCurve":
        if len(self.grid) != len(self.values):
            raise ValueError("grid and values differ in length")
        if any(right <= left for left, right in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be strictly increasing")
        if any(value < -self.NEGATIVE_TOLERANCE for value in self.values):
            raise ValueError(f"curve {self.name} has negative values")
        return self
