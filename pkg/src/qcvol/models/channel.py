import math

from pydantic import BaseModel, ConfigDict, Field, field_validator


class Complex(BaseModel):
    model_config = ConfigDict(frozen=True)

    re: float = 0.0
    im: float = 0.0

    @field_validator("re", "im")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("complex components must be finite")
        return value

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def of(cls, value: complex) -> "Complex":
        return cls(re=value.real, im=value.imag)


ZERO = Complex()


class GeneralChannelParams(BaseModel):
    """Real coordinates of a general qubit channel's Choi matrix.

    a and f are the diagonal entries (1,1) and (3,3); a2 = 1 - a, f2 = 1 - f.
    """

    model_config = ConfigDict(frozen=True)

    a: float = Field(ge=0.0, le=1.0)
    f: float = Field(ge=0.0, le=1.0)
    b: Complex = ZERO
    c: Complex = ZERO
    d: Complex = ZERO
    e: Complex = ZERO
    g: Complex = ZERO


class UnitalChannelParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: float = Field(ge=0.0, le=1.0)
    b: Complex = ZERO
    c: Complex = ZERO
    d: Complex = ZERO
    e: Complex = ZERO
