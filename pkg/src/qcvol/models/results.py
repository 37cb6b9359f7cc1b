from pydantic import BaseModel, ConfigDict, Field, model_validator


class VolumeEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float = Field(ge=0.0)
    std_error: float = Field(ge=0.0)
    n_trials: int = Field(ge=1)
    n_accepted: int = Field(ge=0)
    # volume of the accepted region in plain Lebesgue measure, without the 2^7 factor
    lambda_volume: float = Field(ge=0.0)

    @model_validator(mode="after")
    def _counts(self) -> "VolumeEstimate":
        if self.n_accepted > self.n_trials:
            raise ValueError("accepted count exceeds trial count")
        return self

    @property
    def acceptance_rate(self) -> float:
        return self.n_accepted / self.n_trials

    def z_score(self, analytic: float) -> float:
        if self.std_error == 0.0:
            return 0.0 if self.value == analytic else float("inf")
        return (self.value - analytic) / self.std_error


class KsResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    d_statistic: float = Field(ge=0.0, le=1.0)
    p_value: float = Field(ge=0.0, le=1.0)
    n: int = Field(ge=1)
    label: str = ""


class DynamicsStep(BaseModel):
    model_config = ConfigDict(frozen=True)

    step: int = Field(ge=1)
    mean_radius: float
    std_error: float = Field(ge=0.0)
