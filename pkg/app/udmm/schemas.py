import math

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from app.config.settings import settings
from app.uutest.schemas import UMM


class UDMM(BaseModel):
    """
    Иерархическая смесь: K унимодальных компонент (каждая - UMM),
    разделённых K-1 точками долин.
    """

    model_config = ConfigDict(frozen=True)

    weights: list[float]
    valley_points: list[float]
    components: list[UMM]

    @field_validator("weights")
    @classmethod
    def check_weights(cls, weights: list[float]) -> list[float]:
        if not weights:
            raise ValueError("at least one component weight is required")
        if any(w <= 0 for w in weights):
            raise ValueError("component weights must be positive")
        if abs(math.fsum(weights) - 1.0) > settings.WEIGHT_TOLERANCE:
            raise ValueError(f"component weights must sum to 1, got {math.fsum(weights)}")
        return weights

    @field_validator("valley_points")
    @classmethod
    def check_valley_points(cls, valley_points: list[float]) -> list[float]:
        if any(b <= a for a, b in zip(valley_points, valley_points[1:])):
            raise ValueError("valley points must be strictly increasing")
        return valley_points

    @model_validator(mode="after")
    def check_components(self) -> "UDMM":
        if len(self.components) != len(self.weights):
            raise ValueError("one weight per component is required")
        if len(self.valley_points) != len(self.components) - 1:
            raise ValueError("K components need K-1 valley points")
        for left, right in zip(self.components, self.components[1:]):
            if left.breakpoints[-1] > right.breakpoints[0]:
                raise ValueError("component supports must be ordered and non-overlapping")
        return self

    @property
    def k(self) -> int:
        return len(self.components)
