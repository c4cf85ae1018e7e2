import math
from enum import Enum

from pydantic import BaseModel, Field, field_validator

from app.udmm.schemas import UDMM


class NBMode(str, Enum):
    UDMM = "udmm"
    GAUSSIAN = "gaussian"


class GaussianDensity(BaseModel):
    mean: float
    std: float = Field(gt=0)


class NBModel(BaseModel):
    """
    Наивный байесовский классификатор.

    densities[c][f] - плотность признака f внутри класса classes[c].
    """

    mode: NBMode
    classes: list[int]
    priors: list[float]
    densities: list[list[UDMM | GaussianDensity]]

    @field_validator("priors")
    @classmethod
    def check_priors(cls, priors: list[float]) -> list[float]:
        if abs(math.fsum(priors) - 1.0) > 1e-9:
            raise ValueError("class priors must sum to 1")
        return priors

    @property
    def n_features(self) -> int:
        return len(self.densities[0])


class KFoldResult(BaseModel):
    mean: float
    std: float
    fold_accuracies: list[float]
