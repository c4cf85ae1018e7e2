import math

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from app.config.settings import settings
from app.data.schemas import Dataset
from app.hull.schemas import PointKind
from app.stats.schemas import KsResult


class UMM(BaseModel):
    """
    Смесь равномерных распределений на соседних отрезках [s_i, s_{i+1}).

    Модель из одной точки (breakpoints=[v], weights=[]) описывает выборку
    из единственного различного значения.
    """

    model_config = ConfigDict(frozen=True)

    breakpoints: list[float]
    weights: list[float]

    @model_validator(mode="after")
    def check_shape(self) -> "UMM":
        if not self.breakpoints:
            raise ValueError("breakpoints must not be empty")
        if len(self.weights) != len(self.breakpoints) - 1:
            raise ValueError("weights must have one entry per segment")
        if any(not math.isfinite(s) for s in self.breakpoints):
            raise ValueError("breakpoints must be finite")
        if any(b <= a for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative")
        if self.weights and abs(math.fsum(self.weights) - 1.0) > settings.WEIGHT_TOLERANCE:
            raise ValueError(f"weights must sum to 1, got {math.fsum(self.weights)}")
        return self

    @property
    def segments(self) -> int:
        return len(self.weights)

    @property
    def is_point_mass(self) -> bool:
        return not self.weights

    @classmethod
    def point_mass(cls, value: float) -> "UMM":
        return cls(breakpoints=[float(value)], weights=[])

    @classmethod
    def from_knots(cls, d: Dataset, knots) -> "UMM":
        """
        Строит UMM по узлам - значениям выборки, включая x_1 и x_N.

        pi_i = N_i / N, где N_i - число точек в (s_i, s_{i+1}];
        первый отрезок дополнительно забирает массу точки s_1.
        """
        knots = np.asarray(knots, dtype=np.float64)
        if knots.size == 1:
            return cls.point_mass(knots[0])
        cum = d.cumw[np.searchsorted(d.values, knots)]
        counts = np.diff(np.concatenate(([0], cum[1:])))
        return cls(breakpoints=knots.tolist(), weights=(counts / d.total).tolist())


class CandidateInterval(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    kind: PointKind
    ks: KsResult | None = None

    @field_validator("kind")
    @classmethod
    def check_kind(cls, kind: PointKind) -> PointKind:
        if kind == PointKind.BOTH:
            raise ValueError("candidate interval is either a gcm pair or an lcm pair")
        return kind


class UUOutcome(BaseModel):
    unimodal: bool
    model: UMM | None = None
    candidates: list[CandidateInterval] | None = None

    @model_validator(mode="after")
    def check_exclusive(self) -> "UUOutcome":
        if self.unimodal and (self.model is None or self.candidates is not None):
            raise ValueError("unimodal outcome carries a model and no candidates")
        if not self.unimodal and (self.model is not None or not self.candidates):
            raise ValueError("multimodal outcome carries candidates and no model")
        return self
