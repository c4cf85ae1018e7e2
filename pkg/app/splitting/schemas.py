from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.data.schemas import Dataset
from app.uutest.schemas import CandidateInterval


class MDPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: float
    deviation: float = Field(ge=0, le=1)


class ValleySearch(BaseModel):
    """Точка долины и интервал-кандидат, на котором остановился спуск; depth - число спусков."""

    model_config = ConfigDict(frozen=True)

    vp: float
    depth: int = Field(ge=0)
    interval: CandidateInterval


@dataclass(frozen=True, eq=False)
class SplitResult:
    """
    Минимальное унимодальное разбиение выборки.

    labels - номер подмножества для каждой точки исходной выборки
    в порядке возрастания значений.
    """

    valley_points: np.ndarray
    subsets: tuple[Dataset, ...]
    labels: np.ndarray

    @property
    def k(self) -> int:
        return len(self.subsets)

    def assign(self, raw) -> np.ndarray:
        """Номер подмножества для произвольных точек: x <= vp уходит влево."""
        return np.searchsorted(self.valley_points, np.asarray(raw, dtype=np.float64), side="left")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SplitResult):
            return NotImplemented
        return (
            np.array_equal(self.valley_points, other.valley_points)
            and self.subsets == other.subsets
            and np.array_equal(self.labels, other.labels)
        )

    __hash__ = None
