from dataclasses import dataclass
from functools import cached_property

import numpy as np

from app.errors import EmptyDatasetError, NonFiniteValueError, UniSplitError


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Упорядоченная одномерная выборка: различные значения и их кратности.

    Объект неизменяем, все производные массивы (кумулятивные веса, ecdf)
    вычисляются лениво один раз.
    """

    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64).ravel()
        weights = np.array(self.weights).ravel()

        if values.size == 0:
            raise EmptyDatasetError()
        if values.shape != weights.shape:
            raise UniSplitError("values and weights differ in length")
        if not np.isfinite(values).all():
            raise NonFiniteValueError()
        if np.any(np.diff(values) <= 0):
            raise UniSplitError("values must be strictly increasing")
        if not np.all(np.equal(np.mod(weights, 1), 0)) or np.any(weights < 1):
            raise UniSplitError("weights must be positive integers")

        object.__setattr__(self, "values", _frozen(values))
        object.__setattr__(self, "weights", _frozen(weights.astype(np.int64)))

    @property
    def size(self) -> int:
        """Число различных значений."""
        return int(self.values.size)

    @cached_property
    def cumw(self) -> np.ndarray:
        return _frozen(np.cumsum(self.weights))

    @cached_property
    def total(self) -> int:
        return int(self.cumw[-1])

    @cached_property
    def ecdf(self) -> "Ecdf":
        return Ecdf(dataset=self, cum=self.cumw / self.total)

    @property
    def lo(self) -> float:
        return float(self.values[0])

    @property
    def hi(self) -> float:
        return float(self.values[-1])

    def index_range(self, a: float, b: float) -> tuple[int, int]:
        """Границы среза values, попадающих в замкнутый отрезок [a, b]."""
        start = int(np.searchsorted(self.values, a, side="left"))
        stop = int(np.searchsorted(self.values, b, side="right"))
        return start, max(start, stop)

    def count_in(self, a: float, b: float) -> int:
        start, stop = self.index_range(a, b)
        return stop - start

    def slice(self, start: int, stop: int) -> "Dataset":
        return Dataset(self.values[start:stop], self.weights[start:stop])

    def subset(self, a: float, b: float) -> "Dataset":
        """
        Возвращает X(a, b): все точки выборки из замкнутого отрезка [a, b].

        :raises EmptyDatasetError: если в отрезке нет ни одной точки.
        """
        return self.slice(*self.index_range(a, b))

    def split_at(self, vp: float) -> tuple["Dataset", "Dataset"]:
        """Разбиение по точке долины: X_L = {x <= vp}, X_R = {x > vp}."""
        cut = int(np.searchsorted(self.values, vp, side="right"))
        if cut == 0 or cut == self.size:
            raise UniSplitError(f"split point {vp} outside ({self.lo}, {self.hi})")
        return self.slice(0, cut), self.slice(cut, self.size)

    def concat(self, other: "Dataset") -> "Dataset":
        """Объединение двух соседних подмножеств (other целиком правее self)."""
        return Dataset(
            np.concatenate([self.values, other.values]),
            np.concatenate([self.weights, other.weights]),
        )

    def raw(self) -> np.ndarray:
        """Исходная отсортированная выборка с повторениями."""
        return np.repeat(self.values, self.weights)

    def __len__(self) -> int:
        return self.total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return np.array_equal(self.values, other.values) and np.array_equal(
            self.weights, other.weights
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Dataset(size={self.size}, total={self.total}, range=[{self.lo}, {self.hi}])"


@dataclass(frozen=True, eq=False)
class Ecdf:
    """Правонепрерывная эмпирическая функция распределения выборки."""

    dataset: Dataset
    cum: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "cum", _frozen(np.asarray(self.cum, dtype=np.float64)))

    def __call__(self, x):
        idx = np.searchsorted(self.dataset.values, x, side="right")
        result = np.where(idx == 0, 0.0, self.cum[np.maximum(idx - 1, 0)])
        return float(result) if np.ndim(result) == 0 else result


@dataclass(frozen=True, eq=False)
class PiecewiseLinearCdf:
    knots: np.ndarray
    cdfvals: np.ndarray

    def __post_init__(self):
        knots = np.asarray(self.knots, dtype=np.float64)
        cdfvals = np.asarray(self.cdfvals, dtype=np.float64)
        if knots.size == 0 or knots.shape != cdfvals.shape:
            raise UniSplitError("knots and cdf values must be non-empty and aligned")
        if np.any(np.diff(knots) <= 0):
            raise UniSplitError("knots must be strictly increasing")
        if np.any(np.diff(cdfvals) < 0) or cdfvals[0] <= 0 or cdfvals[-1] != 1.0:
            raise UniSplitError("cdf values must rise from above 0 to exactly 1")
        object.__setattr__(self, "knots", _frozen(knots))
        object.__setattr__(self, "cdfvals", _frozen(cdfvals))

    @classmethod
    def from_knots(cls, e: Ecdf, knots) -> "PiecewiseLinearCdf":
        knots = np.asarray(knots, dtype=np.float64)
        idx = np.searchsorted(e.dataset.values, knots)
        return cls(knots=knots, cdfvals=e.cum[idx])
