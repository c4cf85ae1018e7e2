import numpy as np

from app.data.schemas import Dataset, Ecdf, PiecewiseLinearCdf
from app.errors import EmptyDatasetError, NonFiniteValueError, UniSplitError


def make_dataset(raw) -> Dataset:
    """
    Строит Dataset из сырой выборки: сортировка и схлопывание повторов в веса.

    :param raw: последовательность вещественных чисел.
    :return: Dataset с total == len(raw).
    :raises EmptyDatasetError: пустой вход.
    :raises NonFiniteValueError: во входе есть nan или inf.
    """
    array = np.asarray(raw, dtype=np.float64).ravel()
    if array.size == 0:
        raise EmptyDatasetError()
    if not np.isfinite(array).all():
        raise NonFiniteValueError()
    values, counts = np.unique(array, return_counts=True)
    return Dataset(values=values, weights=counts)


def ecdf_eval(e: Ecdf, x):
    return e(x)


def pl_eval(pl: PiecewiseLinearCdf, x):
    """Кусочно-линейная cdf: 0 левее первого узла, 1 начиная с последнего."""
    result = np.interp(x, pl.knots, pl.cdfvals, left=0.0, right=1.0)
    return float(result) if np.ndim(result) == 0 else result


def spread_ties(d: Dataset, resolution: float) -> Dataset:
    """
    Детерминированно раскладывает повторы квантованных данных по ячейке квантования.

    w копий значения v ставятся в центры w равных подъячеек отрезка
    [v - resolution/2, v + resolution/2). Гистограмма с шагом resolution
    не меняется, а выборка перестаёт содержать повторы.
    """
    if resolution <= 0:
        raise UniSplitError("resolution must be positive")
    if np.any(np.diff(d.values) < resolution):
        raise UniSplitError(f"values are closer than the resolution {resolution}")

    starts = np.repeat(d.cumw - d.weights, d.weights)
    offsets = np.arange(d.total) - starts
    centers = np.repeat(d.values, d.weights)
    counts = np.repeat(d.weights, d.weights)
    spread = centers - resolution / 2 + (offsets + 0.5) * resolution / counts
    return make_dataset(spread)
