import numpy as np
from sklearn.isotonic import isotonic_regression

from app.data.schemas import Ecdf
from app.errors import DegenerateIntervalError
from app.hull.schemas import CriticalPoint, GLSet, PointKind


# относительный порог излома: более мелкие скачки наклона - шум округления на хорде
_TURN_TOLERANCE = 1e-10


def hull_indices(x: np.ndarray, y: np.ndarray, convex: bool = True) -> np.ndarray:
    """
    Индексы вершин нижней (convex=True) или верхней оболочки точек (x_i, y_i)
    при строго возрастающих x.

    Наклоны оболочки - изотонная регрессия наклонов хорд между соседними
    точками с весами x_{i+1} - x_i (pool adjacent violators, один проход по
    отсортированным точкам). Вершины стоят там, где наклон оболочки меняется;
    точки, лежащие на хорде, в оболочку не попадают.
    """
    n = x.size
    if n < 2:
        raise DegenerateIntervalError()
    dx = np.diff(x)
    slopes = np.diff(y) / dx
    fitted = isotonic_regression(slopes, sample_weight=dx, increasing=convex)

    steps = np.diff(fitted) if convex else -np.diff(fitted)
    scale = np.abs(fitted[:-1]) + np.abs(fitted[1:])
    turns = np.flatnonzero(steps > _TURN_TOLERANCE * scale) + 1
    return np.concatenate(([0], turns, [n - 1]))


def _hull_range(e: Ecdf, lo: float, hi: float) -> tuple[int, np.ndarray, np.ndarray]:
    start, stop = e.dataset.index_range(lo, hi)
    if stop - start < 2:
        raise DegenerateIntervalError()
    return start, e.dataset.values[start:stop], e.cum[start:stop]


def gcm_points(e: Ecdf, lo: float, hi: float) -> np.ndarray:
    """
    Вершины наибольшей выпуклой миноранты ecdf на [lo, hi].

    :return: возрастающий массив x, включающий оба конца отрезка.
    :raises DegenerateIntervalError: в отрезке меньше двух точек.
    """
    _, x, f = _hull_range(e, lo, hi)
    return x[hull_indices(x, f, convex=True)]


def lcm_points(e: Ecdf, lo: float, hi: float) -> np.ndarray:
    """Вершины наименьшей вогнутой мажоранты ecdf на [lo, hi]."""
    _, x, f = _hull_range(e, lo, hi)
    return x[hull_indices(x, f, convex=False)]


def gl_set(e: Ecdf) -> GLSet:
    """Объединение точек gcm и lcm по всему носителю с пометкой типа."""
    values = e.dataset.values
    gcm = gcm_points(e, values[0], values[-1])
    lcm = lcm_points(e, values[0], values[-1])

    merged = np.union1d(gcm, lcm)
    in_gcm = np.isin(merged, gcm)
    in_lcm = np.isin(merged, lcm)
    fs = e(merged)
    points = tuple(
        CriticalPoint(
            x=float(x),
            f=float(f),
            kind=PointKind.BOTH if g and l else (PointKind.GCM if g else PointKind.LCM),
        )
        for x, f, g, l in zip(merged, fs, in_gcm, in_lcm)
    )
    return GLSet(points=points, gcm=gcm, lcm=lcm)
