import logging
import math

import numpy as np
from scipy.special import kolmogorov

from app.data.schemas import Dataset
from app.errors import EmptyIntervalError, UniSplitError
from app.stats.schemas import KsNull, KsResult


logger = logging.getLogger(__name__)

_SERIES_K = np.arange(1, 101, dtype=np.float64)


def uniformity_statistic(d: Dataset, start: int, stop: int, a: float, b: float) -> tuple[float, int]:
    """
    Статистика Колмогорова-Смирнова среза values[start:stop] против U[a, b].

    Вес повторов учитывается через кумулятивные суммы; супремум берётся
    по обеим сторонам каждого скачка ecdf.
    """
    x = d.values[start:stop]
    base = d.cumw[start - 1] if start > 0 else 0
    cum = d.cumw[start:stop] - base
    n = int(cum[-1])

    u = (x - a) / (b - a)
    after = cum / n
    before = np.concatenate(([0.0], after[:-1]))
    statistic = max(float(np.max(after - u)), float(np.max(u - before)))
    return min(max(statistic, 0.0), 1.0), n


def kolmogorov_pvalue(statistic: float, n: int) -> float:
    """Асимптотическое p-значение с поправкой Стивенса на конечную выборку."""
    if n <= 2:
        return 1.0
    sqrt_n = math.sqrt(n)
    lam = (sqrt_n + 0.12 + 0.11 / sqrt_n) * statistic
    return float(np.clip(kolmogorov(lam), 0.0, 1.0))


def excursion_pvalue(statistic: float, n: int) -> float:
    """
    P(max экскурсии > lambda) = 2 * sum_k (4k^2 lambda^2 - 1) exp(-2k^2 lambda^2).

    Тот же ряд, что у критерия Купера, с его поправкой на конечную выборку.
    """
    if n <= 2:
        return 1.0
    sqrt_n = math.sqrt(n)
    lam = (sqrt_n + 0.155 + 0.24 / sqrt_n) * statistic
    if lam < 0.4:
        return 1.0
    t = (_SERIES_K * lam) ** 2
    series = 2.0 * float(np.sum((4.0 * t - 1.0) * np.exp(-2.0 * t)))
    return float(np.clip(series, 0.0, 1.0))


_PVALUE = {KsNull.BRIDGE: kolmogorov_pvalue, KsNull.EXCURSION: excursion_pvalue}


def ks_uniformity(
    d: Dataset, a: float, b: float, alpha: float, null: KsNull = KsNull.BRIDGE
) -> tuple[bool, KsResult]:
    """
    Проверяет, согласуется ли подвыборка X(a, b) с равномерным распределением на [a, b].

    :param d: выборка.
    :param a: левая граница отрезка.
    :param b: правая граница отрезка, b > a.
    :param alpha: уровень значимости.
    :param null: закон статистики при нулевой гипотезе; для пары соседних
        вершин gcm или lcm - KsNull.EXCURSION.
    :return: (is_uniform, KsResult); is_uniform = p_value > alpha.
    :raises EmptyIntervalError: в [a, b] нет точек выборки.
    """
    if not a < b:
        raise UniSplitError(f"interval [{a}, {b}] must satisfy a < b")
    start, stop = d.index_range(a, b)
    if stop == start:
        raise EmptyIntervalError()

    statistic, n = uniformity_statistic(d, start, stop, a, b)
    p_value = _PVALUE[null](statistic, n)
    return p_value > alpha, KsResult(statistic=statistic, p_value=p_value, n_effective=n)


def ks_two_sample(a: Dataset, b: Dataset) -> float:
    """Точное sup-расстояние между двумя взвешенными ecdf."""
    pooled = np.union1d(a.values, b.values)
    return float(np.max(np.abs(a.ecdf(pooled) - b.ecdf(pooled))))
