import numpy as np

from app.errors import UniSplitError
from app.udmm.schemas import UDMM
from app.uutest.umm import umm_cdf, umm_pdf, umm_sample


def _as_output(result: np.ndarray, x):
    return float(result) if np.ndim(x) == 0 else result


def udmm_pdf(m: UDMM, x):
    x = np.asarray(x, dtype=np.float64)
    total = np.zeros_like(x)
    for weight, component in zip(m.weights, m.components):
        total = total + weight * umm_pdf(component, x)
    return _as_output(total, x)


def udmm_cdf(m: UDMM, x):
    x = np.asarray(x, dtype=np.float64)
    total = np.zeros_like(x)
    for weight, component in zip(m.weights, m.components):
        total = total + weight * umm_cdf(component, x)
    return _as_output(np.minimum(total, 1.0), x)


def udmm_sample(m: UDMM, count: int, seed: int | np.random.Generator | None = None) -> np.ndarray:
    """
    Генерирует выборку из модели.

    Сначала выбирается компонента j с вероятностью w_j, затем отрезок внутри
    неё и равномерная точка на нём.

    :param m: модель.
    :param count: размер выборки, >= 1.
    :param seed: зерно или готовый генератор numpy.
    :return: массив из count значений в порядке генерации.
    """
    if count < 1:
        raise UniSplitError("count must be positive")
    rng = np.random.default_rng(seed)
    weights = np.asarray(m.weights)
    chosen = rng.choice(m.k, size=count, p=weights / weights.sum())
    out = np.empty(count, dtype=np.float64)
    for j, component in enumerate(m.components):
        mask = chosen == j
        if mask.any():
            out[mask] = umm_sample(component, int(mask.sum()), rng)
    return out


def log_likelihood(m: UDMM, raw) -> float:
    """Сумма log p(x); -inf, если какая-то точка вне носителя модели."""
    with np.errstate(divide="ignore"):
        return float(np.sum(np.log(udmm_pdf(m, np.asarray(raw, dtype=np.float64)))))
