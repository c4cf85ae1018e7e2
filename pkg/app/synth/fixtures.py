import numpy as np

from app.synth.generators import sample_mixture
from app.synth.schemas import Normal


TRIMODAL_MEANS = (0.0, 8.0, 16.0)


def rectangles(seed: int | None = None, sizes: tuple[int, int, int] = (133, 134, 133)):
    """
    Три прямоугольника на плоскости: крайние - класс 0, средний - класс 1.

    x: U(0, 1.9), U(2, 4), U(4.1, 6); y: U(0, 1) у всех.
    Класс 0 по x двухмодален, поэтому гауссов NB ошибается в середине.

    :return: матрица признаков (n, 2) и метки классов.
    """
    rng = np.random.default_rng(seed)
    bounds = ((0.0, 1.9, 0), (2.0, 4.0, 1), (4.1, 6.0, 0))
    features, labels = [], []
    for (lo, hi, label), size in zip(bounds, sizes):
        x = rng.uniform(lo, hi, size)
        y = rng.uniform(0.0, 1.0, size)
        features.append(np.column_stack([x, y]))
        labels.append(np.full(size, label, dtype=np.int64))
    return np.vstack(features), np.concatenate(labels)


def trimodal(seed: int | None = None, n_per_mode: int = 500) -> tuple[np.ndarray, np.ndarray]:
    """Три хорошо разделённые гауссовы моды с центрами TRIMODAL_MEANS."""
    specs = [Normal(mu=mu, sigma=1.0, n=n_per_mode) for mu in TRIMODAL_MEANS]
    return sample_mixture(specs, seed)


def add_valley_noise(values: np.ndarray, fraction: float, seed: int | None = None) -> np.ndarray:
    """
    Добавляет fraction * N равномерных точек в долины между модами trimodal().

    Долина между центрами mu_i и mu_{i+1} - отрезок [mu_i + 2.5, mu_{i+1} - 2.5].
    """
    rng = np.random.default_rng(seed)
    count = int(round(fraction * values.size))
    gaps = [(lo + 2.5, hi - 2.5) for lo, hi in zip(TRIMODAL_MEANS, TRIMODAL_MEANS[1:])]
    which = rng.integers(len(gaps), size=count)
    lows = np.array([g[0] for g in gaps])[which]
    highs = np.array([g[1] for g in gaps])[which]
    return np.concatenate([values, rng.uniform(lows, highs)])


def add_tail_outliers(values: np.ndarray, fraction: float, seed: int | None = None) -> np.ndarray:
    """Добавляет fraction * N выбросов Стьюдента (nu=1) левее первой моды."""
    rng = np.random.default_rng(seed)
    count = int(round(fraction * values.size))
    outliers = TRIMODAL_MEANS[0] - 4.0 - np.abs(rng.standard_t(1.0, count))
    return np.concatenate([values, outliers])
