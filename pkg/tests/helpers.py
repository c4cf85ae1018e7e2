import numpy as np
from scipy.stats import norm


def uniform_blocks(*blocks: tuple[float, float, int]) -> tuple[np.ndarray, np.ndarray]:
    """Равномерные моды без шума: n точек сетки на [a, b] для каждого блока; метка - номер блока."""
    values = np.concatenate([np.linspace(a, b, n) for a, b, n in blocks])
    labels = np.concatenate([np.full(n, i) for i, (_, _, n) in enumerate(blocks)])
    return values, labels


def gaussian_quantiles(n: int, mu: float = 0.0, sigma: float = 1.0) -> np.ndarray:
    """Квантили N(mu, sigma) в точках (i + 1/2) / n - гауссова выборка без шума."""
    return mu + sigma * norm.ppf((np.arange(n) + 0.5) / n)
