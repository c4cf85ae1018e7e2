import numpy as np

from app.uutest.schemas import UMM


def _scalar_or_array(result: np.ndarray):
    return float(result) if np.ndim(result) == 0 else result


def segment_densities(m: UMM) -> np.ndarray:
    if m.is_point_mass:
        return np.empty(0)
    return np.asarray(m.weights) / np.diff(m.breakpoints)


def umm_pdf(m: UMM, x):
    """
    Плотность UMM: pi_i / (s_{i+1} - s_i) на [s_i, s_{i+1}), 0 вне носителя.

    Последний отрезок замкнут справа, чтобы максимум обучающей выборки
    имел положительную плотность.
    """
    x = np.asarray(x, dtype=np.float64)
    if m.is_point_mass:
        return _scalar_or_array(np.zeros_like(x))

    breakpoints = np.asarray(m.breakpoints)
    densities = segment_densities(m)
    last = densities.size - 1
    seg = np.searchsorted(breakpoints, x, side="right") - 1
    seg = np.where(x == breakpoints[-1], last, seg)
    inside = (seg >= 0) & (seg <= last)
    return _scalar_or_array(np.where(inside, densities[np.clip(seg, 0, last)], 0.0))


def umm_cdf(m: UMM, x):
    """Линейная интерполяция накопленных весов; 0 левее s_1, 1 начиная с s_{M+1}."""
    x = np.asarray(x, dtype=np.float64)
    breakpoints = np.asarray(m.breakpoints)
    if m.is_point_mass:
        return _scalar_or_array((x >= breakpoints[0]).astype(np.float64))

    cum = np.concatenate(([0.0], np.cumsum(m.weights)))
    cum[-1] = 1.0
    return _scalar_or_array(np.interp(x, breakpoints, cum, left=0.0, right=1.0))


def umm_sample(m: UMM, count: int, rng: np.random.Generator) -> np.ndarray:
    """Выбор отрезка с вероятностью pi_i, затем равномерная точка на [s_i, s_{i+1})."""
    if m.is_point_mass:
        return np.full(count, m.breakpoints[0])
    breakpoints = np.asarray(m.breakpoints)
    probs = np.asarray(m.weights)
    seg = rng.choice(probs.size, size=count, p=probs / probs.sum())
    return rng.uniform(breakpoints[seg], breakpoints[seg + 1])
