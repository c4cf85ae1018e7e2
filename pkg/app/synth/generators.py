import logging

import numpy as np
from pydantic import TypeAdapter, ValidationError

from app.config.settings import settings
from app.errors import InvalidSpecError, UnknownDistributionError
from app.synth.schemas import (
    Cauchy,
    DistSpec,
    Gamma,
    HalfNormalLeft,
    HalfNormalRight,
    Normal,
    StudentT,
    Triangular,
    Uniform,
)


logger = logging.getLogger(__name__)

_spec_adapter = TypeAdapter(DistSpec)


def _count(factor: float, m: int) -> int:
    return int(round(factor * m))


# D1-D12 масштабируются множителем m, у D13-D22 размеры абсолютные
_BUILTIN = {
    "D1": lambda m: [
        Normal(mu=0, sigma=1, n=_count(5, m)),
        Normal(mu=6, sigma=1, n=_count(8, m)),
    ],
    "D2": lambda m: [
        Normal(mu=-1, sigma=0.8, n=_count(20, m)),
        Normal(mu=4, sigma=1.5, n=_count(25, m)),
    ],
    "D3": lambda m: [
        StudentT(nu=2, loc=0, scale=1, n=_count(5, m)),
        Uniform(a=4, b=7, n=_count(2, m)),
        Normal(mu=10, sigma=1, n=_count(4, m)),
    ],
    "D4": lambda m: [
        Triangular(l=-5, d=-4, u=0, n=_count(3, m)),
        Triangular(l=1, d=5, u=6, n=_count(5, m)),
        Uniform(a=7, b=10, n=_count(2, m)),
    ],
    "D5": lambda m: [
        Gamma(k=1, theta=2, loc=0, n=_count(5, m)),
        Triangular(l=5, d=6, u=7, n=_count(5, m)),
        Normal(mu=10, sigma=0.2, n=_count(5, m)),
        StudentT(nu=10, loc=15, scale=1, n=_count(8, m)),
    ],
    "D6": lambda m: [
        Cauchy(loc=0, scale=2, n=_count(1, m)),
        Uniform(a=50, b=55, n=_count(3, m)),
        Uniform(a=100, b=105, n=_count(3, m)),
        StudentT(nu=1, loc=200, scale=1, n=_count(1, m)),
    ],
    "D7": lambda m: [
        Uniform(a=-1, b=1, n=_count(10, m)),
        Uniform(a=2, b=7, n=_count(12, m)),
    ],
    "D8": lambda m: [
        StudentT(nu=1, loc=-10, scale=1, n=_count(2, m)),
        StudentT(nu=2, loc=0, scale=1, n=_count(3, m)),
        StudentT(nu=1, loc=5, scale=1, n=_count(3.5, m)),
        StudentT(nu=3, loc=15, scale=1, n=_count(2.5, m)),
        StudentT(nu=5, loc=20, scale=1, n=_count(4, m)),
    ],
    "D9": lambda m: [
        Uniform(a=-20, b=-15, n=_count(10, m)),
        Uniform(a=-10, b=0, n=_count(25, m)),
        Uniform(a=1, b=10, n=_count(30, m)),
        Uniform(a=12, b=14, n=_count(20, m)),
        Uniform(a=20, b=50, n=_count(15, m)),
        Uniform(a=55, b=60, n=_count(5, m)),
    ],
    "D10": lambda m: [
        Uniform(a=-15, b=-7, n=_count(50, m)),
        Normal(mu=-2, sigma=4, n=_count(40, m)),
        Normal(mu=9, sigma=3, n=_count(30, m)),
        Uniform(a=15, b=20, n=_count(20, m)),
    ],
    "D11": lambda m: [
        StudentT(nu=5, loc=-2, scale=1, n=_count(2, m)),
        Normal(mu=5, sigma=0.5, n=_count(2, m)),
        Uniform(a=7, b=10, n=_count(2, m)),
        Gamma(k=2, theta=3, loc=12, n=_count(2, m)),
        Uniform(a=25, b=30, n=_count(2, m)),
        Triangular(l=40, d=45, u=50, n=_count(2, m)),
        Triangular(l=55, d=56, u=60, n=_count(2, m)),
    ],
    "D12": lambda m: [
        StudentT(nu=1, loc=-50, scale=1, n=_count(1, m)),
        Cauchy(loc=0, scale=2, n=_count(1, m)),
        Uniform(a=30, b=60, n=_count(1, m)),
    ],
    "D13": lambda m: [
        Normal(mu=0, sigma=1.7, n=700),
        Normal(mu=5, sigma=1, n=500),
    ],
    "D14": lambda m: [
        Uniform(a=-1, b=3, n=300),
        Uniform(a=8, b=10, n=200),
    ],
    "D15": lambda m: [
        Triangular(l=0.8, d=1, u=5, n=1000),
        Triangular(l=3, d=7.8, u=8, n=1000),
    ],
    "D16": lambda m: [
        HalfNormalRight(mu=0, sigma=1, n=1000),
        HalfNormalLeft(mu=4, sigma=1, n=1000),
    ],
    "D17": lambda m: [
        Triangular(l=-3.3, d=1, u=2.5, n=1000),
        Normal(mu=4, sigma=1, n=1000),
    ],
    "D18": lambda m: [
        Uniform(a=-2, b=0, n=200),
        Uniform(a=1, b=5, n=300),
        Uniform(a=6, b=7, n=450),
    ],
    "D19": lambda m: [
        Normal(mu=0, sigma=1, n=500),
        Normal(mu=6, sigma=1, n=80),
        Normal(mu=12, sigma=1, n=500),
        Normal(mu=18, sigma=1, n=100),
    ],
    "D20": lambda m: [
        Normal(mu=0, sigma=1, n=500),
        Normal(mu=4, sigma=1, n=300),
        Normal(mu=11, sigma=1, n=500),
        Uniform(a=14, b=15, n=50),
    ],
    "D21": lambda m: [
        Normal(mu=0, sigma=1, n=500),
        Normal(mu=4, sigma=1, n=300),
        Uniform(a=10, b=11, n=100),
        Uniform(a=14, b=15, n=50),
    ],
    "D22": lambda m: [
        Normal(mu=0, sigma=1, n=500),
        Uniform(a=2.5, b=4, n=200),
        Uniform(a=10, b=11, n=100),
        Uniform(a=14, b=15, n=50),
    ],
}

BUILTIN_NAMES = tuple(_BUILTIN)
TABLE3_NAMES = tuple(f"D{i}" for i in range(1, 13))
TABLE5_NAMES = tuple(f"D{i}" for i in range(13, 23))


def parse_spec(data: dict) -> DistSpec:
    """Проверяет описание распределения вида {"kind": "normal", "mu": 0, ...}."""
    try:
        return _spec_adapter.validate_python(data)
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"]) or "spec"
        raise InvalidSpecError(f"{field}: {error['msg']}")


def sample_spec(spec: DistSpec, seed: int | np.random.Generator | None = None) -> np.ndarray:
    """n независимых значений из распределения; детерминировано при фиксированном seed."""
    return spec.draw(np.random.default_rng(seed))


def builtin(name: str, m: int | None = None) -> list[DistSpec]:
    """
    Составные распределения D1-D22.

    :param name: "D1" .. "D22".
    :param m: множитель размера для D1-D12 (по умолчанию settings.BENCH.m).
    :raises UnknownDistributionError: неизвестное имя.
    """
    factory = _BUILTIN.get(name.upper())
    if factory is None:
        raise UnknownDistributionError(f"unknown distribution {name!r}, expected D1..D22")
    return factory(settings.BENCH.m if m is None else m)


def sample_mixture(
    specs: list[DistSpec], seed: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """
    Выборка из объединения распределений.

    Каждая компонента генерируется из своего дочернего потока SeedSequence(seed).

    :return: значения и метки (номер порождающей компоненты).
    """
    children = np.random.SeedSequence(seed).spawn(len(specs))
    values = [spec.draw(np.random.default_rng(child)) for spec, child in zip(specs, children)]
    labels = [np.full(spec.n, index, dtype=np.int64) for index, spec in enumerate(specs)]
    logger.debug(f"Sampled mixture of {len(specs)} components, {sum(s.n for s in specs)} points")
    return np.concatenate(values), np.concatenate(labels)
