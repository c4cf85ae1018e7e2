from abc import abstractmethod
from typing import Annotated, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


# пачка для выборки с отклонением у полунормальных распределений
_REJECTION_BATCH = 1024


class _Spec(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)

    @abstractmethod
    def draw(self, rng: np.random.Generator) -> np.ndarray:
        """n независимых значений распределения."""


class Normal(_Spec):
    kind: Literal["normal"] = "normal"
    mu: float
    sigma: float = Field(gt=0)

    def draw(self, rng: np.random.Generator) -> np.ndarray:
        return rng.normal(self.mu, self.sigma, self.n)


class Uniform(_Spec):
    kind: Literal["uniform"] = "uniform"
    a: float
    b: float

    @model_validator(mode="after")
    def check_bounds(self) -> "Uniform":
        if not self.a < self.b:
            raise ValueError("uniform bounds must satisfy a < b")
        return self

    def draw(self, rng: np.random.Generator) -> np.ndarray:
        return rng.uniform(self.a, self.b, self.n)


class Triangular(_Spec):
    kind: Literal["triangular"] = "triangular"
    l: float
    d: float
    u: float

    @model_validator(mode="after")
    def check_bounds(self) -> "Triangular":
        if not (self.l <= self.d <= self.u and self.l < self.u):
            raise ValueError("triangular parameters must satisfy l <= d <= u and l < u")
        return self

    def draw(self, rng: np.random.Generator) -> np.ndarray:
        return rng.triangular(self.l, self.d, self.u, self.n)


class StudentT(_Spec):
    kind: Literal["student_t"] = "student_t"
    nu: float = Field(gt=0)
    loc: float = 0.0
    scale: float = Field(default=1.0, gt=0)

    def draw(self, rng: np.random.Generator) -> np.ndarray:
        return self.loc + self.scale * rng.standard_t(self.nu, self.n)


class Cauchy(_Spec):
    kind: Literal["cauchy"] = "cauchy"
    loc: float = 0.0
    scale: float = Field(default=1.0, gt=0)

    def draw(self, rng: np.random.Generator) -> np.ndarray:
        return self.loc + self.scale * rng.standard_cauchy(self.n)


class Gamma(_Spec):
    kind: Literal["gamma"] = "gamma"
    k: float = Field(gt=0)
    theta: float = Field(gt=0)
    loc: float = 0.0

    def draw(self, rng: np.random.Generator) -> np.ndarray:
        return self.loc + rng.gamma(self.k, self.theta, self.n)


class _HalfNormal(_Spec):
    mu: float
    sigma: float = Field(gt=0)

    @abstractmethod
    def _keep(self, x: np.ndarray) -> np.ndarray:
        """Маска значений, попадающих в нужную половину."""

    def draw(self, rng: np.random.Generator) -> np.ndarray:
        kept: list[np.ndarray] = []
        remaining = self.n
        while remaining > 0:
            batch = rng.normal(self.mu, self.sigma, max(2 * remaining, _REJECTION_BATCH))
            batch = batch[self._keep(batch)][:remaining]
            kept.append(batch)
            remaining -= batch.size
        return np.concatenate(kept)


class HalfNormalRight(_HalfNormal):
    """Правая половина N(mu, sigma): значения >= mu."""

    kind: Literal["half_normal_right"] = "half_normal_right"

    def _keep(self, x: np.ndarray) -> np.ndarray:
        return x >= self.mu


class HalfNormalLeft(_HalfNormal):
    """Левая половина N(mu, sigma): значения <= mu."""

    kind: Literal["half_normal_left"] = "half_normal_left"

    def _keep(self, x: np.ndarray) -> np.ndarray:
        return x <= self.mu


DistSpec = Annotated[
    Union[Normal, Uniform, Triangular, StudentT, Cauchy, Gamma, HalfNormalRight, HalfNormalLeft],
    Field(discriminator="kind"),
]
