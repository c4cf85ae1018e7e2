from dataclasses import dataclass
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict


class PointKind(str, Enum):
    GCM = "gcm"
    LCM = "lcm"
    BOTH = "both"


class CriticalPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: float
    f: float
    kind: PointKind


@dataclass(frozen=True, eq=False)
class GLSet:
    """
    Упорядоченное объединение критических точек gcm и lcm.

    gcm и lcm хранятся и отдельно (в виде массивов x), так как UU-тест
    перебирает соседние пары точек одного типа.
    """

    points: tuple[CriticalPoint, ...]
    gcm: np.ndarray
    lcm: np.ndarray

    @property
    def max_g(self) -> float:
        """Наибольшая точка gcm, не считая x_N."""
        return float(self.gcm[-2])

    @property
    def min_l(self) -> float:
        """Наименьшая точка lcm, не считая x_1."""
        return float(self.lcm[1])
