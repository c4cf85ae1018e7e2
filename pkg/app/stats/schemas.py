from enum import Enum

from pydantic import BaseModel, Field


class KsNull(str, Enum):
    """
    Нулевое распределение статистики КС на отрезке.

    BRIDGE - отрезок выбран независимо от данных (закон Колмогорова).
    EXCURSION - концы отрезка - соседние вершины одной оболочки ecdf: ecdf
    лежит по одну сторону хорды, и супремум распределён как максимум
    броуновской экскурсии.
    """

    BRIDGE = "bridge"
    EXCURSION = "excursion"


class KsResult(BaseModel):
    statistic: float = Field(ge=0, le=1)
    p_value: float = Field(ge=0, le=1)
    n_effective: int = Field(ge=1)
