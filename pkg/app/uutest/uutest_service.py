import logging

import numpy as np

from app.config.settings import settings
from app.data.schemas import Dataset, Ecdf
from app.hull.convex import gcm_points, lcm_points
from app.hull.schemas import PointKind
from app.stats.ks import ks_uniformity
from app.stats.schemas import KsNull
from app.uutest.schemas import UMM, CandidateInterval, UUOutcome


logger = logging.getLogger(__name__)


def modal_interval(e: Ecdf, gcm: np.ndarray, lcm: np.ndarray) -> tuple[float, float]:
    """
    Модальный отрезок [xl, xr] между выпуклой и вогнутой частями ecdf.

    Для каждой вершины gcm считается зазор до ломаной lcm, для каждой
    вершины lcm - зазор до ломаной gcm. Отрезок строится от вершины с
    наибольшим зазором: левее xl остаются только вершины gcm (подъём),
    правее xr - только вершины lcm (спад). Шумовые вершины у хвостов
    получают малый зазор и в модальный отрезок не попадают.

    :param e: ecdf выборки.
    :param gcm: вершины gcm отрезка, включая оба конца.
    :param lcm: вершины lcm того же отрезка.
    :return: (xl, xr), xl < xr; весь отрезок, если gcm и lcm совпадают.
    """
    fg, fl = e(gcm), e(lcm)
    gcm_gap = np.interp(gcm, lcm, fl) - fg
    lcm_gap = fl - np.interp(lcm, gcm, fg)
    widest_gcm, widest_lcm = float(gcm_gap.max()), float(lcm_gap.max())
    if max(widest_gcm, widest_lcm) <= 0:
        return float(gcm[0]), float(gcm[-1])

    if widest_lcm > widest_gcm:
        xr = lcm[np.flatnonzero(lcm_gap == widest_lcm)[-1]]
        xl = gcm[gcm <= xr][-1]
    else:
        xl = gcm[int(np.argmax(gcm_gap))]
        xr = lcm[lcm >= xl][0]
    return float(xl), float(xr)


class UUTestService:
    """
    UU-тест унимодальности.

    Ищет кусочно-линейную унимодальную аппроксимацию ecdf, у которой данные
    на каждом отрезке равномерны. При успехе возвращает UMM, иначе -
    интервалы-кандидаты для разбиения.
    """

    def __init__(self, alpha: float | None = None, max_depth: int | None = None):
        """
        :param alpha: уровень значимости теста равномерности.
        :param max_depth: предел глубины уточнения модального отрезка.
        """
        self.alpha = settings.ALPHA if alpha is None else alpha
        self.max_depth = settings.MAX_REFINE_DEPTH if max_depth is None else max_depth

    def uu_test(self, d: Dataset) -> UUOutcome:
        """
        Проверяет унимодальность выборки.

        Начиная со всего носителя: если данные на текущем отрезке равномерны,
        модель готова. Иначе строятся gcm и lcm отрезка, выделяется модальный
        отрезок [xl, xr]; проверяются пары соседних вершин gcm на подъёме
        [lo, xl] и вершин lcm на спаде [xr, hi]. Отвергнутые пары - кандидаты,
        без них поиск продолжается внутри [xl, xr].

        :param d: непустая выборка.
        :return: UUOutcome с моделью (унимодальна) либо с кандидатами (мультимодальна).
        """
        if d.size == 1:
            return UUOutcome(unimodal=True, model=UMM.point_mass(d.lo))

        e = d.ecdf
        lo, hi = d.lo, d.hi
        knots: list[np.ndarray] = []
        for depth in range(self.max_depth + 1):
            is_uniform, ks = ks_uniformity(d, lo, hi, self.alpha)
            if is_uniform:
                knots = np.unique(np.concatenate(knots + [np.array([lo, hi])]))
                logger.debug(f"UU-test on {d!r}: unimodal with {knots.size - 1} segments, depth {depth}")
                return UUOutcome(unimodal=True, model=UMM.from_knots(d, knots))

            gcm = gcm_points(e, lo, hi)
            lcm = lcm_points(e, lo, hi)
            xl, xr = modal_interval(e, gcm, lcm)
            rising, falling = gcm[gcm <= xl], lcm[lcm >= xr]
            candidates = self._rejected_pairs(d, rising, PointKind.GCM)
            candidates += self._rejected_pairs(d, falling, PointKind.LCM)
            if candidates:
                logger.debug(f"UU-test on {d!r}: multimodal, {len(candidates)} candidate intervals")
                return UUOutcome(unimodal=False, candidates=candidates)

            if (xl, xr) == (lo, hi):
                break
            if depth == self.max_depth:
                logger.warning(f"Modal refinement hit depth {depth} on [{lo}, {hi}]")
                break
            knots += [rising, falling]
            lo, hi = xl, xr

        return UUOutcome(unimodal=False, candidates=[CandidateInterval(a=lo, b=hi, kind=PointKind.GCM, ks=ks)])

    def _rejected_pairs(
        self, d: Dataset, points: np.ndarray, kind: PointKind
    ) -> list[CandidateInterval]:
        """Соседние пары вершин одной оболочки, на которых данные не равномерны."""
        rejected = []
        for a, b in zip(points[:-1].tolist(), points[1:].tolist()):
            is_uniform, ks = ks_uniformity(d, a, b, self.alpha, null=KsNull.EXCURSION)
            if not is_uniform:
                rejected.append(CandidateInterval(a=a, b=b, kind=kind, ks=ks))
        return rejected


def uu_test(d: Dataset, alpha: float | None = None) -> UUOutcome:
    return UUTestService(alpha=alpha).uu_test(d)
