import logging

import numpy as np

from app.config.settings import settings
from app.data.schemas import Dataset
from app.errors import DegenerateIntervalError, NoValleyError
from app.hull.schemas import PointKind
from app.splitting.schemas import MDPoint, SplitResult, ValleySearch
from app.uutest.schemas import CandidateInterval, UUOutcome
from app.uutest.uutest_service import UUTestService


logger = logging.getLogger(__name__)


def multimodality_degree(d: Dataset, a: float, b: float) -> MDPoint:
    """
    Максимальное отклонение ecdf подвыборки X(a, b) от равномерной cdf на [a, b].

    Максимум берётся по значениям строго внутри (a, b); при равенстве
    выбирается меньший x.

    :raises DegenerateIntervalError: в [a, b] меньше двух точек или нет внутренних точек.
    """
    start, stop = d.index_range(a, b)
    if stop - start < 2:
        raise DegenerateIntervalError()

    first = start + int(d.values[start] == a)
    last = stop - int(d.values[stop - 1] == b)
    if last <= first:
        raise DegenerateIntervalError(f"no dataset value inside ({a}, {b})")

    base = d.cumw[start - 1] if start > 0 else 0
    n = d.cumw[stop - 1] - base
    f = (d.cumw[first:last] - base) / n
    u = (d.values[first:last] - a) / (b - a)
    deviation = np.abs(f - u)
    k = int(np.argmax(deviation))
    return MDPoint(x=float(d.values[first + k]), deviation=float(min(deviation[k], 1.0)))


class UniSplitService:
    """
    Поиск точек долин и разбиение выборки на унимодальные подмножества.
    """

    def __init__(
        self,
        alpha: float | None = None,
        min_split_size: int | None = None,
        uu_service: UUTestService | None = None,
    ):
        """
        :param alpha: уровень значимости UU-теста.
        :param min_split_size: подмножества с меньшим числом точек не делятся.
        :param uu_service: готовый UU-тест (по умолчанию создаётся с тем же alpha).
        """
        self.alpha = settings.ALPHA if alpha is None else alpha
        self.min_split_size = (
            settings.MIN_SPLIT_SIZE if min_split_size is None else min_split_size
        )
        self.uu = uu_service or UUTestService(alpha=self.alpha)

    def find_vp(self, d: Dataset, outcome: UUOutcome | None = None) -> float:
        """Точка долины мультимодальной выборки, см. search_valley."""
        return self.search_valley(d, outcome).vp

    def search_valley(self, d: Dataset, outcome: UUOutcome | None = None) -> ValleySearch:
        """
        Находит точку долины мультимодальной выборки.

        Берётся лучший интервал-кандидат (с наибольшей степенью мультимодальности).
        Если данные на нём унимодальны, точка долины лежит между MD-точкой и
        дальним от неё концом интервала, иначе поиск продолжается внутри него.

        :param d: выборка.
        :param outcome: уже посчитанный результат UU-теста для d.
        :return: ValleySearch; vp строго внутри (x_1, x_N) и не совпадает со значениями выборки.
        :raises NoValleyError: выборка унимодальна.
        """
        outcome = outcome or self.uu.uu_test(d)
        if outcome.unimodal:
            raise NoValleyError()

        current, depth = d, 0
        while True:
            best, md = self._best_interval(current, outcome.candidates)
            sub = current.subset(best.a, best.b)
            if sub.size < current.size:
                outcome = self.uu.uu_test(sub)
            if sub.size == current.size or outcome.unimodal:
                vp = self._nudge(d, _valley_point(best, md))
                logger.debug(
                    f"Valley point {vp} from {best.kind.value} pair [{best.a}, {best.b}] at depth {depth}"
                )
                return ValleySearch(vp=vp, depth=depth, interval=best)
            current, depth = sub, depth + 1

    def _best_interval(
        self, d: Dataset, candidates: list[CandidateInterval]
    ) -> tuple[CandidateInterval, MDPoint | None]:
        """Кандидат с наибольшим отклонением; при равенстве - более широкий, затем левее."""
        scored = []
        for candidate in candidates:
            try:
                md = multimodality_degree(d, candidate.a, candidate.b)
                deviation = md.deviation
            except DegenerateIntervalError:
                # внутренних точек нет: отклонение достигается в левом конце
                md = None
                start, stop = d.index_range(candidate.a, candidate.b)
                deviation = float(d.weights[start] / d.weights[start:stop].sum())
            scored.append((-deviation, -(candidate.b - candidate.a), candidate.a, len(scored), candidate, md))
        scored.sort(key=lambda item: item[:4])
        _, _, _, _, best, md = scored[0]
        return best, md

    @staticmethod
    def _nudge(d: Dataset, vp: float) -> float:
        """Сдвигает vp с точки выборки в середину между ней и следующим значением."""
        pos = int(np.searchsorted(d.values, vp, side="left"))
        if pos < d.size and d.values[pos] == vp:
            if pos + 1 < d.size:
                return float((d.values[pos] + d.values[pos + 1]) / 2)
            return float((d.values[pos - 1] + d.values[pos]) / 2)
        return vp

    def unisplit(self, d: Dataset) -> SplitResult:
        """
        Рекурсивно делит выборку по точкам долин, затем сливает соседние
        подмножества, объединение которых унимодально.

        :param d: непустая выборка.
        :return: SplitResult с минимальным унимодальным разбиением.
        """
        valley_points: list[float] = []
        pending = [d]
        while pending:
            part = pending.pop()
            if part.total < self.min_split_size:
                continue
            outcome = self.uu.uu_test(part)
            if outcome.unimodal:
                continue
            vp = self.find_vp(part, outcome)
            left, right = part.split_at(vp)
            valley_points.append(vp)
            pending += [left, right]

        valley_points.sort()
        subsets, valley_points = self._merge(_partition(d, valley_points), valley_points)
        logger.info(f"UniSplit on {d!r}: k={len(subsets)}, valley points {valley_points}")
        labels = np.repeat(np.arange(len(subsets)), [s.total for s in subsets])
        return SplitResult(
            valley_points=np.asarray(valley_points, dtype=np.float64),
            subsets=tuple(subsets),
            labels=labels,
        )

    def merge_pass(self, subsets: list[Dataset]) -> list[Dataset]:
        """
        Сливает соседние подмножества, пока объединение какой-либо пары унимодально.

        :param subsets: упорядоченные смежные подмножества.
        :return: подмножества, никакие два соседних из которых не дают унимодального объединения.
        """
        vps = [(left.hi + right.lo) / 2 for left, right in zip(subsets, subsets[1:])]
        merged, _ = self._merge(list(subsets), vps)
        return merged

    def _merge(
        self, subsets: list[Dataset], valley_points: list[float]
    ) -> tuple[list[Dataset], list[float]]:
        subsets, valley_points = list(subsets), list(valley_points)
        # True - объединение пары (i, i+1) уже проверено и мультимодально
        checked = [False] * (len(subsets) - 1)
        i = 0
        while i < len(subsets) - 1:
            if not checked[i]:
                union = subsets[i].concat(subsets[i + 1])
                if self.uu.uu_test(union).unimodal:
                    logger.debug(f"Merged subsets {i} and {i + 1}, dropped vp {valley_points[i]}")
                    subsets[i : i + 2] = [union]
                    del valley_points[i]
                    del checked[i]
                    if i > 0:
                        checked[i - 1] = False
                    if i < len(checked):
                        checked[i] = False
                    i = 0
                    continue
                checked[i] = True
            i += 1
        return subsets, valley_points


def _valley_point(best: CandidateInterval, md: MDPoint | None) -> float:
    if md is None:
        return (best.a + best.b) / 2
    if best.kind == PointKind.GCM:
        return (md.x + best.b) / 2
    return (best.a + md.x) / 2


def _partition(d: Dataset, valley_points: list[float]) -> list[Dataset]:
    cuts = np.searchsorted(d.values, valley_points, side="right").tolist()
    bounds = [0, *cuts, d.size]
    return [d.slice(start, stop) for start, stop in zip(bounds, bounds[1:])]


def unisplit(d: Dataset, alpha: float | None = None) -> SplitResult:
    return UniSplitService(alpha=alpha).unisplit(d)


def find_vp(d: Dataset, alpha: float | None = None) -> float:
    return UniSplitService(alpha=alpha).find_vp(d)


def search_valley(d: Dataset, alpha: float | None = None) -> ValleySearch:
    return UniSplitService(alpha=alpha).search_valley(d)


def merge_pass(subsets: list[Dataset], alpha: float | None = None) -> list[Dataset]:
    return UniSplitService(alpha=alpha).merge_pass(subsets)
