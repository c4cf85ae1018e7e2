import logging
from pathlib import Path

from pydantic import ValidationError

from app.config.settings import settings
from app.data.io import atomic_output
from app.data.schemas import Dataset
from app.errors import ModelFileError, UnstablePartitionError
from app.splitting.split_service import UniSplitService
from app.udmm.schemas import UDMM


logger = logging.getLogger(__name__)


class UDMMService:
    """Обучение модели UDMM и работа с файлами моделей."""

    def __init__(self, alpha: float | None = None):
        self.alpha = settings.ALPHA if alpha is None else alpha
        self.splitter = UniSplitService(alpha=self.alpha)

    def fit(self, d: Dataset) -> UDMM:
        """
        Строит UDMM: UniSplit делит выборку, UU-тест даёт UMM каждого подмножества.

        :param d: непустая выборка.
        :return: модель с весами w_j = N_j / N.
        :raises UnstablePartitionError: подмножество после слияния не прошло UU-тест.
        """
        split = self.splitter.unisplit(d)
        components = []
        for j, subset in enumerate(split.subsets):
            outcome = self.splitter.uu.uu_test(subset)
            if not outcome.unimodal:
                raise UnstablePartitionError(f"unstable partition: subset {j} {subset!r} is multimodal")
            components.append(outcome.model)

        model = UDMM(
            weights=[subset.total / d.total for subset in split.subsets],
            valley_points=split.valley_points.tolist(),
            components=components,
        )
        logger.info(
            f"Fitted UDMM: K={model.k}, segments per component "
            f"{[c.segments for c in model.components]}"
        )
        return model


def fit_udmm(d: Dataset, alpha: float | None = None) -> UDMM:
    return UDMMService(alpha=alpha).fit(d)


def serialize(m: UDMM) -> str:
    return m.model_dump_json(indent=2)


def deserialize(text: str | bytes) -> UDMM:
    """
    Читает модель из JSON.

    :raises ModelFileError: с путём к ошибочному полю, например "components.0.weights".
    """
    try:
        return UDMM.model_validate_json(text)
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"]) or "model"
        raise ModelFileError(f"{field}: {error['msg']}")


def save_model(m: UDMM, path: Path) -> None:
    with atomic_output(path) as handle:
        handle.write(serialize(m))


def load_model(path: Path) -> UDMM:
    return deserialize(Path(path).read_text(encoding="utf-8"))
