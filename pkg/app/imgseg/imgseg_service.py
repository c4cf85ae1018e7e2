import logging

import numpy as np

from app.config.settings import settings
from app.data.utils import make_dataset, spread_ties
from app.errors import ImageFormatError
from app.imgseg.schemas import GrayImage, Segmentation
from app.splitting.split_service import UniSplitService


logger = logging.getLogger(__name__)


def to_gray(rgb) -> GrayImage:
    """
    Яркость 0.299R + 0.587G + 0.114B с округлением половин вверх.

    Считается в целых числах, чтобы округление не зависело от погрешности float.
    """
    rgb = np.asarray(rgb)
    if rgb.ndim != 3 or rgb.shape[2] != 3 or rgb.size == 0:
        raise ImageFormatError("malformed image: expected an (height, width, 3) RGB array")
    if rgb.min() < 0 or rgb.max() > 255:
        raise ImageFormatError("malformed image: channel values must lie in [0, 255]")
    channels = rgb.astype(np.int64)
    weighted = 299 * channels[..., 0] + 587 * channels[..., 1] + 114 * channels[..., 2]
    return GrayImage(pixels=(weighted + 500) // 1000)


class ImageSegmentationService:
    """Сегментация изображения по яркости с помощью UniSplit."""

    def __init__(self, alpha: float | None = None):
        self.alpha = settings.ALPHA if alpha is None else alpha
        self.splitter = UniSplitService(alpha=self.alpha)

    def segment(self, img: GrayImage) -> Segmentation:
        """
        Делит пиксели на сегменты по порогам яркости.

        Повторяющиеся целые яркости раскладываются по ячейке квантования
        [v - 1/2, v + 1/2), затем на полученной выборке работает UniSplit.
        Пиксель получает номер сегмента по своей целой яркости.

        :param img: полутоновое изображение.
        :return: метки пикселей (height, width) и пороги (точки долин).
        """
        intensities = make_dataset(img.pixels.ravel())
        if intensities.size == 1:
            return Segmentation(labels=np.zeros(img.pixels.shape, dtype=np.int64), thresholds=np.empty(0))

        split = self.splitter.unisplit(spread_ties(intensities, 1.0))
        thresholds = self._effective_thresholds(intensities.values, split.valley_points)
        labels = np.searchsorted(thresholds, img.pixels, side="left").astype(np.int64)
        logger.info(f"Segmented {img.width}x{img.height} image: k={thresholds.size + 1}, thresholds {thresholds.tolist()}")
        return Segmentation(labels=labels, thresholds=thresholds)

    @staticmethod
    def _effective_thresholds(levels: np.ndarray, valley_points: np.ndarray) -> np.ndarray:
        """Оставляет пороги, между которыми есть хотя бы одна яркость изображения."""
        kept: list[float] = []
        previous_cut = 0
        for vp in valley_points.tolist():
            # число различных яркостей <= vp
            cut = int(np.searchsorted(levels, vp, side="right"))
            if previous_cut < cut < levels.size:
                kept.append(vp)
                previous_cut = cut
        return np.asarray(kept, dtype=np.float64)

    @staticmethod
    def recolor(img: GrayImage, labels: np.ndarray) -> GrayImage:
        """Заменяет каждый пиксель округлённой средней яркостью его сегмента."""
        labels = np.asarray(labels)
        if labels.shape != img.pixels.shape:
            raise ImageFormatError("labels must cover every pixel")
        flat = labels.ravel()
        sums = np.bincount(flat, weights=img.pixels.ravel().astype(np.float64))
        counts = np.bincount(flat)
        means = np.floor(sums / np.maximum(counts, 1) + 0.5)
        return GrayImage(pixels=means[flat].reshape(img.pixels.shape))

    @staticmethod
    def segment_report(img: GrayImage, segmentation: Segmentation) -> str:
        """Текстовый отчёт: k, пороги, число пикселей и средняя яркость каждого сегмента."""
        flat = segmentation.labels.ravel()
        pixels = img.pixels.ravel().astype(np.float64)
        lines = [
            f"k: {segmentation.k}",
            "thresholds: " + " ".join(f"{t:.6g}" for t in segmentation.thresholds),
        ]
        for j in range(segmentation.k):
            mask = flat == j
            count = int(mask.sum())
            mean = float(pixels[mask].mean()) if count else float("nan")
            lines.append(f"segment {j}: pixels={count} mean={mean:.4f}")
        return "\n".join(lines) + "\n"


def segment(img: GrayImage, alpha: float | None = None) -> Segmentation:
    return ImageSegmentationService(alpha=alpha).segment(img)


def recolor(img: GrayImage, labels: np.ndarray) -> GrayImage:
    return ImageSegmentationService.recolor(img, labels)
