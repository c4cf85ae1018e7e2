from dataclasses import dataclass

import numpy as np

from app.errors import ImageFormatError


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Полутоновое изображение: pixels - массив (height, width) значений 0..255."""

    pixels: np.ndarray

    def __post_init__(self):
        pixels = np.asarray(self.pixels)
        if pixels.ndim != 2 or pixels.size == 0:
            raise ImageFormatError("malformed image: expected a non-empty 2-D pixel array")
        if pixels.min() < 0 or pixels.max() > 255:
            raise ImageFormatError("malformed image: intensities must lie in [0, 255]")
        pixels = pixels.astype(np.uint8)
        pixels.setflags(write=False)
        object.__setattr__(self, "pixels", pixels)

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Segmentation:
    labels: np.ndarray
    thresholds: np.ndarray

    @property
    def k(self) -> int:
        return int(self.thresholds.size) + 1
