import logging
from pathlib import Path
from typing import BinaryIO

import numpy as np
from PIL import Image, UnidentifiedImageError

from app.data.io import atomic_output
from app.errors import ImageFormatError
from app.imgseg.imgseg_service import to_gray
from app.imgseg.schemas import GrayImage


logger = logging.getLogger(__name__)


def read_image(path: Path) -> GrayImage:
    """
    Читает PGM (P5) как полутоновое изображение, PPM (P6) - с переводом в яркость.

    :raises ImageFormatError: файл не является 8-битным PGM/PPM.
    """
    try:
        with Image.open(path) as image:
            image.load()
            if image.format != "PPM":
                raise ImageFormatError(f"malformed image: {path} is {image.format}, expected PGM/PPM")
            mode = image.mode
            pixels = np.asarray(image)
    except (UnidentifiedImageError, OSError, SyntaxError) as e:
        raise ImageFormatError(f"malformed image: {path}: {e}")

    logger.debug(f"Read {path}: mode {mode}, size {pixels.shape}")
    if mode == "L":
        return GrayImage(pixels=pixels)
    if mode == "RGB":
        return to_gray(pixels)
    raise ImageFormatError(f"malformed image: unsupported mode {mode} in {path}")


def dump_pgm(img: GrayImage, handle: BinaryIO) -> None:
    """Пишет изображение в открытый бинарный файл как PGM (P5)."""
    Image.fromarray(np.ascontiguousarray(img.pixels)).save(handle, format="PPM")


def write_pgm(img: GrayImage, path: Path) -> None:
    with atomic_output(path, mode="wb") as handle:
        dump_pgm(img, handle)
