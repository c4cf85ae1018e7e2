import logging
import os
import tempfile
from contextlib import ExitStack, contextmanager
from pathlib import Path

import numpy as np
import pandas as pd

from app.errors import InputFormatError


logger = logging.getLogger(__name__)


@contextmanager
def atomic_outputs(*targets: tuple[Path, str]):
    """
    Открывает по временному файлу на каждую пару (path, mode).

    Переименование начинается только после того, как записаны все файлы;
    при исключении временные файлы удаляются и ни один path не меняется.
    """
    pending: list[tuple[str, Path]] = []
    try:
        with ExitStack() as stack:
            handles = []
            for path, mode in targets:
                path = Path(path)
                path.parent.mkdir(parents=True, exist_ok=True)
                fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
                pending.append((tmp_name, path))
                handles.append(stack.enter_context(os.fdopen(fd, mode)))
            yield handles
        for tmp_name, path in pending:
            os.replace(tmp_name, path)
    except BaseException:
        for tmp_name, _ in pending:
            Path(tmp_name).unlink(missing_ok=True)
        raise


@contextmanager
def atomic_output(path: Path, mode: str = "w"):
    """Один файл через atomic_outputs: частичного вывода не остаётся."""
    with atomic_outputs((path, mode)) as (handle,):
        yield handle


def _read_csv(path: Path) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, header=None, comment="#", skipinitialspace=True)
    except (pd.errors.EmptyDataError, pd.errors.ParserError) as e:
        raise InputFormatError(f"{path}: {e}")

    first_row = pd.to_numeric(frame.iloc[0], errors="coerce")
    if first_row.isna().any():
        # первая строка - заголовок
        frame = frame.iloc[1:].reset_index(drop=True)
    try:
        return frame.apply(pd.to_numeric)
    except (ValueError, TypeError) as e:
        raise InputFormatError(f"{path}: non-numeric cell ({e})")


def read_values(path: Path) -> tuple[np.ndarray, np.ndarray | None]:
    """
    Читает выборку из файла.

    :param path: текстовый файл (одно число в строке, строки с '#' пропускаются)
                 или CSV (первый столбец - значение, второй - необязательная метка).
    :return: массив значений и массив целых меток (или None).
    """
    path = Path(path)
    if path.suffix.lower() == ".csv":
        frame = _read_csv(path)
        if frame.empty:
            raise InputFormatError(f"{path}: no rows")
        values = frame.iloc[:, 0].to_numpy(dtype=np.float64)
        labels = None
        if frame.shape[1] > 1:
            labels = frame.iloc[:, 1].to_numpy()
            if not np.all(np.equal(np.mod(labels, 1), 0)):
                raise InputFormatError(f"{path}: labels must be integers")
            labels = labels.astype(np.int64)
        logger.debug(f"Read {values.size} values from {path} (labels: {labels is not None})")
        return values, labels

    try:
        values = np.loadtxt(path, comments="#", ndmin=1, dtype=np.float64)
    except ValueError as e:
        raise InputFormatError(f"{path}: {e}")
    logger.debug(f"Read {values.size} values from {path}")
    return values.ravel(), None


def read_table(path: Path) -> tuple[np.ndarray, np.ndarray]:
    """CSV для наивного Байеса: последний столбец - метка класса, остальные - признаки."""
    path = Path(path)
    frame = _read_csv(path)
    if frame.shape[1] < 2 or frame.empty:
        raise InputFormatError(f"{path}: need at least one feature column and a label column")
    features = frame.iloc[:, :-1].to_numpy(dtype=np.float64)
    labels = frame.iloc[:, -1].to_numpy()
    if not np.all(np.equal(np.mod(labels, 1), 0)):
        raise InputFormatError(f"{path}: class labels must be integers")
    return features, labels.astype(np.int64)


def format_values(values) -> str:
    return "".join(f"{float(v)!r}\n" for v in values)


def write_values(path: Path, values) -> None:
    with atomic_output(path) as handle:
        handle.write(format_values(values))
