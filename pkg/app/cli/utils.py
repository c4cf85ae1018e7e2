import functools
import logging
from pathlib import Path

import typer
from pydantic import ValidationError
from rich.console import Console

from app.data.io import atomic_output
from app.errors import UniSplitError


logger = logging.getLogger(__name__)

console = Console()


def _diagnostic(error: Exception) -> str:
    if isinstance(error, ValidationError):
        first = error.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or error.title
        return f"{field}: {first['msg']}"
    if isinstance(error, OSError) and error.filename is not None:
        return f"{error.strerror or error}: {error.filename}"
    text = str(error).strip()
    return text.splitlines()[0] if text else type(error).__name__


def handle_errors(command):
    """
    Превращает ошибки библиотеки, ввода-вывода и валидации в одну строку
    "error: ..." на stderr и код выхода 1.
    """

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (UniSplitError, OSError, ValidationError) as e:
            logger.debug(f"{command.__name__} failed", exc_info=True)
            typer.echo(f"error: {_diagnostic(e)}", err=True)
            raise typer.Exit(code=1)

    return wrapper


def write_text(path: Path, text: str) -> None:
    with atomic_output(path) as handle:
        handle.write(text)


def labels_path(values_path: Path) -> Path:
    """Файл меток рядом с файлом значений: d1.txt -> d1.labels.txt."""
    values_path = Path(values_path)
    return values_path.with_name(f"{values_path.stem}.labels{values_path.suffix}")


def fmt(value: float | None, digits: int = 4) -> str:
    return "-" if value is None else f"{value:.{digits}f}"
