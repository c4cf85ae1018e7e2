import logging
from pathlib import Path

import numpy as np
import pandas as pd
import typer

from app.cli.utils import handle_errors, labels_path
from app.data.io import atomic_output, atomic_outputs, format_values, read_values
from app.data.utils import make_dataset
from app.errors import InputFormatError, UniSplitError
from app.hull.convex import gl_set
from app.splitting.split_service import UniSplitService, multimodality_degree
from app.stats.scores import nmi
from app.synth.generators import builtin, sample_mixture


logger = logging.getLogger(__name__)


def _read_labels(path: Path, expected: int) -> np.ndarray:
    labels, _ = read_values(path)
    if labels.size != expected or not np.all(np.equal(np.mod(labels, 1), 0)):
        raise InputFormatError(f"{path}: expected {expected} integer labels")
    return labels.astype(np.int64)


@handle_errors
def split(
    input: Path = typer.Argument(..., help="Файл со значениями (по одному в строке) или CSV"),
    alpha: float | None = typer.Option(None, help="Уровень значимости UU-теста"),
    labels: Path | None = typer.Option(None, help="Файл с истинными метками для NMI"),
):
    """
    Разбивает выборку на унимодальные подмножества.

    Печатает точки долин, размеры и диапазоны подмножеств; при наличии меток - NMI.
    """
    values, true_labels = read_values(input)
    if labels is not None:
        true_labels = _read_labels(labels, values.size)

    result = UniSplitService(alpha=alpha).unisplit(make_dataset(values))
    typer.echo(f"k: {result.k}")
    typer.echo("valley points: " + " ".join(f"{vp!r}" for vp in result.valley_points.tolist()))
    for j, subset in enumerate(result.subsets):
        typer.echo(f"subset {j}: size={subset.total} range=[{subset.lo!r}, {subset.hi!r}]")
    if true_labels is not None:
        typer.echo(f"nmi: {nmi(true_labels, result.assign(values)):.4f}")


@handle_errors
def gen(
    name: str = typer.Argument(..., help="Имя распределения D1..D22"),
    seed: int = typer.Option(0, help="Зерно генератора"),
    m: int | None = typer.Option(None, help="Множитель размера для D1-D12"),
    out: Path | None = typer.Option(None, help="Файл значений; метки пишутся рядом (*.labels.*)"),
):
    """Генерирует выборку из встроенного распределения."""
    values, labels = sample_mixture(builtin(name, m), seed)
    if out is None:
        typer.echo(format_values(values), nl=False)
        return
    with atomic_outputs((out, "w"), (labels_path(out), "w")) as (values_handle, labels_handle):
        values_handle.write(format_values(values))
        labels_handle.write("".join(f"{label}\n" for label in labels.tolist()))
    logger.info(f"Wrote {values.size} values of {name} to {out}")


def plot_frame(values: np.ndarray, bins: int, alpha: float | None = None) -> pd.DataFrame:
    """
    Данные для рисунков: гистограмма, ecdf, критические точки gcm/lcm,
    точки максимального отклонения кандидатов и точки долин.

    Столбцы: series, x, y, kind.
    """
    if bins < 1:
        raise UniSplitError("bins must be positive")
    d = make_dataset(values)
    splitter = UniSplitService(alpha=alpha)
    records = []

    counts, edges = np.histogram(values, bins=bins)
    for center, count in zip((edges[:-1] + edges[1:]) / 2, counts):
        records.append(("hist", float(center), float(count), ""))
    for x, f in zip(d.values, d.cumw / d.total):
        records.append(("ecdf", float(x), float(f), ""))

    if d.size > 1:
        for point in gl_set(d.ecdf).points:
            records.append(("critical", point.x, point.f, point.kind.value))
        outcome = splitter.uu.uu_test(d)
        for candidate in outcome.candidates or []:
            lo, hi = d.index_range(candidate.a, candidate.b)
            if hi - lo > 2:
                md = multimodality_degree(d, candidate.a, candidate.b)
                records.append(("md", md.x, md.deviation, candidate.kind.value))

    for vp in splitter.unisplit(d).valley_points.tolist():
        records.append(("vp", vp, float(d.ecdf(vp)), ""))
    return pd.DataFrame.from_records(records, columns=["series", "x", "y", "kind"])


@handle_errors
def plotdata(
    input: Path = typer.Argument(..., help="Файл со значениями"),
    bins: int = typer.Option(50, help="Число столбцов гистограммы"),
    alpha: float | None = typer.Option(None, help="Уровень значимости UU-теста"),
    out: Path | None = typer.Option(None, help="CSV для внешнего построения графиков"),
):
    """Выгружает данные гистограммы, ecdf, gcm/lcm и точек долин в CSV."""
    values, _ = read_values(input)
    frame = plot_frame(values, bins, alpha)
    if out is None:
        typer.echo(frame.to_csv(index=False), nl=False)
        return
    with atomic_output(out) as handle:
        frame.to_csv(handle, index=False)
