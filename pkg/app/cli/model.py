import logging
from pathlib import Path

import typer

from app.cli.utils import handle_errors, write_text
from app.data.io import format_values, read_values
from app.data.utils import make_dataset
from app.stats.ks import ks_two_sample
from app.udmm.density import log_likelihood, udmm_sample
from app.udmm.udmm_service import UDMMService, load_model, serialize


logger = logging.getLogger(__name__)


@handle_errors
def fit(
    input: Path = typer.Argument(..., help="Файл со значениями"),
    alpha: float | None = typer.Option(None, help="Уровень значимости UU-теста"),
    out: Path = typer.Option(..., help="Куда записать модель (JSON)"),
):
    """Обучает UDMM и сохраняет модель."""
    values, _ = read_values(input)
    model = UDMMService(alpha=alpha).fit(make_dataset(values))
    write_text(out, serialize(model))

    typer.echo(f"K: {model.k}")
    for j, component in enumerate(model.components):
        typer.echo(f"component {j}: weight={model.weights[j]:.6f} M={component.segments}")
    typer.echo(f"log-likelihood: {log_likelihood(model, values):.6f}")


@handle_errors
def sample(
    model: Path = typer.Argument(..., help="Файл модели"),
    n: int = typer.Option(1000, help="Размер выборки"),
    seed: int = typer.Option(0, help="Зерно генератора"),
    out: Path | None = typer.Option(None, help="Файл для значений (по умолчанию stdout)"),
):
    """Генерирует выборку из сохранённой модели."""
    values = udmm_sample(load_model(model), n, seed)
    if out is None:
        typer.echo(format_values(values), nl=False)
    else:
        write_text(out, format_values(values))


@handle_errors
def evaluate(
    model: Path = typer.Argument(..., help="Файл модели"),
    data: Path = typer.Argument(..., help="Файл со значениями"),
    n: int | None = typer.Option(None, help="Размер выборки из модели (по умолчанию размер данных)"),
    seed: int = typer.Option(0, help="Зерно генератора"),
):
    """Двухвыборочный KS между данными и выборкой из модели."""
    values, _ = read_values(data)
    generated = udmm_sample(load_model(model), values.size if n is None else n, seed)
    statistic = ks_two_sample(make_dataset(values), make_dataset(generated))
    typer.echo(f"ks: {statistic:.6f}")
