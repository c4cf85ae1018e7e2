from pathlib import Path

import typer

from app.cli.utils import handle_errors
from app.data.io import read_table
from app.nb.nb_service import NaiveBayesService
from app.nb.schemas import NBMode
from app.synth.fixtures import rectangles


@handle_errors
def nb(
    table: Path | None = typer.Argument(
        None, help="CSV: признаки и метка класса в последнем столбце (по умолчанию - три прямоугольника)"
    ),
    mode: NBMode = typer.Option(NBMode.UDMM, help="Плотности признаков"),
    alpha: float | None = typer.Option(None, help="Уровень значимости UU-теста"),
    folds: int = typer.Option(10, help="Число фолдов"),
    seed: int = typer.Option(0, help="Зерно разбиения на фолды"),
):
    """Точность наивного Байеса по стратифицированной k-кратной кросс-валидации."""
    features, labels = rectangles(seed) if table is None else read_table(table)
    result = NaiveBayesService(mode=mode, alpha=alpha).kfold_accuracy(features, labels, k=folds, seed=seed)
    typer.echo(f"accuracy: {result.mean:.4f} ± {result.std:.4f}")
    typer.echo("folds: " + " ".join(f"{a:.4f}" for a in result.fold_accuracies))
