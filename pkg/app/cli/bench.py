from pathlib import Path

import typer
from rich.table import Table

from app.cli.bench_service import BenchService, NoiseService, write_bench_csv
from app.cli.schemas import BenchReport, NoiseReport, Suite
from app.cli.utils import console, fmt, handle_errors


def _pm(mean: float | None, std: float | None, digits: int = 4) -> str:
    return "-" if mean is None else f"{fmt(mean, digits)} ± {fmt(std, digits)}"


def render_report(report: BenchReport) -> Table:
    table = Table(title=f"{report.suite.value}: {report.replicates} replicates")
    for column in ("name", "alpha", "KS", "k", "NMI", "time, s"):
        table.add_column(column, justify="left" if column == "name" else "right")
    for s in report.summaries:
        table.add_row(
            s.name,
            f"{s.alpha:g}",
            _pm(s.ks_mean, s.ks_std),
            _pm(s.k_mean, s.k_std, 2),
            _pm(s.nmi_mean, s.nmi_std, 2),
            f"{s.seconds:.1f}",
        )
    return table


def render_noise(report: NoiseReport) -> Table:
    table = Table(title=f"noise robustness: {report.preserved}/{len(report.trials)} preserved")
    for column in ("seed", "clean valleys", "noisy valleys", "max shift / spacing"):
        table.add_column(column, justify="right")
    for trial in report.trials:
        table.add_row(str(trial.seed), str(trial.clean_valleys), str(trial.noisy_valleys), fmt(trial.max_shift, 3))
    return table


@handle_errors
def bench(
    suite: Suite = typer.Option(Suite.TABLE3, help="Набор экспериментов"),
    names: str | None = typer.Option(None, help="Ограничить набор, например D1,D9"),
    replicates: int | None = typer.Option(None, help="Число повторов на распределение"),
    m: int | None = typer.Option(None, help="Множитель размера для D1-D12"),
    alpha: float | None = typer.Option(None, help="Уровень значимости (кроме набора alpha)"),
    seed: int = typer.Option(0, help="Зерно первого повтора; повтор r получает seed + r"),
    csv: Path | None = typer.Option(None, help="CSV по повторам: name, replicate, ks, k, nmi, seed"),
):
    """Повторяет эксперименты с синтетическими распределениями D1-D22."""
    selected = [name.strip() for name in names.split(",") if name.strip()] if names else None
    report = BenchService(alpha=alpha, replicates=replicates, m=m).run(suite, selected, seed)
    if csv is not None:
        write_bench_csv(report, csv)
    console.print(render_report(report))


@handle_errors
def noise(
    trials: int | None = typer.Option(None, help="Число испытаний"),
    alpha: float | None = typer.Option(None, help="Уровень значимости UU-теста"),
    seed: int = typer.Option(0, help="Зерно первого испытания"),
):
    """Устойчивость точек долин к шуму в долинах и выбросам в хвосте."""
    report = NoiseService(alpha=alpha).run(trials, seed)
    console.print(render_noise(report))
