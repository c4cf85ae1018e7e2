import logging
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np
import pandas as pd

from app.config.settings import settings
from app.data.io import atomic_output
from app.data.utils import make_dataset
from app.cli.schemas import (
    BenchReport,
    BenchRow,
    BenchSummary,
    BenchTask,
    NoiseReport,
    NoiseTrial,
    Suite,
)
from app.splitting.split_service import UniSplitService
from app.stats.ks import ks_two_sample
from app.stats.scores import nmi
from app.synth.fixtures import TRIMODAL_MEANS, add_tail_outliers, add_valley_noise, trimodal
from app.synth.generators import TABLE3_NAMES, TABLE5_NAMES, builtin, sample_mixture
from app.udmm.density import udmm_sample
from app.udmm.udmm_service import UDMMService


logger = logging.getLogger(__name__)

ALPHA_SUITE_NAMES = ("D4", "D10")
CSV_COLUMNS = ["name", "replicate", "ks", "k", "nmi", "seed"]

VALLEY_NOISE_FRACTION = 0.05
TAIL_OUTLIER_FRACTION = 0.02


def run_task(task: BenchTask) -> BenchRow:
    """
    Один повтор эксперимента.

    table3/alpha: выборка D-k, обучение UDMM, свежая выборка из того же распределения
    и выборка из модели того же размера; в строку идут двухвыборочный KS и K.
    table5: размеченная выборка, UniSplit, NMI найденного разбиения с истинными метками.
    """
    started = time.perf_counter()
    specs = builtin(task.name, task.m)
    values, labels = sample_mixture(specs, task.seed)
    d = make_dataset(values)

    if task.suite == Suite.TABLE5:
        split = UniSplitService(alpha=task.alpha).unisplit(d)
        row = BenchRow(
            name=task.name,
            replicate=task.replicate,
            alpha=task.alpha,
            seed=task.seed,
            k=split.k,
            nmi=nmi(labels, split.assign(values)),
        )
    else:
        model = UDMMService(alpha=task.alpha).fit(d)
        truth_seed, model_seed = (int(s) for s in np.random.SeedSequence(task.seed).generate_state(2))
        truth, _ = sample_mixture(specs, truth_seed)
        generated = udmm_sample(model, truth.size, model_seed)
        row = BenchRow(
            name=task.name,
            replicate=task.replicate,
            alpha=task.alpha,
            seed=task.seed,
            k=model.k,
            ks=ks_two_sample(make_dataset(truth), make_dataset(generated)),
        )

    row.seconds = time.perf_counter() - started
    logger.debug(f"{task.suite.value} {task.name} #{task.replicate}: k={row.k} ks={row.ks} nmi={row.nmi}")
    return row


def _mean_std(values: list[float | None]) -> tuple[float | None, float | None]:
    present = [v for v in values if v is not None]
    if not present:
        return None, None
    return float(np.mean(present)), float(np.std(present))


def summarize(rows: list[BenchRow]) -> list[BenchSummary]:
    groups: dict[tuple[str, float], list[BenchRow]] = defaultdict(list)
    for row in rows:
        groups[(row.name, row.alpha)].append(row)

    summaries = []
    for (name, alpha), group in groups.items():
        k_mean, k_std = _mean_std([float(r.k) for r in group])
        ks_mean, ks_std = _mean_std([r.ks for r in group])
        nmi_mean, nmi_std = _mean_std([r.nmi for r in group])
        summaries.append(
            BenchSummary(
                name=name,
                alpha=alpha,
                replicates=len(group),
                k_mean=k_mean,
                k_std=k_std,
                ks_mean=ks_mean,
                ks_std=ks_std,
                nmi_mean=nmi_mean,
                nmi_std=nmi_std,
                seconds=sum(r.seconds for r in group),
            )
        )
    return summaries


class BenchService:
    """Прогон экспериментальных наборов: повторы выполняются параллельно в процессах."""

    def __init__(
        self,
        alpha: float | None = None,
        replicates: int | None = None,
        m: int | None = None,
        workers: int | None = None,
    ):
        self.alpha = settings.ALPHA if alpha is None else alpha
        self.replicates = settings.BENCH.replicates if replicates is None else replicates
        self.m = settings.BENCH.m if m is None else m
        self.workers = settings.WORKERS if workers is None else workers

    def tasks(self, suite: Suite, names: list[str] | None = None, seed: int = 0) -> list[BenchTask]:
        """Список задач; seed повтора равен seed + номер повтора."""
        suite = Suite(suite)
        if names:
            names = [name.upper() for name in names]
            # неизвестное имя должно упасть до запуска пула
            for name in names:
                builtin(name, self.m)
        elif suite == Suite.TABLE3:
            names = list(TABLE3_NAMES)
        elif suite == Suite.TABLE5:
            names = list(TABLE5_NAMES)
        else:
            names = list(ALPHA_SUITE_NAMES)

        alphas = settings.BENCH.alpha_grid if suite == Suite.ALPHA else [self.alpha]
        return [
            BenchTask(suite=suite, name=name, replicate=r, seed=seed + r, m=self.m, alpha=alpha)
            for name in names
            for alpha in alphas
            for r in range(self.replicates)
        ]

    def run(self, suite: Suite, names: list[str] | None = None, seed: int = 0) -> BenchReport:
        tasks = self.tasks(suite, names, seed)
        logger.info(f"Bench {Suite(suite).value}: {len(tasks)} replicates on {self.workers} workers")

        if self.workers == 1 or len(tasks) == 1:
            rows = [run_task(task) for task in tasks]
        else:
            with ProcessPoolExecutor(max_workers=self.workers) as executor:
                rows = list(executor.map(run_task, tasks))

        return BenchReport(suite=suite, replicates=self.replicates, rows=rows, summaries=summarize(rows))


def bench_frame(report: BenchReport) -> pd.DataFrame:
    """Построчная таблица повторов; у набора alpha добавляется столбец alpha."""
    columns = CSV_COLUMNS + (["alpha"] if report.suite == Suite.ALPHA else [])
    return pd.DataFrame([row.model_dump() for row in report.rows], columns=columns)


def write_bench_csv(report: BenchReport, path: Path) -> None:
    frame = bench_frame(report)
    with atomic_output(path) as handle:
        frame.to_csv(handle, index=False, na_rep="")


class NoiseService:
    """
    Устойчивость к шуму: три гауссовы моды, затем равномерный шум в долинах
    (5% от N) и выбросы Стьюдента слева (2% от N).
    """

    def __init__(self, alpha: float | None = None):
        self.splitter = UniSplitService(alpha=alpha)

    def trial(self, seed: int) -> NoiseTrial:
        noise_seed, outlier_seed = (int(s) for s in np.random.SeedSequence(seed).generate_state(2))
        values, _ = trimodal(seed)
        noisy = add_valley_noise(values, VALLEY_NOISE_FRACTION, noise_seed)
        outliers = add_tail_outliers(values, TAIL_OUTLIER_FRACTION, outlier_seed)[values.size:]
        noisy = np.concatenate([noisy, outliers])

        clean_vps = self.splitter.unisplit(make_dataset(values)).valley_points
        noisy_vps = self.splitter.unisplit(make_dataset(noisy)).valley_points
        shift = None
        if clean_vps.size == noisy_vps.size:
            shift = float(np.max(np.abs(noisy_vps - clean_vps), initial=0.0)) / self.spacing
        logger.debug(f"Noise trial {seed}: {clean_vps.tolist()} -> {noisy_vps.tolist()}")
        return NoiseTrial(
            seed=seed,
            clean_valleys=int(clean_vps.size),
            noisy_valleys=int(noisy_vps.size),
            max_shift=shift,
        )

    @property
    def spacing(self) -> float:
        return float(TRIMODAL_MEANS[1] - TRIMODAL_MEANS[0])

    def run(self, trials: int | None = None, seed: int = 0) -> NoiseReport:
        trials = settings.BENCH.noise_trials if trials is None else trials
        return NoiseReport(spacing=self.spacing, trials=[self.trial(seed + t) for t in range(trials)])
