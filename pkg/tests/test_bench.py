import pandas as pd
import pytest
from pydantic import ValidationError

from app.cli.bench_service import CSV_COLUMNS, BenchService, NoiseService, bench_frame, summarize, write_bench_csv
from app.cli.schemas import BenchReport, BenchRow, Suite
from app.errors import UnknownDistributionError


@pytest.fixture
def service() -> BenchService:
    return BenchService(alpha=0.01, replicates=2, m=20, workers=1)


def test_task_seeds(service):
    tasks = service.tasks(Suite.TABLE3, ["d1", "D9"], seed=5)
    assert [(t.name, t.replicate, t.seed) for t in tasks] == [
        ("D1", 0, 5),
        ("D1", 1, 6),
        ("D9", 0, 5),
        ("D9", 1, 6),
    ]
    assert all(t.m == 20 and t.alpha == 0.01 for t in tasks)


def test_default_task_names(service):
    assert {t.name for t in service.tasks(Suite.TABLE3)} == {f"D{i}" for i in range(1, 13)}
    assert {t.name for t in service.tasks(Suite.TABLE5)} == {f"D{i}" for i in range(13, 23)}


def test_alpha_suite_covers_grid(service):
    tasks = service.tasks(Suite.ALPHA)
    assert {t.name for t in tasks} == {"D4", "D10"}
    assert sorted({t.alpha for t in tasks}) == [0.01, 0.05, 0.1]
    assert len(tasks) == 2 * 3 * 2


def test_unknown_name_fails_before_running(service):
    with pytest.raises(UnknownDistributionError):
        service.tasks(Suite.TABLE3, ["D99"])


def test_table5_two_blocks(service):
    report = service.run(Suite.TABLE5, ["D14"])
    summary = report.summary("D14")
    assert summary.replicates == 2
    assert summary.nmi_mean == pytest.approx(1.0)
    assert summary.k_mean == 2.0
    assert summary.ks_mean is None
    assert [row.seed for row in report.rows] == [0, 1]


def test_table3_rows_carry_ks(service):
    report = service.run(Suite.TABLE3, ["D7"], seed=3)
    for row in report.rows:
        assert 0.0 <= row.ks <= 1.0
        assert row.nmi is None
        assert row.k >= 1


def test_run_is_deterministic(service):
    first = service.run(Suite.TABLE3, ["D7"])
    second = service.run(Suite.TABLE3, ["D7"])
    assert [(r.k, r.ks) for r in first.rows] == [(r.k, r.ks) for r in second.rows]


def test_bench_csv(tmp_path, service):
    report = service.run(Suite.TABLE5, ["D14"])
    path = tmp_path / "bench.csv"
    write_bench_csv(report, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "name,replicate,ks,k,nmi,seed"
    assert lines[1].startswith("D14,0,,2,")
    assert lines[2].startswith("D14,1,,2,")
    assert lines[2].endswith(",1")
    frame = pd.read_csv(path)
    assert frame["ks"].isna().all()
    assert frame["nmi"].tolist() == pytest.approx([1.0, 1.0])


def test_alpha_frame_has_alpha_column():
    rows = [BenchRow(name="D4", replicate=0, alpha=0.05, seed=0, k=3, ks=0.02)]
    report = BenchReport(suite=Suite.ALPHA, replicates=1, rows=rows, summaries=summarize(rows))
    assert list(bench_frame(report).columns) == CSV_COLUMNS + ["alpha"]


def test_summarize_groups_by_name_and_alpha():
    rows = [
        BenchRow(name="D4", replicate=r, alpha=alpha, seed=r, k=k, ks=ks)
        for alpha in (0.01, 0.05)
        for r, k, ks in ((0, 3, 0.02), (1, 4, 0.04))
    ]
    summaries = summarize(rows)
    assert [(s.name, s.alpha) for s in summaries] == [("D4", 0.01), ("D4", 0.05)]
    assert summaries[0].k_mean == 3.5
    assert summaries[0].k_std == 0.5
    assert summaries[0].ks_mean == pytest.approx(0.03)
    assert summaries[0].nmi_mean is None


def test_report_checks_replicates():
    rows = [BenchRow(name="D1", replicate=0, alpha=0.01, seed=0, k=2, ks=0.03)]
    with pytest.raises(ValidationError):
        BenchReport(suite=Suite.TABLE3, replicates=2, rows=rows, summaries=summarize(rows))


def test_report_summary_lookup(service):
    report = service.run(Suite.TABLE5, ["D14"])
    with pytest.raises(KeyError):
        report.summary("D15")


def test_noise_trial_counts():
    trial = NoiseService(alpha=0.01).trial(0)
    assert trial.clean_valleys >= 2
    assert trial.preserved == (trial.max_shift is not None)
    if trial.preserved:
        assert 0.0 <= trial.max_shift < 1.0
