import numpy as np
import pytest
from PIL import Image
from typer.testing import CliRunner

from app.cli import app
from app.config.settings import settings
from app.data.io import write_values
from app.imgseg.image_io import write_pgm
from app.imgseg.schemas import GrayImage
from tests.helpers import uniform_blocks


runner = CliRunner()


@pytest.fixture
def blocks_csv(tmp_path, d14):
    values, labels = d14
    path = tmp_path / "d14.csv"
    path.write_text("value,label\n" + "".join(f"{float(v)!r},{label}\n" for v, label in zip(values, labels)))
    return path


@pytest.fixture
def blocks_txt(tmp_path, d14):
    path = tmp_path / "d14.txt"
    write_values(path, d14[0])
    return path


def test_gen_writes_values_and_labels(tmp_path):
    out = tmp_path / "d14.txt"
    result = runner.invoke(app, ["gen", "D14", "--seed", "1", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert len(out.read_text().splitlines()) == 500
    labels = (tmp_path / "d14.labels.txt").read_text().split()
    assert labels.count("0") == 300
    assert labels.count("1") == 200


def test_gen_to_stdout():
    result = runner.invoke(app, ["gen", "D1", "--m", "2", "--seed", "0"])
    assert result.exit_code == 0
    assert len(result.output.splitlines()) == 26


def test_split_with_labels_column(blocks_csv):
    result = runner.invoke(app, ["split", str(blocks_csv)])
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert lines[0] == "k: 2"
    assert lines[2] == "subset 0: size=300 range=[-1.0, 3.0]"
    assert lines[3] == "subset 1: size=200 range=[8.0, 10.0]"
    assert lines[-1] == "nmi: 1.0000"


def test_split_with_labels_file(tmp_path):
    out = tmp_path / "d18.txt"
    runner.invoke(app, ["gen", "D18", "--seed", "2", "--out", str(out)])
    result = runner.invoke(app, ["split", str(out), "--labels", str(tmp_path / "d18.labels.txt")])
    assert result.exit_code == 0, result.output
    assert result.output.startswith("k: ")
    assert "nmi: " in result.output


def test_split_missing_file(tmp_path):
    result = runner.invoke(app, ["split", str(tmp_path / "missing.txt")])
    assert result.exit_code == 1
    assert result.output.startswith("error: ")
    assert "k: " not in result.output


def test_split_rejects_garbage(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1.0\nabc\n")
    result = runner.invoke(app, ["split", str(path)])
    assert result.exit_code == 1
    assert result.output.startswith("error: ")


def test_fit_sample_eval(tmp_path, blocks_txt):
    model = tmp_path / "model.json"
    result = runner.invoke(app, ["fit", str(blocks_txt), "--out", str(model)])
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert lines[0] == "K: 2"
    assert lines[1].startswith("component 0: weight=0.600000 M=")
    assert lines[-1].startswith("log-likelihood: ")
    assert model.exists()

    sample_out = tmp_path / "sample.txt"
    result = runner.invoke(app, ["sample", str(model), "--n", "100", "--seed", "1", "--out", str(sample_out)])
    assert result.exit_code == 0, result.output
    values = np.loadtxt(sample_out)
    assert values.size == 100
    assert np.all((values >= -1.0) & (values <= 10.0))

    result = runner.invoke(app, ["eval", str(model), str(blocks_txt), "--n", "5000"])
    assert result.exit_code == 0, result.output
    assert result.output.startswith("ks: ")
    assert float(result.output.split()[1]) < 0.1


def test_fit_failure_leaves_no_model(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing\n")
    model = tmp_path / "model.json"
    result = runner.invoke(app, ["fit", str(empty), "--out", str(model)])
    assert result.exit_code == 1
    assert result.output.startswith("error: ")
    assert not model.exists()


def test_eval_reports_bad_model_field(tmp_path, blocks_txt):
    model = tmp_path / "model.json"
    model.write_text('{"weights": [0.8], "valley_points": [], "components": [{"breakpoints": [0, 1], "weights": [1]}]}')
    result = runner.invoke(app, ["eval", str(model), str(blocks_txt)])
    assert result.exit_code == 1
    assert result.output.startswith("error: weights")


def test_bench_table5_csv(tmp_path, monkeypatch):
    monkeypatch.setattr(settings, "THREADS", 1)
    csv = tmp_path / "bench.csv"
    result = runner.invoke(
        app, ["bench", "--suite", "table5", "--names", "D14", "--replicates", "2", "--csv", str(csv)]
    )
    assert result.exit_code == 0, result.output
    assert "D14" in result.output
    assert csv.read_text().splitlines()[0] == "name,replicate,ks,k,nmi,seed"


def test_bench_unknown_name():
    result = runner.invoke(app, ["bench", "--names", "D42", "--replicates", "1"])
    assert result.exit_code == 1
    assert result.output.startswith("error: ")


def test_noise():
    result = runner.invoke(app, ["noise", "--trials", "1"])
    assert result.exit_code == 0, result.output
    assert "noise robustness" in result.output


def test_segment(tmp_path):
    pixels = np.full((8, 10), 10, dtype=np.uint8)
    pixels[:, 5:] = 200
    image = tmp_path / "two.pgm"
    write_pgm(GrayImage(pixels=pixels), image)

    out = tmp_path / "out.pgm"
    result = runner.invoke(app, ["segment", str(image), "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert result.output.startswith("k: 2")
    assert out.exists()
    assert (tmp_path / "out.txt").read_text() == result.output


def test_segment_writes_both_outputs_or_neither(tmp_path, monkeypatch):
    pixels = np.full((8, 10), 10, dtype=np.uint8)
    pixels[:, 5:] = 200
    image = tmp_path / "two.pgm"
    write_pgm(GrayImage(pixels=pixels), image)

    def broken_dump(img, handle):
        handle.write(b"P5")
        raise OSError("disk full")

    monkeypatch.setattr("app.cli.image.dump_pgm", broken_dump)
    result = runner.invoke(app, ["segment", str(image), "--out", str(tmp_path / "out.pgm")])
    assert result.exit_code == 1
    assert result.output.startswith("error: disk full")
    assert sorted(p.name for p in tmp_path.iterdir()) == ["two.pgm"]


def test_segment_rejects_png(tmp_path):
    image = tmp_path / "image.png"
    Image.fromarray(np.zeros((2, 2), dtype=np.uint8)).save(image, format="PNG")
    result = runner.invoke(app, ["segment", str(image), "--out", str(tmp_path / "out.pgm")])
    assert result.exit_code == 1
    assert result.output.startswith("error: malformed image")


def test_nb_on_table(tmp_path):
    x, labels = uniform_blocks((0.0, 1.0, 40), (5.0, 6.0, 60))
    y = np.tile(np.linspace(0.0, 1.0, 10), 10)
    table = tmp_path / "table.csv"
    table.write_text("".join(f"{float(a)!r},{float(b)!r},{c}\n" for a, b, c in zip(x, y, labels)))

    result = runner.invoke(app, ["nb", str(table), "--mode", "gaussian", "--folds", "5"])
    assert result.exit_code == 0, result.output
    assert result.output.splitlines()[0] == "accuracy: 1.0000 ± 0.0000"


def test_plotdata(blocks_txt):
    result = runner.invoke(app, ["plotdata", str(blocks_txt), "--bins", "10"])
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert lines[0] == "series,x,y,kind"
    series = [line.split(",")[0] for line in lines[1:]]
    assert series.count("hist") == 10
    assert series.count("ecdf") == 500
    assert series.count("vp") == 1
    assert "critical" in series
