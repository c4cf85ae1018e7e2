import logging

import typer

from app.config.settings import settings
from .bench import bench, noise
from .data import gen, plotdata, split
from .image import segment
from .model import evaluate, fit, sample
from .nb import nb

app = typer.Typer(
    help="Разбиение одномерных данных на унимодальные подмножества и модель UDMM.",
    no_args_is_help=True,
    add_completion=False,
)


@app.callback()
def configure(verbose: bool = typer.Option(False, "--verbose", "-v", help="Подробный журнал (DEBUG)")):
    logging.basicConfig(
        level=logging.DEBUG if verbose else settings.LOG_LEVEL,
        format="%(asctime)s - %(levelname)s - %(message)s",
        force=True,
    )


app.command("split")(split)
app.command("fit")(fit)
app.command("sample")(sample)
app.command("eval")(evaluate)
app.command("bench")(bench)
app.command("noise")(noise)
app.command("segment")(segment)
app.command("nb")(nb)
app.command("gen")(gen)
app.command("plotdata")(plotdata)
