from pathlib import Path

import typer

from app.cli.utils import handle_errors
from app.data.io import atomic_outputs
from app.imgseg.image_io import dump_pgm, read_image
from app.imgseg.imgseg_service import ImageSegmentationService


@handle_errors
def segment(
    image: Path = typer.Argument(..., help="PGM (P5) или PPM (P6)"),
    alpha: float | None = typer.Option(None, help="Уровень значимости UU-теста"),
    out: Path = typer.Option(..., help="Перекрашенное изображение PGM; отчёт пишется рядом (.txt)"),
):
    """Сегментирует изображение по яркости и перекрашивает сегменты их средней яркостью."""
    img = read_image(image)
    service = ImageSegmentationService(alpha=alpha)
    segmentation = service.segment(img)
    recolored = service.recolor(img, segmentation.labels)
    report = service.segment_report(img, segmentation)

    # изображение и отчёт появляются вместе или не появляются вовсе
    with atomic_outputs((out.with_suffix(".txt"), "w"), (out, "wb")) as (report_handle, image_handle):
        report_handle.write(report)
        dump_pgm(recolored, image_handle)
    typer.echo(report, nl=False)
