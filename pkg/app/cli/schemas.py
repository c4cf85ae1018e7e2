from enum import Enum

from pydantic import BaseModel, Field, model_validator


class Suite(str, Enum):
    TABLE3 = "table3"
    TABLE5 = "table5"
    ALPHA = "alpha"


class BenchTask(BaseModel):
    suite: Suite
    name: str
    replicate: int = Field(ge=0)
    seed: int = Field(ge=0)
    m: int = Field(ge=1)
    alpha: float = Field(gt=0, le=0.5)


class BenchRow(BaseModel):
    """Результат одного повтора: ks для table3/alpha, nmi для table5."""

    name: str
    replicate: int
    alpha: float
    seed: int
    k: int = Field(ge=1)
    ks: float | None = None
    nmi: float | None = None
    seconds: float = Field(default=0.0, ge=0)


class BenchSummary(BaseModel):
    name: str
    alpha: float
    replicates: int = Field(ge=1)
    k_mean: float
    k_std: float
    ks_mean: float | None = None
    ks_std: float | None = None
    nmi_mean: float | None = None
    nmi_std: float | None = None
    seconds: float


class BenchReport(BaseModel):
    """
    Итог прогона набора: строки по каждому повтору и агрегаты по (name, alpha).
    """

    suite: Suite
    replicates: int = Field(ge=1)
    rows: list[BenchRow]
    summaries: list[BenchSummary]

    @model_validator(mode="after")
    def check_replicates(self) -> "BenchReport":
        for summary in self.summaries:
            if summary.replicates != self.replicates:
                raise ValueError(
                    f"{summary.name}: {summary.replicates} replicates aggregated, {self.replicates} requested"
                )
        if len(self.rows) != self.replicates * len(self.summaries):
            raise ValueError("every summary must aggregate exactly its own rows")
        return self

    def summary(self, name: str, alpha: float | None = None) -> BenchSummary:
        for summary in self.summaries:
            if summary.name == name and (alpha is None or summary.alpha == alpha):
                return summary
        raise KeyError(name)


class NoiseTrial(BaseModel):
    seed: int
    clean_valleys: int
    noisy_valleys: int
    # None, если число долин изменилось
    max_shift: float | None = None

    @property
    def preserved(self) -> bool:
        return self.clean_valleys == self.noisy_valleys and self.max_shift is not None


class NoiseReport(BaseModel):
    spacing: float = Field(gt=0)
    trials: list[NoiseTrial]

    @property
    def preserved(self) -> int:
        return sum(trial.preserved for trial in self.trials)
