class UniSplitError(ValueError):
    """Базовая ошибка библиотеки. CLI превращает её в однострочную диагностику."""

    message = "unisplit error"

    def __init__(self, message: str | None = None):
        super().__init__(message or self.message)


class EmptyDatasetError(UniSplitError):
    message = "empty dataset"


class NonFiniteValueError(UniSplitError):
    message = "non-finite value"


class DegenerateIntervalError(UniSplitError):
    message = "degenerate interval"


class EmptyIntervalError(UniSplitError):
    message = "empty interval"


class NoValleyError(UniSplitError):
    message = "no valley exists"


class UnstablePartitionError(UniSplitError):
    message = "unstable partition"


class ModelFileError(UniSplitError):
    message = "malformed model file"


class ImageFormatError(UniSplitError):
    message = "malformed image"


class InvalidSpecError(UniSplitError):
    message = "invalid distribution parameters"


class UnknownDistributionError(UniSplitError):
    message = "unknown distribution"


class TrainingDataError(UniSplitError):
    message = "invalid training data"


class ZeroVarianceError(UniSplitError):
    message = "zero variance"


class InputFormatError(UniSplitError):
    message = "malformed input file"
