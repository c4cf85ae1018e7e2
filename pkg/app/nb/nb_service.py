import logging

import numpy as np
from scipy.stats import norm
from sklearn.model_selection import StratifiedKFold

from app.config.settings import settings
from app.data.utils import make_dataset
from app.errors import TrainingDataError, ZeroVarianceError
from app.nb.schemas import GaussianDensity, KFoldResult, NBMode, NBModel
from app.udmm.density import udmm_pdf
from app.udmm.udmm_service import UDMMService


logger = logging.getLogger(__name__)

MIN_CLASS_ROWS = 4


class NaiveBayesService:
    """
    Наивный Байес с плотностями признаков UDMM (UDMM-NB) или гауссовыми (GNB).
    """

    def __init__(self, mode: NBMode = NBMode.UDMM, alpha: float | None = None):
        self.mode = NBMode(mode)
        self.alpha = settings.ALPHA if alpha is None else alpha
        self.floor = settings.DENSITY_FLOOR

    def fit(self, features: np.ndarray, labels: np.ndarray) -> NBModel:
        """
        Обучает плотности по каждой паре (класс, признак).

        :param features: матрица (n, d).
        :param labels: целые метки классов длины n.
        :return: NBModel с априорными вероятностями, равными частотам классов.
        :raises TrainingDataError: меньше двух классов или в классе меньше 4 строк.
        """
        features = np.asarray(features, dtype=np.float64)
        labels = np.asarray(labels)
        if features.ndim != 2 or features.shape[0] != labels.size:
            raise TrainingDataError("features must be a matrix with one row per label")

        classes, counts = np.unique(labels, return_counts=True)
        if classes.size < 2:
            raise TrainingDataError("at least two classes are required")
        small = classes[counts < MIN_CLASS_ROWS]
        if small.size:
            raise TrainingDataError(f"class {small[0]} has fewer than {MIN_CLASS_ROWS} rows")

        feature_range = features.max(axis=0) - features.min(axis=0)
        densities = []
        for label in classes:
            rows = features[labels == label]
            if self.mode == NBMode.GAUSSIAN:
                densities.append(
                    [self._fit_gaussian(rows[:, f], feature_range[f], f) for f in range(rows.shape[1])]
                )
            else:
                udmm = UDMMService(alpha=self.alpha)
                densities.append([udmm.fit(make_dataset(rows[:, f])) for f in range(rows.shape[1])])

        model = NBModel(
            mode=self.mode,
            classes=classes.tolist(),
            priors=(counts / counts.sum()).tolist(),
            densities=densities,
        )
        logger.info(f"Fitted {self.mode.value} naive Bayes on {labels.size} rows, {classes.size} classes")
        return model

    @staticmethod
    def _fit_gaussian(column: np.ndarray, feature_range: float, feature: int) -> GaussianDensity:
        std = max(float(np.std(column, ddof=1)), 1e-9 * float(feature_range))
        if std <= 0:
            raise ZeroVarianceError(f"zero variance in feature {feature}")
        return GaussianDensity(mean=float(np.mean(column)), std=std)

    def log_scores(self, m: NBModel, rows: np.ndarray) -> np.ndarray:
        """Матрица (n, C): log P(C) + сумма log p(z_i | C) с плотностью, ограниченной снизу."""
        rows = np.atleast_2d(np.asarray(rows, dtype=np.float64))
        scores = np.tile(np.log(m.priors), (rows.shape[0], 1))
        for c, cell_models in enumerate(m.densities):
            for f, density in enumerate(cell_models):
                if isinstance(density, GaussianDensity):
                    pdf = norm.pdf(rows[:, f], loc=density.mean, scale=density.std)
                else:
                    pdf = udmm_pdf(density, rows[:, f])
                scores[:, c] += np.log(np.maximum(pdf, self.floor))
        return scores

    def predict_many(self, m: NBModel, rows: np.ndarray) -> np.ndarray:
        # argmax берёт первый максимум - при равенстве побеждает меньший индекс класса
        best = np.argmax(self.log_scores(m, rows), axis=1)
        return np.asarray(m.classes)[best]

    def predict(self, m: NBModel, row) -> int:
        return int(self.predict_many(m, np.asarray(row, dtype=np.float64).reshape(1, -1))[0])

    def kfold_accuracy(
        self, features: np.ndarray, labels: np.ndarray, k: int = 10, seed: int | None = None
    ) -> KFoldResult:
        """
        Стратифицированная k-кратная кросс-валидация.

        :return: средняя точность и её стандартное отклонение по фолдам.
        :raises TrainingDataError: строк меньше, чем фолдов.
        """
        features = np.asarray(features, dtype=np.float64)
        labels = np.asarray(labels)
        accuracies = []
        for fold, test_idx in enumerate(fold_indices(labels, k, seed)):
            train = np.ones(labels.size, dtype=bool)
            train[test_idx] = False
            model = self.fit(features[train], labels[train])
            predicted = self.predict_many(model, features[test_idx])
            accuracies.append(float(np.mean(predicted == labels[test_idx])))
            logger.debug(f"Fold {fold}: accuracy {accuracies[-1]:.4f}")

        return KFoldResult(
            mean=float(np.mean(accuracies)),
            std=float(np.std(accuracies)),
            fold_accuracies=accuracies,
        )


def fold_indices(labels: np.ndarray, k: int, seed: int | None = None) -> list[np.ndarray]:
    """Индексы тестовых частей стратифицированного разбиения на k фолдов."""
    labels = np.asarray(labels)
    if k < 2:
        raise TrainingDataError("at least two folds are required")
    if labels.size < k:
        raise TrainingDataError(f"{labels.size} rows cannot form {k} folds")
    splitter = StratifiedKFold(n_splits=k, shuffle=True, random_state=seed)
    return [test for _, test in splitter.split(np.zeros((labels.size, 1)), labels)]


def fit_nb(features, labels, mode: NBMode = NBMode.UDMM, alpha: float | None = None) -> NBModel:
    return NaiveBayesService(mode=mode, alpha=alpha).fit(features, labels)


def predict(m: NBModel, row) -> int:
    return NaiveBayesService(mode=m.mode).predict(m, row)


def kfold_accuracy(
    features, labels, k: int = 10, mode: NBMode = NBMode.UDMM, alpha: float | None = None, seed: int | None = None
) -> KFoldResult:
    return NaiveBayesService(mode=mode, alpha=alpha).kfold_accuracy(features, labels, k=k, seed=seed)
