import numpy as np
import pytest
from scipy.stats import norm

from app.errors import TrainingDataError
from app.nb.nb_service import NaiveBayesService, fit_nb, fold_indices, kfold_accuracy, predict
from app.nb.schemas import GaussianDensity, NBMode
from app.synth.fixtures import rectangles
from tests.helpers import uniform_blocks


def _separable():
    x, labels = uniform_blocks((0.0, 1.0, 40), (5.0, 6.0, 60))
    y = np.tile(np.linspace(0.0, 1.0, 10), 10)
    return np.column_stack([x, y]), labels


def test_priors_follow_class_frequencies():
    features, labels = _separable()
    model = fit_nb(features, labels, mode=NBMode.GAUSSIAN)
    assert model.classes == [0, 1]
    assert model.priors == pytest.approx([0.4, 0.6])
    assert model.n_features == 2


def test_gaussian_densities_match_hand_calculation():
    features, labels = _separable()
    model = fit_nb(features, labels, mode=NBMode.GAUSSIAN)
    density = model.densities[0][0]
    assert isinstance(density, GaussianDensity)
    column = features[labels == 0, 0]
    assert density.mean == pytest.approx(column.mean())
    assert density.std == pytest.approx(column.std(ddof=1))

    row = np.array([0.3, 0.5])
    scores = NaiveBayesService(mode=NBMode.GAUSSIAN).log_scores(model, row)
    expected = np.log(0.4)
    for f in range(2):
        cell = model.densities[0][f]
        expected += norm.logpdf(row[f], loc=cell.mean, scale=cell.std)
    assert scores[0, 0] == pytest.approx(expected)


def test_separable_gaussian_kfold():
    features, labels = _separable()
    result = kfold_accuracy(features, labels, k=5, mode=NBMode.GAUSSIAN, seed=0)
    assert result.mean == 1.0
    assert result.std == 0.0
    assert len(result.fold_accuracies) == 5


def test_udmm_predicts_by_mode():
    features, labels = rectangles(seed=0)
    model = fit_nb(features, labels, mode=NBMode.UDMM)
    assert predict(model, [1.0, 0.5]) == 0
    assert predict(model, [3.0, 0.5]) == 1
    assert predict(model, [5.0, 0.5]) == 0


def test_udmm_beats_gaussian_on_rectangles():
    # у класса 0 две моды по x, гауссова плотность кладёт массу в середину
    features, labels = rectangles(seed=0)
    udmm = NaiveBayesService(mode=NBMode.UDMM)
    gaussian = NaiveBayesService(mode=NBMode.GAUSSIAN)
    udmm_accuracy = np.mean(udmm.predict_many(udmm.fit(features, labels), features) == labels)
    gaussian_accuracy = np.mean(gaussian.predict_many(gaussian.fit(features, labels), features) == labels)
    assert udmm_accuracy >= 0.95
    assert gaussian_accuracy < udmm_accuracy


def test_outside_support_falls_back_to_prior():
    features, labels = _separable()
    model = fit_nb(features, labels, mode=NBMode.UDMM)
    # вне носителя обоих классов все плотности равны нижней границе, побеждает больший prior
    assert predict(model, [100.0, 100.0]) == 1


def test_fit_requires_two_classes():
    features, _ = _separable()
    with pytest.raises(TrainingDataError):
        fit_nb(features, np.zeros(features.shape[0], dtype=np.int64))


def test_fit_requires_rows_per_class():
    features, labels = _separable()
    labels = labels.copy()
    labels[:3] = 2
    with pytest.raises(TrainingDataError, match="class 2"):
        fit_nb(features, labels)


def test_fit_rejects_shape_mismatch():
    features, labels = _separable()
    with pytest.raises(TrainingDataError):
        fit_nb(features, labels[:-1])


def test_fold_indices_partition_rows():
    _, labels = _separable()
    folds = fold_indices(labels, 10, seed=3)
    assert len(folds) == 10
    joined = np.sort(np.concatenate(folds))
    np.testing.assert_array_equal(joined, np.arange(labels.size))
    for fold in folds:
        # стратификация: 4 строки класса 0 и 6 строк класса 1
        assert np.bincount(labels[fold]).tolist() == [4, 6]


def test_fold_indices_errors():
    with pytest.raises(TrainingDataError):
        fold_indices(np.array([0, 1, 0]), 5)
    with pytest.raises(TrainingDataError):
        fold_indices(np.array([0, 1, 0, 1]), 1)
