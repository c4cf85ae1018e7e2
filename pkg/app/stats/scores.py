import numpy as np
from sklearn.metrics import normalized_mutual_info_score

from app.errors import UniSplitError


def nmi(labels_a, labels_b) -> float:
    """
    Нормированная взаимная информация двух разбиений (нормировка - среднее арифметическое энтропий).

    Два одноклассовых разбиения дают 1.
    """
    labels_a = np.asarray(labels_a).ravel()
    labels_b = np.asarray(labels_b).ravel()
    if labels_a.size != labels_b.size:
        raise UniSplitError(f"label sequences differ in length: {labels_a.size} != {labels_b.size}")
    if labels_a.size == 0:
        raise UniSplitError("label sequences are empty")
    score = normalized_mutual_info_score(labels_a, labels_b, average_method="arithmetic")
    return float(min(max(score, 0.0), 1.0))
