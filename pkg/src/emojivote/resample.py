"""SMOTE oversampling: bring every class up to the majority-class count by
interpolating between a minority point and one of its k nearest same-class
neighbors (Euclidean distance over the count vectors).
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DataError
from .features import LabeledDataset, SparseCountVector


@dataclass(frozen=True)
class SmoteConfig:
    k_neighbors: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.k_neighbors < 1:
            raise ValueError("k_neighbors must be >= 1")


@dataclass(frozen=True)
class ResamplePlan:
    original_counts: list[int]
    target: int
    synthetic_counts: list[int]

    @property
    def total(self) -> int:
        return self.target * len(self.original_counts)


def plan_resample(dataset: LabeledDataset) -> ResamplePlan:
    """Per-class synthesis quota so every class reaches the majority count."""
    counts = [0] * dataset.num_classes
    for lab in dataset.labels:
        counts[lab] += 1
    for c, n in enumerate(counts):
        if n == 0:
            raise DataError(f"class {c} has no instances; cannot plan oversampling")
    target = max(counts)
    return ResamplePlan(
        original_counts=counts, target=target, synthetic_counts=[target - n for n in counts]
    )


def nearest_neighbors(points: np.ndarray, k: int) -> list[list[int]]:
    """All-pairs k-NN by Euclidean distance, self excluded, ties broken by

    lower row index. Brute force; class sizes here are small enough.
    """
    n = len(points)
    out = []
    for i in range(n):
        d2 = ((points - points[i]) ** 2).sum(axis=1)
        d2[i] = np.inf
        order = np.argsort(d2, kind="stable")  # stable keeps lower index first on ties
        out.append([int(j) for j in order[:k]])
    return out


def smote(dataset: LabeledDataset, cfg: SmoteConfig = SmoteConfig()) -> LabeledDataset:
    """Original rows verbatim, followed by synthetic rows grouped by class.

    Synthetic row: s = x + g * (nn - x) with g uniform on [0, 1]; parents are
    cycled through in dataset order, the neighbor is drawn uniformly from the
    parent's k-NN list (k capped at class size - 1). A singleton class is
    oversampled by duplication. Deterministic given the seed: each class uses
    an RNG stream derived from (seed, class index).
    """
    plan = plan_resample(dataset)
    rows = list(dataset.rows)
    labels = list(dataset.labels)
    for c in range(dataset.num_classes):
        quota = plan.synthetic_counts[c]
        if quota == 0:
            continue
        member_idx = [i for i, lab in enumerate(dataset.labels) if lab == c]
        n_c = len(member_idx)
        rng = np.random.default_rng([cfg.seed, c])
        if n_c == 1:
            rows.extend([dataset.rows[member_idx[0]]] * quota)
            labels.extend([c] * quota)
            continue
        points = np.stack([dataset.rows[i].to_dense() for i in member_idx])
        knn = nearest_neighbors(points, min(cfg.k_neighbors, n_c - 1))
        for s in range(quota):
            parent = s % n_c
            neighbor = knn[parent][rng.integers(len(knn[parent]))]
            g = rng.random()
            synth = points[parent] + g * (points[neighbor] - points[parent])
            rows.append(SparseCountVector.from_dense(synth))
            labels.append(c)
    return LabeledDataset(
        rows=rows, labels=labels, num_classes=dataset.num_classes, dimension=dataset.dimension
    )
