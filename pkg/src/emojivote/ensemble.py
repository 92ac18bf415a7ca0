"""Weighted soft-voting ensembles.

The combined distribution is the weight-normalized sum of member
distributions; the predicted class is its argmax (ties to the smallest
index). Two levels: a base ensemble over {MNB, LR, RF}, and a meta ensemble
over the base ensemble trained on original data (Ensemble1) and on
SMOTE-oversampled data (Ensemble2).
"""

from dataclasses import dataclass

import numpy as np

from .classifiers import (
    LrConfig,
    MnbConfig,
    RfConfig,
    lr_fit,
    mnb_fit,
    rf_fit,
)
from .features import LabeledDataset, SparseCountVector
from .resample import SmoteConfig, smote

# Member order for base-ensemble weight triples.
BASE_MEMBER_ORDER = ("mnb", "lr", "rf")

# Hand-tuned voting weights per language: base triple (MNB, LR, RF) and
# meta pair (Ensemble1, Ensemble2).
LANGUAGE_BASE_WEIGHTS = {"es": (1.1, 1.0, 1.0), "en": (1.5, 6.0, 1.0)}
LANGUAGE_META_WEIGHTS = {"es": (3.0, 1.0), "en": (4.0, 1.0)}


def vote_proba(weights, member_probs) -> np.ndarray:
    """Weighted soft vote: sum of w_i * P_i with weights normalized to 1."""
    if len(weights) != len(member_probs):
        raise ValueError(f"{len(weights)} weights for {len(member_probs)} member distributions")
    w = np.asarray(weights, dtype=float)
    if np.any(w <= 0):
        raise ValueError("ensemble weights must be positive")
    w = w / w.sum()
    return sum(wi * np.asarray(p, dtype=float) for wi, p in zip(w, member_probs))


@dataclass(frozen=True)
class EnsembleSpec:
    members: tuple
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.members) != len(self.weights):
            raise ValueError("one weight per member required")
        if any(w <= 0 for w in self.weights):
            raise ValueError("ensemble weights must be positive")

    def predict_proba(self, x: SparseCountVector) -> np.ndarray:
        return vote_proba(self.weights, [m.predict_proba(x) for m in self.members])

    def predict(self, x: SparseCountVector) -> int:
        return int(np.argmax(self.predict_proba(x)))


@dataclass(frozen=True)
class MetaSpec:
    ensemble1: EnsembleSpec  # trained on original data
    ensemble2: EnsembleSpec  # trained on oversampled data
    weights: tuple[float, float]

    def predict_proba(self, x: SparseCountVector) -> np.ndarray:
        return vote_proba(
            self.weights, [self.ensemble1.predict_proba(x), self.ensemble2.predict_proba(x)]
        )

    def predict(self, x: SparseCountVector) -> int:
        return int(np.argmax(self.predict_proba(x)))


def build_base_ensemble(
    dataset: LabeledDataset,
    weights: tuple[float, float, float],
    mnb_cfg: MnbConfig = MnbConfig(),
    lr_cfg: LrConfig = LrConfig(),
    rf_cfg: RfConfig = RfConfig(),
) -> EnsembleSpec:
    """Fit MNB, LR, RF on the dataset and wrap them with voting weights."""
    members = (mnb_fit(dataset, mnb_cfg), lr_fit(dataset, lr_cfg), rf_fit(dataset, rf_cfg))
    return EnsembleSpec(members=members, weights=tuple(float(w) for w in weights))


def build_meta(
    dataset: LabeledDataset,
    smote_cfg: SmoteConfig,
    meta_weights: tuple[float, float],
    base_weights: tuple[float, float, float],
    mnb_cfg: MnbConfig = MnbConfig(),
    lr_cfg: LrConfig = LrConfig(),
    rf_cfg: RfConfig = RfConfig(),
) -> MetaSpec:
    """Ensemble1 on the original data, Ensemble2 on the SMOTE'd data, then a

    fixed-weight soft vote over the two. The meta level is never retrained.
    """
    ensemble1 = build_base_ensemble(dataset, base_weights, mnb_cfg, lr_cfg, rf_cfg)
    ensemble2 = build_base_ensemble(smote(dataset, smote_cfg), base_weights, mnb_cfg, lr_cfg, rf_cfg)
    return MetaSpec(
        ensemble1=ensemble1,
        ensemble2=ensemble2,
        weights=(float(meta_weights[0]), float(meta_weights[1])),
    )
