"""Confusion matrix, per-class precision/recall/F1, macro averages, accuracy.

Conventions: precision is 0 when nothing was predicted for the class, recall
is 0 when the class has no gold instances, F1 is 0 when P + R = 0. Macro
averages divide by the declared number of classes, including classes absent
from the test data.
"""

import csv
import io
from dataclasses import dataclass

import numpy as np

from .corpus import LabelMapping
from .exceptions import DataError


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class EvalReport:
    confusion: np.ndarray  # (k, k); rows gold, columns predicted
    per_class: list[ClassMetrics]
    macro_precision: float
    macro_recall: float
    macro_f1: float
    accuracy: float


def confusion(gold, pred, k: int) -> np.ndarray:
    """M[g][p] = number of instances with gold class g predicted as p."""
    if len(gold) != len(pred):
        raise DataError(f"gold has {len(gold)} labels but pred has {len(pred)}")
    m = np.zeros((k, k), dtype=np.int64)
    for g, p in zip(gold, pred):
        if not (0 <= g < k and 0 <= p < k):
            raise DataError(f"label pair ({g}, {p}) out of range [0, {k})")
        m[g, p] += 1
    return m


def evaluate(m: np.ndarray) -> EvalReport:
    m = np.asarray(m)
    k = m.shape[0]
    total = m.sum()
    if total == 0:
        raise DataError("cannot evaluate an empty confusion matrix")
    per_class = []
    for c in range(k):
        tp = m[c, c]
        fp = m[:, c].sum() - tp
        fn = m[c, :].sum() - tp
        p = tp / (tp + fp) if tp + fp > 0 else 0.0
        r = tp / (tp + fn) if tp + fn > 0 else 0.0
        f = 2 * p * r / (p + r) if p + r > 0 else 0.0
        per_class.append(ClassMetrics(precision=float(p), recall=float(r), f1=float(f)))
    return EvalReport(
        confusion=m,
        per_class=per_class,
        macro_precision=sum(c.precision for c in per_class) / k,
        macro_recall=sum(c.recall for c in per_class) / k,
        macro_f1=sum(c.f1 for c in per_class) / k,
        accuracy=float(np.trace(m) / total),
    )


def report_render(report: EvalReport, mapping: LabelMapping) -> tuple[str, str]:
    """Human-readable metrics table plus the confusion matrix as a CSV grid

    (header row/column of display strings). Returns (text, grid_csv).
    """
    k = report.confusion.shape[0]
    if mapping.num_classes != k:
        raise DataError(f"mapping covers {mapping.num_classes} classes, report has {k}")
    names = [mapping.display(c) for c in range(k)]

    lines = [f"{'class':>12}  {'F1':>6}  {'P':>6}  {'R':>6}"]
    for name, cm in zip(names, report.per_class):
        lines.append(f"{name:>12}  {cm.f1:6.2f}  {cm.precision:6.2f}  {cm.recall:6.2f}")
    # Macro line mirrors the per-language results tables: F1 / P / R / Acc.
    lines.append(
        f"{'macro':>12}  {report.macro_f1:6.2f}  {report.macro_precision:6.2f}  "
        f"{report.macro_recall:6.2f}  acc {report.accuracy:6.2f}"
    )
    text = "\n".join(lines) + "\n"

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["gold\\pred"] + names)
    for name, row in zip(names, report.confusion):
        writer.writerow([name] + [int(v) for v in row])
    return text, buf.getvalue()
