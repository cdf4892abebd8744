"""Precision, recall and F1 of predicted pairs against ground truth."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable


def _ratio(a: int, b: int) -> Fraction:
    return Fraction(a, b) if b else Fraction(0)


@dataclass
class EvalReport:
    tp: int
    fp: int
    fn: int
    precision: Fraction
    recall: Fraction
    f1: Fraction
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = asdict(self)
        extra = d.pop("extra")
        for k in ("precision", "recall", "f1"):
            v = getattr(self, k)
            d[k] = round(float(v), 6)
            d[k + "_exact"] = str(v)
        d.update(extra)
        return d


def score_pairs(predicted: Iterable[tuple[str, str]], truth: Iterable[tuple[str, str]]) -> EvalReport:
    """0/0 ratios count as 0, so an empty prediction scores P = R = F1 = 0."""
    pred, gold = set(predicted), set(truth)
    tp = len(pred & gold)
    fp = len(pred) - tp
    fn = len(gold) - tp
    p = _ratio(tp, tp + fp)
    r = _ratio(tp, tp + fn)
    f1 = 2 * p * r / (p + r) if p + r else Fraction(0)
    return EvalReport(tp, fp, fn, p, r, f1)
