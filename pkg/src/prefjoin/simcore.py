"""Set similarity measures, overlap thresholds, prefix lengths and lazy bounds.

Every measure is evaluated from three integers: the overlap ``o = |r & s|`` and
the two set sizes. Values come back as ``(num, den)`` integer pairs or as
:class:`ExactSim`; cosine works on the squared value throughout.

Tversky is asymmetric: ``r`` is always the R-side record and ``alpha`` weights
``|r|``. Swapping the sides changes the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .model import ExactSim, SimKind, TokenSet

MEASURES = ("jaccard", "overlap", "dice", "cosine", "tversky")


class EmptySetError(ValueError):
    pass


def _ceil(x: Fraction) -> int:
    return -(-x.numerator // x.denominator)


def _ratio_fn(kind, alpha):
    if kind == "jaccard":
        return lambda o, lr, ls: (o, lr + ls - o)
    if kind == "overlap":
        return lambda o, lr, ls: (o, lr if lr > ls else ls)
    if kind == "dice":
        return lambda o, lr, ls: (2 * o, lr + ls)
    if kind == "cosine":
        return lambda o, lr, ls: (o * o, lr * ls)
    p, q = alpha.numerator, alpha.denominator
    return lambda o, lr, ls: (o * q, p * lr + (q - p) * ls)


@dataclass(frozen=True)
class SimilarityMeasure:
    kind: str
    alpha: Fraction | None = None
    _ratio: Callable = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in MEASURES:
            raise ValueError(f"unknown similarity {self.kind!r}")
        if self.kind == "tversky":
            if self.alpha is None:
                raise ValueError("tversky needs alpha")
            a = Fraction(self.alpha)
            if not 0 < a < 1:
                raise ValueError("alpha must lie strictly between 0 and 1")
            object.__setattr__(self, "alpha", a)
        elif self.alpha is not None:
            raise ValueError(f"alpha is only valid for tversky, not {self.kind}")
        object.__setattr__(self, "_ratio", _ratio_fn(self.kind, self.alpha))

    @property
    def sim_kind(self) -> SimKind:
        return SimKind.SQUARED if self.kind == "cosine" else SimKind.RATIONAL

    @property
    def _t_factor(self) -> Fraction:
        # t_theta = ceil(stored_theta * factor * |r|); cosine's stored theta is theta**2
        if self.kind == "dice":
            return Fraction(1, 2)
        if self.kind == "tversky":
            return self.alpha
        return Fraction(1)

    def ratio(self, o: int, lr: int, ls: int) -> tuple[int, int]:
        """Similarity for overlap ``o`` and sizes ``lr``, ``ls`` as ``(num, den)``."""
        return self._ratio(o, lr, ls)

    def value(self, o: int, lr: int, ls: int) -> ExactSim:
        num, den = self.ratio(o, lr, ls)
        return ExactSim(num, den, self.sim_kind)

    def theta(self, value) -> ExactSim:
        """Build a threshold of this measure's kind from a ``Fraction``-like.

        For cosine pass the squared threshold.
        """
        return ExactSim.from_fraction(Fraction(value), self.sim_kind)

    def similarity(self, r: TokenSet, s: TokenSet) -> ExactSim:
        if not r.length or not s.length:
            raise EmptySetError("similarity is undefined for empty token sets")
        return self.value(merge_overlap(r.tokens, s.tokens), r.length, s.length)

    def overlap_threshold(self, theta: ExactSim, r_len: int) -> int:
        return _ceil(theta.fraction * self._t_factor * r_len)

    def prefix_length(self, theta: ExactSim, r_len: int) -> int:
        p = r_len - self.overlap_threshold(theta, r_len) + 1
        return min(max(p, 0), r_len)

    def prefix_growth_point(self, r_len: int, probed: int) -> Fraction:
        """Largest stored threshold at which the prefix exceeds ``probed`` tokens.

        ``prefix_length(theta) > probed`` holds exactly when
        ``theta.fraction <= prefix_growth_point(r_len, probed)``.
        """
        return Fraction(r_len - probed, r_len) / self._t_factor

    def length_upper(self, lr: int, ls: int) -> tuple[int, int]:
        """Best similarity any pair of these sizes can reach."""
        return self.ratio(min(lr, ls), lr, ls)

    def unseen_upper(self, probe_len: int, remaining: int, probe_is_r: bool = True) -> tuple[int, int]:
        """Bound for a partner sharing nothing with the probed prefix.

        Such a partner overlaps at most ``remaining`` tokens, and every measure
        is non-increasing in the partner's size, which is at least the overlap.
        """
        if probe_is_r:
            return self.ratio(remaining, probe_len, remaining)
        return self.ratio(remaining, remaining, probe_len)

    def __str__(self):
        return f"tversky(alpha={self.alpha})" if self.kind == "tversky" else self.kind


def merge_overlap(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Intersection size of two ascending id tuples by ordered merge."""
    i = j = o = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        x, y = a[i], b[j]
        if x == y:
            o += 1
            i += 1
            j += 1
        elif x < y:
            i += 1
        else:
            j += 1
    return o


def similarity(measure: SimilarityMeasure, r: TokenSet, s: TokenSet) -> ExactSim:
    return measure.similarity(r, s)


def overlap_threshold(measure: SimilarityMeasure, theta: ExactSim, r_len: int) -> int:
    return measure.overlap_threshold(theta, r_len)


def prefix_length(measure: SimilarityMeasure, theta: ExactSim, r_len: int) -> int:
    return measure.prefix_length(theta, r_len)


class LazyEvalState:
    """Partial merge scan of one candidate pair.

    After scanning ``r[:i]`` and ``s[:j]`` the overlap is known to lie in
    ``[overlap, overlap + min(|r| - i, |s| - j)]``.
    """

    __slots__ = ("r_ord", "s_ord", "r", "s", "i", "j", "overlap")

    def __init__(self, r: tuple[int, ...], s: tuple[int, ...], r_ord: int = -1, s_ord: int = -1):
        self.r = r
        self.s = s
        self.r_ord = r_ord
        self.s_ord = s_ord
        self.i = 0
        self.j = 0
        self.overlap = 0

    @property
    def exhausted(self) -> bool:
        return self.i >= len(self.r) or self.j >= len(self.s)

    @property
    def bound_min(self) -> int:
        return self.overlap

    @property
    def bound_max(self) -> int:
        return self.overlap + min(len(self.r) - self.i, len(self.s) - self.j)

    def advance(self) -> "LazyEvalState":
        if self.exhausted:
            raise ValueError("scan already exhausted")
        x, y = self.r[self.i], self.s[self.j]
        if x == y:
            self.overlap += 1
            self.i += 1
            self.j += 1
        elif x < y:
            self.i += 1
        else:
            self.j += 1
        return self

    def bounds(self, measure: SimilarityMeasure) -> tuple[ExactSim, ExactSim]:
        lr, ls = len(self.r), len(self.s)
        return measure.value(self.bound_min, lr, ls), measure.value(self.bound_max, lr, ls)

    def max_ratio(self, measure: SimilarityMeasure) -> tuple[int, int]:
        return measure.ratio(self.bound_max, len(self.r), len(self.s))

    def settle(self, measure: SimilarityMeasure, tn: int, td: int) -> bool:
        """Scan until the threshold ``tn/td`` is decided.

        Returns True when ``sim_min >= theta`` (the pair joins), False when
        ``sim_max < theta``. Bounds tighten monotonically so this always ends.
        """
        r, s = self.r, self.s
        lr, ls = len(r), len(s)
        ratio = measure._ratio
        i, j, o = self.i, self.j, self.overlap
        while True:
            num, den = ratio(o, lr, ls)
            if num * td >= tn * den:
                result = True
                break
            num, den = ratio(o + min(lr - i, ls - j), lr, ls)
            if num * td < tn * den:
                result = False
                break
            # undecided implies both sides still have tokens left
            x, y = r[i], s[j]
            if x == y:
                o += 1
                i += 1
                j += 1
            elif x < y:
                i += 1
            else:
                j += 1
        self.i, self.j, self.overlap = i, j, o
        return result


def bounds(state: LazyEvalState, measure: SimilarityMeasure) -> tuple[ExactSim, ExactSim]:
    return state.bounds(measure)


def advance(state: LazyEvalState) -> LazyEvalState:
    return state.advance()
