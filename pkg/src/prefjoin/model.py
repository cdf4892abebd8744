"""Core domain types: token sets, exact similarity values, datasets, join results."""

from __future__ import annotations

import enum
import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence


class Side(enum.Enum):
    R = "R"
    S = "S"


class RecordId(NamedTuple):
    side: Side
    ordinal: int


class SimKind(enum.Enum):
    RATIONAL = "rational"
    # Stores sim**2; only cosine produces these.
    SQUARED = "squared"


class UnknownThresholdError(KeyError):
    pass


@dataclass(frozen=True)
class TokenSet:
    """A record as a strictly increasing tuple of token ids.

    Token ids are assigned so that numeric order equals the global token order,
    which lets prefix filtering and merge scans use plain integer comparison.
    """

    tokens: tuple[int, ...]

    def __post_init__(self):
        toks = self.tokens
        for a, b in zip(toks, toks[1:]):
            if a >= b:
                raise ValueError(f"tokens must be strictly increasing, got {toks!r}")

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def length(self) -> int:
        return len(self.tokens)

    def prefix(self, i: int) -> tuple[int, ...]:
        return self.tokens[:i]


class ExactSim:
    """Exact similarity value in ``[0, 1]``.

    ``SQUARED`` values hold the square of the real similarity. Since squaring is
    strictly increasing on ``[0, 1]`` the ordering is unchanged, so two values of
    the same kind compare exactly by cross-multiplication. Mixing kinds raises.
    """

    __slots__ = ("num", "den", "kind")

    def __init__(self, num: int, den: int, kind: SimKind = SimKind.RATIONAL):
        if den <= 0:
            raise ValueError("denominator must be positive")
        if num < 0 or num > den:
            raise ValueError(f"similarity {num}/{den} outside [0, 1]")
        g = math.gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)
        object.__setattr__(self, "kind", kind)

    def __setattr__(self, name, value):
        raise AttributeError("ExactSim is immutable")

    @classmethod
    def from_fraction(cls, value: Fraction, kind: SimKind = SimKind.RATIONAL) -> "ExactSim":
        value = Fraction(value)
        return cls(value.numerator, value.denominator, kind)

    @classmethod
    def parse(cls, text: str, kind: SimKind = SimKind.RATIONAL) -> "ExactSim":
        """Parse ``"p/q"`` or a decimal string such as ``"0.8"`` exactly."""
        return cls.from_fraction(Fraction(text.strip()), kind)

    @property
    def fraction(self) -> Fraction:
        """The stored value (squared for cosine)."""
        return Fraction(self.num, self.den)

    def __float__(self) -> float:
        v = self.num / self.den
        return math.sqrt(v) if self.kind is SimKind.SQUARED else v

    def _check(self, other) -> "ExactSim":
        if not isinstance(other, ExactSim):
            return NotImplemented
        if other.kind is not self.kind:
            raise TypeError(f"cannot compare {self.kind.value} with {other.kind.value} similarity")
        return other

    def __eq__(self, other):
        if not isinstance(other, ExactSim):
            return NotImplemented
        return self.kind is other.kind and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den, self.kind))

    def __lt__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.num * other.den < other.num * self.den

    def __le__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.num * other.den <= other.num * self.den

    def __gt__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.num * other.den > other.num * self.den

    def __ge__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.num * other.den >= other.num * self.den

    def exact_str(self) -> str:
        """Lossless rendering: ``p/q``, or ``sqrt(p/q)`` for squared values."""
        base = f"{self.num}/{self.den}" if self.den != 1 else str(self.num)
        return f"sqrt({base})" if self.kind is SimKind.SQUARED else base

    def __str__(self):
        return self.exact_str()

    def __repr__(self):
        return f"ExactSim({self.exact_str()})"


@dataclass(frozen=True)
class Dataset:
    side: Side
    records: tuple[TokenSet, ...]
    external_ids: tuple[str, ...]

    def __post_init__(self):
        if len(self.records) != len(self.external_ids):
            raise ValueError("records and external_ids differ in length")

    def __len__(self) -> int:
        return len(self.records)


@dataclass
class JoinResult:
    """Cumulative join output, grown one threshold at a time in descending order.

    ``pairs`` holds ``(r_ordinal, s_ordinal)`` tuples. ``boundaries[k]`` is
    ``(theta_k, end_k)``: ``pairs[:end_k]`` is ``join(theta_k)`` and the slice
    since the previous boundary holds the pairs newly admitted at ``theta_k``.
    """

    pairs: list[tuple[int, int]] = field(default_factory=list)
    boundaries: list[tuple[ExactSim, int]] = field(default_factory=list)
    _seen: set = field(default_factory=set, repr=False)

    def extend(self, theta: ExactSim, new_pairs: Sequence[tuple[int, int]]) -> None:
        if self.boundaries and not theta < self.boundaries[-1][0]:
            raise ValueError("thresholds must be appended in strictly decreasing order")
        for p in new_pairs:
            if p in self._seen:
                raise ValueError(f"duplicate pair {p}")
            self._seen.add(p)
            self.pairs.append(p)
        self.boundaries.append((theta, len(self.pairs)))

    def thresholds(self) -> list[ExactSim]:
        return [t for t, _ in self.boundaries]

    def _boundary_index(self, theta: ExactSim) -> int:
        # boundaries are descending; search on the reversed order.
        keys = [t for t, _ in reversed(self.boundaries)]
        k = bisect_right(keys, theta) - 1
        if k < 0 or keys[k] != theta:
            raise UnknownThresholdError(f"threshold {theta} was not evaluated")
        return len(self.boundaries) - 1 - k

    def end_index(self, theta: ExactSim) -> int:
        return self.boundaries[self._boundary_index(theta)][1]

    def join_at(self, theta: ExactSim) -> list[tuple[int, int]]:
        return self.pairs[: self.end_index(theta)]

    def new_at(self, theta: ExactSim) -> list[tuple[int, int]]:
        """Pairs admitted exactly when moving down to ``theta``."""
        k = self._boundary_index(theta)
        start = self.boundaries[k - 1][1] if k else 0
        return self.pairs[start : self.boundaries[k][1]]


def join_at(result: JoinResult, theta: ExactSim) -> list[tuple[int, int]]:
    return result.join_at(theta)
