"""Inverted index and incremental prefix-filter candidate generation."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .model import Dataset, ExactSim
from .simcore import SimilarityMeasure


class ThresholdOrderError(ValueError):
    pass


class InvertedIndex:
    """Maps each token id to the ascending ordinals of records containing it.

    Every token of every record is indexed, not just a prefix, so the same
    index serves any threshold.
    """

    def __init__(self, dataset: Dataset):
        postings: dict[int, list[int]] = {}
        for ordinal, rec in enumerate(dataset.records):
            for t in rec.tokens:
                postings.setdefault(t, []).append(ordinal)
        self.postings = {t: tuple(v) for t, v in postings.items()}
        self.dataset = dataset

    def probe(self, token: int) -> tuple[int, ...]:
        return self.postings.get(token, ())

    def __len__(self):
        return len(self.postings)


def build_index(dataset: Dataset) -> InvertedIndex:
    return InvertedIndex(dataset)


@dataclass
class ProbeState:
    """How far each R record's prefix has been merged, plus emitted partners."""

    measure: SimilarityMeasure
    probed_prefix_len: list[int]
    seen: list[set[int]]
    last_theta: ExactSim | None = None
    # (-growth_point, r_ordinal): records whose prefix grows first pop first
    _heap: list = field(default_factory=list, repr=False)

    @classmethod
    def fresh(cls, R: Dataset, measure: SimilarityMeasure) -> "ProbeState":
        n = len(R)
        heap = [(-measure.prefix_growth_point(rec.length, 0), k) for k, rec in enumerate(R.records)]
        heapq.heapify(heap)
        return cls(measure, [0] * n, [set() for _ in range(n)], None, heap)


def candidates_for(
    theta: ExactSim, index: InvertedIndex, R: Dataset, state: ProbeState
) -> list[tuple[int, int]]:
    """New candidate pairs when the threshold drops to ``theta``.

    Each R record's probed prefix is extended to its prefix length at
    ``theta``; every partner on a newly probed posting list that was not
    emitted before is returned once. Thresholds must not increase; repeating
    the last one yields nothing new.
    """
    if state.last_theta is not None and theta > state.last_theta:
        raise ThresholdOrderError(f"threshold {theta} is above the previous {state.last_theta}")
    state.last_theta = theta
    measure = state.measure
    v = theta.fraction
    heap = state._heap
    out = []
    records = R.records
    postings = index.postings
    while heap and -heap[0][0] >= v:
        _, k = heapq.heappop(heap)
        toks = records[k].tokens
        lr = len(toks)
        start = state.probed_prefix_len[k]
        stop = measure.prefix_length(theta, lr)
        seen = state.seen[k]
        for t in toks[start:stop]:
            for s in postings.get(t, ()):
                if s not in seen:
                    seen.add(s)
                    out.append((k, s))
        state.probed_prefix_len[k] = stop
        if stop < lr:
            heapq.heappush(heap, (-measure.prefix_growth_point(lr, stop), k))
    return out
