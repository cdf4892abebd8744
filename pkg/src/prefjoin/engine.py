"""Preference-driven join: sweep the pivotal thresholds downward and keep the best.

For each pivotal threshold, in descending order, the newly qualifying pairs are
found incrementally (prefix-filter candidates plus pairs postponed from earlier
steps, settled by lazy bounds), fed to the preference scorer, and the sweep
stops once the score's upper bound cannot beat the best score so far.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .index import InvertedIndex, ProbeState, ThresholdOrderError, candidates_for
from .model import Dataset, ExactSim, JoinResult
from .pivotal import compute_tops, pivotal_thresholds
from .preference import PREFERENCES, PreferenceState
from .simcore import LazyEvalState, SimilarityMeasure
from .tokenize import Corpus, TokenizerConfig, build_corpus

logger = logging.getLogger(__name__)


class EmptyInputError(ValueError):
    pass


class BucketConsistencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class EngineConfig:
    measure: SimilarityMeasure
    preference: str
    pivotal_mode: str = "mutual"
    length_filter: bool = True
    early_termination: bool = True

    def __post_init__(self):
        if self.preference not in PREFERENCES:
            raise ValueError(f"unknown preference {self.preference!r}")
        if self.pivotal_mode not in ("mutual", "relaxed"):
            raise ValueError(f"unknown pivotal mode {self.pivotal_mode!r}")


@dataclass
class EngineOutcome:
    """What a run found.

    ``theta_star`` is None only when no pair shares a single token.
    ``per_threshold_scores`` holds ``(theta, h, h_upper)`` for each evaluated
    threshold.
    """

    theta_star: ExactSim | None
    best_score: int
    result: JoinResult
    thresholds_evaluated: int
    terminated_early: bool
    per_threshold_scores: list[tuple[ExactSim, int, int]]
    pivotal: list[ExactSim]
    R: Dataset
    S: Dataset
    measure: SimilarityMeasure
    peak_candidates: int = 0
    candidates_generated: int = 0

    def pairs(self) -> list[tuple[int, int]]:
        """``join(theta_star)`` as sorted ``(r_ordinal, s_ordinal)`` pairs."""
        if self.theta_star is None:
            return []
        return sorted(self.result.join_at(self.theta_star))


class IncrementalJoin:
    """Produces the pairs newly admitted at each pivotal threshold.

    Candidates whose upper bound falls below the current threshold are parked
    in the bucket of the largest pivotal threshold not above that bound, and
    resumed there. Pairs that cannot reach the smallest pivotal threshold are
    dropped.
    """

    def __init__(
        self,
        R: Dataset,
        index_s: InvertedIndex,
        measure: SimilarityMeasure,
        thetas: Sequence[ExactSim],
        length_filter: bool = True,
    ):
        self.R = R
        self.S = index_s.dataset
        self.index = index_s
        self.measure = measure
        self.thetas = list(thetas)
        self._num = [t.num for t in self.thetas]
        self._den = [t.den for t in self.thetas]
        self.buckets: list[list[LazyEvalState]] = [[] for _ in self.thetas]
        self.probe = ProbeState.fresh(R, measure)
        self.length_filter = length_filter
        self.next_step = 0
        self.candidates_generated = 0
        self.parked = 0
        self.peak_candidates = 0

    def _bucket_of(self, num: int, den: int) -> int | None:
        """Index of the largest pivotal threshold ``<= num/den``, or None."""
        tn, td = self._num, self._den
        lo, hi = 0, len(tn)
        while lo < hi:
            mid = (lo + hi) // 2
            if tn[mid] * den <= num * td[mid]:
                hi = mid
            else:
                lo = mid + 1
        return lo if lo < len(tn) else None

    def step(self) -> list[tuple[int, int]]:
        """Move to the next pivotal threshold and return the newly joined pairs."""
        i = self.next_step
        if i >= len(self.thetas):
            raise ThresholdOrderError("no pivotal thresholds left")
        self.next_step += 1
        theta = self.thetas[i]
        measure = self.measure
        tn, td = theta.num, theta.den
        r_recs, s_recs = self.R.records, self.S.records

        work = self.buckets[i]
        self.buckets[i] = []
        self.parked -= len(work)
        low_n, low_d = self._num[-1], self._den[-1]
        for r, s in candidates_for(theta, self.index, self.R, self.probe):
            self.candidates_generated += 1
            rt, st = r_recs[r].tokens, s_recs[s].tokens
            if self.length_filter:
                n, d = measure.length_upper(len(rt), len(st))
                if n * low_d < low_n * d:
                    continue
            work.append(LazyEvalState(rt, st, r, s))

        joined = []
        for state in work:
            if state.settle(measure, tn, td):
                joined.append((state.r_ord, state.s_ord))
                continue
            j = self._bucket_of(*state.max_ratio(measure))
            if j is None:
                continue
            if j <= i:
                raise BucketConsistencyError(
                    f"pair {(state.r_ord, state.s_ord)} parked at step {j} from step {i}"
                )
            self.buckets[j].append(state)
            self.parked += 1
        self.peak_candidates = max(self.peak_candidates, len(work) + self.parked)
        return joined


def incremental_join(joiner: IncrementalJoin, theta_prev: ExactSim | None, theta_i: ExactSim) -> list[tuple[int, int]]:
    """``joiner.step()`` with the threshold sequence checked against the caller's view."""
    i = joiner.next_step
    expected_prev = joiner.thetas[i - 1] if i else None
    if i >= len(joiner.thetas) or joiner.thetas[i] != theta_i or expected_prev != theta_prev:
        raise ThresholdOrderError(f"expected to step from {expected_prev} to the next pivotal threshold")
    return joiner.step()


def run(R: Dataset, S: Dataset, config: EngineConfig) -> EngineOutcome:
    if not len(R) or not len(S):
        raise EmptyInputError("both sides need at least one non-empty record")
    measure = config.measure
    index_s, index_r = InvertedIndex(S), InvertedIndex(R)
    tops_r, tops_s = compute_tops(R, S, measure, index_s, index_r)
    thetas = pivotal_thresholds(tops_r, tops_s, config.pivotal_mode)
    logger.debug("%d pivotal thresholds", len(thetas))

    result = JoinResult()
    outcome = EngineOutcome(None, 0, result, 0, False, [], thetas, R, S, measure)
    if not thetas:
        return outcome

    joiner = IncrementalJoin(R, index_s, measure, thetas, config.length_filter)
    pref = PreferenceState(config.preference, len(R), len(S))
    for theta in thetas:
        new_pairs = joiner.step()
        result.extend(theta, new_pairs)
        h = pref.apply_pairs(new_pairs)
        h_up = pref.upper_bound()
        outcome.thresholds_evaluated += 1
        outcome.per_threshold_scores.append((theta, h, h_up))
        if outcome.theta_star is None or h > outcome.best_score:
            outcome.theta_star, outcome.best_score = theta, h
        elif config.early_termination and h_up <= outcome.best_score:
            outcome.terminated_early = outcome.thresholds_evaluated < len(thetas)
            break
    outcome.peak_candidates = joiner.peak_candidates
    outcome.candidates_generated = joiner.candidates_generated
    return outcome


def join_at_star(outcome: EngineOutcome) -> list[tuple[str, str]]:
    """``join(theta_star)`` as external-id pairs, ordered by record position."""
    rid, sid = outcome.R.external_ids, outcome.S.external_ids
    return [(rid[r], sid[s]) for r, s in outcome.pairs()]


@dataclass
class TextJoin:
    """A run over raw strings, keeping the corpus for id and token lookups."""

    corpus: Corpus
    outcome: EngineOutcome

    def matches(self) -> list[tuple[str, str]]:
        return join_at_star(self.outcome)


def join_strings(
    left: Sequence[str],
    right: Sequence[str],
    sim: str = "jaccard",
    preference: str = "maxgroups",
    tokenizer: str | TokenizerConfig = "words",
    alpha=None,
    left_ids: Sequence[str] | None = None,
    right_ids: Sequence[str] | None = None,
    pivotal_mode: str = "mutual",
) -> TextJoin:
    """Tokenize two string collections and run the preference-driven join.

    >>> tj = join_strings(["db_ms", "vldb"], ["dbms_", "pvldb"], tokenizer="qgrams:1")
    >>> tj.matches()
    [('0', '0'), ('1', '1')]
    """
    if isinstance(tokenizer, str):
        tokenizer = TokenizerConfig.parse(tokenizer)
    corpus = build_corpus(left, right, tokenizer, left_ids, right_ids)
    measure = SimilarityMeasure(sim, None if alpha is None else Fraction(alpha))
    config = EngineConfig(measure, preference, pivotal_mode)
    return TextJoin(corpus, run(corpus.R, corpus.S, config))
