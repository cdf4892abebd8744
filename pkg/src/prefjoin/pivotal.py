"""Most-similar partners per record and the pivotal threshold set."""

from __future__ import annotations

from dataclasses import dataclass

from .index import InvertedIndex
from .model import Dataset, ExactSim
from .simcore import SimilarityMeasure


@dataclass
class TopMatches:
    """Per record: best similarity to the other side and every partner reaching it.

    ``best_sim[k]`` is None when record ``k`` shares no token with the other side.
    """

    best_sim: list[ExactSim | None]
    best_set: list[frozenset[int]]


def _top_one(probe, other_records, index, measure, probe_is_r):
    """Exact best partners of ``probe`` with ties, stopping once no unseen record can tie."""
    toks = probe.tokens
    lp = len(toks)
    pset = set(toks)
    ratio = measure.ratio
    best_n, best_d = 0, 1
    best: list[int] = []
    seen: set[int] = set()
    for pos, t in enumerate(toks):
        for o_ord in index.probe(t):
            if o_ord in seen:
                continue
            seen.add(o_ord)
            other = other_records[o_ord]
            o = len(pset.intersection(other.tokens))
            if probe_is_r:
                n, d = ratio(o, lp, len(other))
            else:
                n, d = ratio(o, len(other), lp)
            lhs, rhs = n * best_d, best_n * d
            if lhs > rhs:
                best_n, best_d, best = n, d, [o_ord]
            elif lhs == rhs and best:
                best.append(o_ord)
        remaining = lp - pos - 1
        if not best:
            continue
        if remaining == 0:
            break
        un, ud = measure.unseen_upper(lp, remaining, probe_is_r)
        # unseen partners could only tie or beat best if their bound reaches it
        if un * best_d < best_n * ud:
            break
    if not best:
        return None, frozenset()
    return ExactSim(best_n, best_d, measure.sim_kind), frozenset(best)


def compute_tops(
    R: Dataset,
    S: Dataset,
    measure: SimilarityMeasure,
    index_s: InvertedIndex,
    index_r: InvertedIndex,
) -> tuple[TopMatches, TopMatches]:
    """Exact top-1 (with ties) for every record of R against S, and of S against R."""
    tops = []
    for probe_side, other_side, index, is_r in ((R, S, index_s, True), (S, R, index_r, False)):
        sims, sets = [], []
        for rec in probe_side.records:
            b, bs = _top_one(rec, other_side.records, index, measure, is_r)
            sims.append(b)
            sets.append(bs)
        tops.append(TopMatches(sims, sets))
    return tops[0], tops[1]


def pivotal_thresholds(tops_r: TopMatches, tops_s: TopMatches, mode: str = "mutual") -> list[ExactSim]:
    """Distinct similarities of mutually-top pairs, descending.

    ``mode="relaxed"`` also admits pairs that are top on one side only, which
    is the same as taking every record's best similarity.
    """
    if mode not in ("mutual", "relaxed"):
        raise ValueError(f"unknown pivotal mode {mode!r}")
    values: set[ExactSim] = set()
    if mode == "relaxed":
        values.update(b for b in tops_r.best_sim if b is not None)
        values.update(b for b in tops_s.best_sim if b is not None)
    else:
        for r, (b, partners) in enumerate(zip(tops_r.best_sim, tops_r.best_set)):
            if b is None:
                continue
            if any(r in tops_s.best_set[s] for s in partners):
                values.add(b)
    # similarities of 0 never enter: zero-overlap partners are not probed
    return sorted(values, reverse=True)
