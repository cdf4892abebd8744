"""Brute-force reference: every pair, every threshold, every score from scratch.

Shares nothing with the engine beyond the model types, so the two can be
checked against each other. Cost is ``O(|R| * |S| * L)`` plus a full graph
walk per distinct similarity value.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction

from .model import Dataset, ExactSim, SimKind


def pair_similarity(kind: str, alpha, r: frozenset, s: frozenset) -> ExactSim:
    o = len(r & s)
    a, b = len(r), len(s)
    if kind == "jaccard":
        v = Fraction(o, len(r | s))
    elif kind == "overlap":
        v = Fraction(o, max(a, b))
    elif kind == "dice":
        v = Fraction(2 * o, a + b)
    elif kind == "cosine":
        # squared: o^2 / (|r| |s|)
        return ExactSim.from_fraction(Fraction(o * o, a * b), SimKind.SQUARED)
    elif kind == "tversky":
        al = Fraction(alpha)
        v = o / (al * a + (1 - al) * b)
    else:
        raise ValueError(kind)
    return ExactSim.from_fraction(v)


@dataclass
class ThresholdRow:
    theta: ExactSim
    h_c: int
    h_o: int
    join_size: int
    cover_r: int
    cover_s: int
    components: int


@dataclass
class OracleOutcome:
    all_sims: dict[ExactSim, list[tuple[int, int]]]
    per_threshold: list[ThresholdRow]
    theta_star_c: ExactSim | None
    theta_star_o: ExactSim | None

    def row(self, theta: ExactSim) -> ThresholdRow:
        for row in self.per_threshold:
            if row.theta == theta:
                return row
        raise KeyError(theta)

    def join_at(self, theta: ExactSim) -> set[tuple[int, int]]:
        return {p for v, ps in self.all_sims.items() if v >= theta for p in ps}

    def best(self, preference: str) -> tuple[ExactSim | None, int]:
        theta = self.theta_star_c if preference == "maxgroups" else self.theta_star_o
        if theta is None:
            return None, 0
        row = self.row(theta)
        return theta, row.h_c if preference == "maxgroups" else row.h_o


def _components(edges) -> int:
    adj = defaultdict(list)
    for r, s in edges:
        adj[("r", r)].append(("s", s))
        adj[("s", s)].append(("r", r))
    seen = set()
    count = 0
    for start in adj:
        if start in seen:
            continue
        count += 1
        seen.add(start)
        q = deque([start])
        while q:
            for nxt in adj[q.popleft()]:
                if nxt not in seen:
                    seen.add(nxt)
                    q.append(nxt)
    return count


def all_similarities(R: Dataset, S: Dataset, kind: str, alpha=None) -> dict[tuple[int, int], ExactSim]:
    rs = [frozenset(x.tokens) for x in R.records]
    ss = [frozenset(x.tokens) for x in S.records]
    return {(i, j): pair_similarity(kind, alpha, r, s) for i, r in enumerate(rs) for j, s in enumerate(ss)}


def _measure_args(measure):
    if isinstance(measure, str):
        return measure, None
    return measure.kind, measure.alpha


def oracle_run(R: Dataset, S: Dataset, measure) -> OracleOutcome:
    """Score every distinct positive pair similarity from scratch."""
    kind, alpha = _measure_args(measure)
    sims = all_similarities(R, S, kind, alpha)
    by_value: dict[ExactSim, list[tuple[int, int]]] = defaultdict(list)
    for pair, v in sims.items():
        if v.num:
            by_value[v].append(pair)
    rows = []
    joined: list[tuple[int, int]] = []
    for v in sorted(by_value, reverse=True):
        joined = joined + by_value[v]
        cover_r = len({r for r, _ in joined})
        cover_s = len({s for _, s in joined})
        comps = _components(joined)
        rows.append(ThresholdRow(v, comps, cover_r + cover_s - len(joined), len(joined), cover_r, cover_s, comps))
    star_c = star_o = None
    best_c = best_o = None
    for row in rows:
        # descending order with strict '>' keeps the largest maximiser
        if best_c is None or row.h_c > best_c:
            best_c, star_c = row.h_c, row.theta
        if best_o is None or row.h_o > best_o:
            best_o, star_o = row.h_o, row.theta
    return OracleOutcome(dict(by_value), rows, star_c, star_o)


def oracle_tops(R: Dataset, S: Dataset, measure):
    """Brute-force top-1-with-ties in both directions.

    Returns ``(best_r, best_s)``: lists of ``(best_sim or None, set of partners)``.
    Zero similarity never counts as a match.
    """
    kind, alpha = _measure_args(measure)
    sims = all_similarities(R, S, kind, alpha)

    def tops(n_self, n_other, key):
        out = []
        for a in range(n_self):
            vals = [(sims[key(a, b)], b) for b in range(n_other)]
            vals = [(v, b) for v, b in vals if v.num]
            if not vals:
                out.append((None, set()))
                continue
            m = max(v for v, _ in vals)
            out.append((m, {b for v, b in vals if v == m}))
        return out

    return tops(len(R), len(S), lambda a, b: (a, b)), tops(len(S), len(R), lambda a, b: (b, a))


def oracle_pivotal(R: Dataset, S: Dataset, measure, mode: str = "mutual") -> list[ExactSim]:
    best_r, best_s = oracle_tops(R, S, measure)
    vals = set()
    for r, (v, partners) in enumerate(best_r):
        for s in partners:
            mutual = r in best_s[s][1]
            if mutual or mode == "relaxed":
                vals.add(v)
    if mode == "relaxed":
        for s, (v, partners) in enumerate(best_s):
            if partners:
                vals.add(v)
    return sorted(vals, reverse=True)
