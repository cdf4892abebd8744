"""Result-set preferences scored incrementally as joined pairs arrive.

MaxGroups counts connected components of the bipartite join graph. Every edge
joins an R node to an S node, so each component that has an edge is
non-trivial; isolated records are never tracked.

MinOutJoin scores ``|cover_R| + |cover_S| - |join|``, which is
``|R| + |S| - |outjoin|`` without the constant.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .model import Dataset, ExactSim, JoinResult

MAXGROUPS = "maxgroups"
MINOUTJOIN = "minoutjoin"
PREFERENCES = (MAXGROUPS, MINOUTJOIN)


class DuplicatePairError(ValueError):
    pass


class DisjointSet:
    """Union by size with path compression over integer node keys."""

    def __init__(self):
        self.parent: dict[int, int] = {}
        self.size: dict[int, int] = {}
        self.steps = 0  # parent-pointer hops, for amortized-cost checks

    def __contains__(self, x):
        return x in self.parent

    def add(self, x: int) -> None:
        self.parent[x] = x
        self.size[x] = 1

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
            self.steps += 1
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; False if they were already one."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size.pop(rb)
        return True


class PreferenceState:
    """Covers, join size and component count of ``join(theta)`` as theta decreases.

    Both preferences share the bookkeeping; ``kind`` only selects which number
    ``score`` reports.
    """

    def __init__(self, kind: str, r_size: int, s_size: int):
        if kind not in PREFERENCES:
            raise ValueError(f"unknown preference {kind!r}")
        self.kind = kind
        self.r_size = r_size
        self.s_size = s_size
        self.covered_r: set[int] = set()
        self.covered_s: set[int] = set()
        self.join_count = 0
        self.component_count = 0
        self.dsu = DisjointSet()
        self._pairs: set[tuple[int, int]] = set()

    @property
    def score(self) -> int:
        if self.kind == MAXGROUPS:
            return self.component_count
        return len(self.covered_r) + len(self.covered_s) - self.join_count

    def apply_pairs(self, pairs: Iterable[tuple[int, int]]) -> int:
        dsu = self.dsu
        for r, s in pairs:
            if (r, s) in self._pairs:
                raise DuplicatePairError(f"pair {(r, s)} applied twice")
            self._pairs.add((r, s))
            self.join_count += 1
            # R nodes are 2k, S nodes 2k+1 in one forest
            a, b = 2 * r, 2 * s + 1
            has_a, has_b = r in self.covered_r, s in self.covered_s
            if not has_a:
                self.covered_r.add(r)
                dsu.add(a)
            if not has_b:
                self.covered_s.add(s)
                dsu.add(b)
            if not has_a and not has_b:
                dsu.union(a, b)
                self.component_count += 1
            elif has_a and has_b:
                if dsu.union(a, b):
                    self.component_count -= 1
            else:
                dsu.union(a, b)
        return self.score

    def upper_bound(self) -> int:
        """Best score any lower threshold could still reach.

        A new component, or a +1 step of MinOutJoin, needs one uncovered
        record from each side.
        """
        return self.score + min(self.r_size - len(self.covered_r), self.s_size - len(self.covered_s))


def apply_pairs(state: PreferenceState, pairs: Iterable[tuple[int, int]]) -> int:
    return state.apply_pairs(pairs)


def upper_bound(state: PreferenceState) -> int:
    return state.upper_bound()


def full_outer_join(
    result: JoinResult, theta: ExactSim, R: Dataset, S: Dataset
) -> list[tuple[int | None, int | None]]:
    """Joined pairs at ``theta``, then unmatched R rows, then unmatched S rows."""
    r_size, s_size = len(R), len(S)
    pairs: Sequence[tuple[int, int]] = result.join_at(theta)
    cov_r = {r for r, _ in pairs}
    cov_s = {s for _, s in pairs}
    rows: list[tuple[int | None, int | None]] = list(pairs)
    rows.extend((r, None) for r in range(r_size) if r not in cov_r)
    rows.extend((None, s) for s in range(s_size) if s not in cov_s)
    return rows
