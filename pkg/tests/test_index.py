import random

import pytest

from prefjoin.index import InvertedIndex, ProbeState, ThresholdOrderError, build_index, candidates_for
from prefjoin.model import Dataset, ExactSim, Side
from prefjoin.oracle import all_similarities
from prefjoin.synthetic import random_instance

from conftest import ALL_MEASURES


def test_posting_for_p_is_pvldb(toy):
    idx = build_index(toy.S)
    p = toy.dictionary.rank(("p", 1))
    assert [toy.S.external_ids[s] for s in idx.probe(p)] == ["pvldb"]


def test_postings_complete_and_sorted(toy):
    idx = build_index(toy.S)
    count = sum(len(v) for v in idx.postings.values())
    assert count == sum(r.length for r in toy.S.records)
    assert all(list(v) == sorted(v) for v in idx.postings.values())


def test_empty_side():
    assert len(InvertedIndex(Dataset(Side.S, (), ()))) == 0


def test_top_threshold_candidate(toy, jaccard):
    state = ProbeState.fresh(toy.R, jaccard)
    cands = candidates_for(ExactSim(1, 1), build_index(toy.S), toy.R, state)
    names = {(toy.R.external_ids[r], toy.S.external_ids[s]) for r, s in cands}
    assert ("db_ms", "dbms_") in names


def test_repeat_threshold_is_empty_and_increase_rejected(toy, jaccard):
    idx = build_index(toy.S)
    state = ProbeState.fresh(toy.R, jaccard)
    theta = ExactSim(4, 5)
    assert candidates_for(theta, idx, toy.R, state)
    assert candidates_for(theta, idx, toy.R, state) == []
    with pytest.raises(ThresholdOrderError):
        candidates_for(ExactSim(1, 1), idx, toy.R, state)


def test_full_prefix_finds_every_overlapping_pair(jaccard):
    rng = random.Random(9)
    for _ in range(50):
        R, S = random_instance(rng)
        state = ProbeState.fresh(R, jaccard)
        cands = candidates_for(ExactSim(1, 10**6), build_index(S), R, state)
        brute = {
            (i, j)
            for i, r in enumerate(R.records)
            for j, s in enumerate(S.records)
            if set(r.tokens) & set(s.tokens)
        }
        assert set(cands) == brute
        assert len(cands) == len(set(cands))


@pytest.mark.parametrize("m", ALL_MEASURES, ids=str)
def test_incremental_completeness_and_probing(m):
    rng = random.Random(21)
    for _ in range(40):
        R, S = random_instance(rng)
        sims = all_similarities(R, S, m.kind, m.alpha)
        values = sorted({v for v in sims.values() if v.num}, reverse=True)
        idx = build_index(S)
        state = ProbeState.fresh(R, m)
        emitted = []
        for v in values:
            emitted.extend(candidates_for(v, idx, R, state))
            got = set(emitted)
            assert all(p in got for p, sv in sims.items() if sv >= v)
            for k, rec in enumerate(R.records):
                assert state.probed_prefix_len[k] == m.prefix_length(v, rec.length)
        assert len(emitted) == len(set(emitted))
