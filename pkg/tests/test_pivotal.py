import random

import pytest

from prefjoin.index import InvertedIndex
from prefjoin.model import Dataset, ExactSim, Side, TokenSet
from prefjoin.oracle import oracle_pivotal, oracle_tops
from prefjoin.pivotal import compute_tops, pivotal_thresholds
from prefjoin.synthetic import random_instance

from conftest import ALL_MEASURES


def tops(R, S, m):
    return compute_tops(R, S, m, InvertedIndex(S), InvertedIndex(R))


def names(ids, ords):
    return {ids[k] for k in ords}


def test_toy_tops(toy, jaccard):
    tr, ts = tops(toy.R, toy.S, jaccard)
    ids = list(toy.R.external_ids)
    v = ids.index("vldb")
    assert names(toy.S.external_ids, tr.best_set[v]) == {"pvldb", "vl_db"}
    assert tr.best_sim[v] == ExactSim(4, 5)
    d = ids.index("db_ms")
    assert names(toy.S.external_ids, tr.best_set[d]) == {"dbms_"}
    assert tr.best_sim[d] == ExactSim(1, 1)


def test_toy_pivotal(toy, jaccard):
    assert pivotal_thresholds(*tops(toy.R, toy.S, jaccard)) == [ExactSim(1, 1), ExactSim(4, 5), ExactSim(2, 3)]


def test_no_shared_token_means_no_top(jaccard):
    R = Dataset(Side.R, (TokenSet((1, 2)), TokenSet((3,))), ("a", "b"))
    S = Dataset(Side.S, (TokenSet((1,)),), ("x",))
    tr, ts = tops(R, S, jaccard)
    assert tr.best_sim[1] is None and not tr.best_set[1]


def test_identical_singletons(jaccard):
    R = Dataset(Side.R, (TokenSet((0, 1)),), ("a",))
    S = Dataset(Side.S, (TokenSet((0, 1)),), ("b",))
    assert pivotal_thresholds(*tops(R, S, jaccard)) == [ExactSim(1, 1)]


def test_unknown_mode(toy, jaccard):
    with pytest.raises(ValueError):
        pivotal_thresholds(*tops(toy.R, toy.S, jaccard), mode="loose")


@pytest.mark.parametrize("m", ALL_MEASURES, ids=str)
def test_tops_match_brute_force(m):
    rng = random.Random(5)
    for _ in range(60):
        R, S = random_instance(rng)
        tr, ts = tops(R, S, m)
        br, bs = oracle_tops(R, S, m)
        assert [(b, set(x)) for b, x in zip(tr.best_sim, tr.best_set)] == br
        assert [(b, set(x)) for b, x in zip(ts.best_sim, ts.best_set)] == bs
        for mode in ("mutual", "relaxed"):
            theta = pivotal_thresholds(tr, ts, mode)
            assert theta == oracle_pivotal(R, S, m, mode)
        assert len(pivotal_thresholds(tr, ts)) <= min(len(R), len(S))
