import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prefjoin.model import ExactSim, JoinResult, SimKind, TokenSet, UnknownThresholdError


def test_lowest_terms_equal_and_hash():
    a, b = ExactSim(2, 4), ExactSim(1, 2)
    assert a == b
    assert hash(a) == hash(b)
    assert (a.num, a.den) == (1, 2)


def test_rejects_out_of_range():
    with pytest.raises(ValueError):
        ExactSim(3, 2)
    with pytest.raises(ValueError):
        ExactSim(1, 0)


def test_kinds_do_not_mix():
    with pytest.raises(TypeError):
        ExactSim(1, 2) < ExactSim(1, 2, SimKind.SQUARED)
    assert ExactSim(1, 2) != ExactSim(1, 2, SimKind.SQUARED)


def test_squared_renders_and_floats():
    v = ExactSim(1, 2, SimKind.SQUARED)
    assert v.exact_str() == "sqrt(1/2)"
    assert float(v) == pytest.approx(0.5**0.5)


fractions01 = st.tuples(st.integers(0, 10**6), st.integers(1, 10**6)).filter(lambda t: t[0] <= t[1])


@given(fractions01, fractions01)
def test_order_matches_fraction(a, b):
    x, y = ExactSim(*a), ExactSim(*b)
    fa, fb = Fraction(*a), Fraction(*b)
    assert (x < y) == (fa < fb)
    assert (x <= y) == (fa <= fb)
    assert (x == y) == (fa == fb)


def test_order_agrees_with_high_precision_floats():
    import mpmath

    mpmath.mp.dps = 50
    rng = random.Random(3)
    for _ in range(20000):
        d1, d2 = rng.randint(1, 500), rng.randint(1, 500)
        a, b = ExactSim(rng.randint(0, d1), d1), ExactSim(rng.randint(0, d2), d2)
        fa, fb = mpmath.mpf(a.num) / a.den, mpmath.mpf(b.num) / b.den
        assert (a < b) == (fa < fb)


def test_tokens_must_increase():
    with pytest.raises(ValueError):
        TokenSet((3, 1))
    with pytest.raises(ValueError):
        TokenSet((1, 1))
    assert TokenSet((1, 4, 9)).length == 3


def _result():
    res = JoinResult()
    res.extend(ExactSim(1, 1), [(0, 0)])
    res.extend(ExactSim(4, 5), [(0, 1), (1, 2), (1, 3)])
    res.extend(ExactSim(2, 3), [(2, 1)])
    return res


def test_join_at_prefixes():
    res = _result()
    assert res.join_at(ExactSim(1, 1)) == [(0, 0)]
    assert len(res.join_at(ExactSim(4, 5))) == 4
    assert res.new_at(ExactSim(2, 3)) == [(2, 1)]
    assert set(res.join_at(ExactSim(4, 5))) <= set(res.join_at(ExactSim(2, 3)))


def test_join_at_unknown_threshold():
    with pytest.raises(UnknownThresholdError):
        _result().join_at(ExactSim(1, 2))


def test_empty_slice_at_top_threshold():
    res = JoinResult()
    res.extend(ExactSim(9, 10), [])
    assert res.join_at(ExactSim(9, 10)) == []


def test_extend_rejects_duplicates_and_order():
    res = _result()
    with pytest.raises(ValueError):
        res.extend(ExactSim(1, 2), [(0, 0)])
    with pytest.raises(ValueError):
        res.extend(ExactSim(9, 10), [])
