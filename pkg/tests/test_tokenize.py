from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prefjoin.tokenize import (
    TokenizerConfig,
    UnknownTokenError,
    build_corpus,
    build_dictionary,
    decode,
    disambiguate,
    encode,
    tokenize_string,
)

Q1 = TokenizerConfig("qgrams", q=1)
WORDS = TokenizerConfig("words")


def test_char_grams():
    assert Counter(tokenize_string("dblp_", Q1)) == Counter("dblp_")


def test_empty_text():
    assert tokenize_string("", WORDS) == []
    assert tokenize_string("", TokenizerConfig("qgrams", q=2)) == []


def test_words_keep_duplicates():
    assert tokenize_string("a b a", WORDS) == ["a", "b", "a"]


def test_words_fold_case_and_whitespace_by_default():
    assert tokenize_string("  Main\tSt  main ", WORDS) == ["main", "st", "main"]


def test_qgrams_keep_case_by_default():
    assert tokenize_string("Ab", TokenizerConfig("qgrams", q=1)) == ["A", "b"]


def test_short_string_is_one_gram():
    assert tokenize_string("a", TokenizerConfig("qgrams", q=2)) == ["a"]
    assert tokenize_string("abc", TokenizerConfig("qgrams", q=2)) == ["ab", "bc"]


def test_parse_config():
    assert TokenizerConfig.parse("qgrams:3").q == 3
    with pytest.raises(ValueError):
        TokenizerConfig.parse("chars")
    with pytest.raises(ValueError):
        TokenizerConfig("qgrams", q=0)


def test_disambiguate():
    assert disambiguate(["a", "b", "a"]) == [("a", 1), ("b", 1), ("a", 2)]
    assert disambiguate("dbms") == [("d", 1), ("b", 1), ("m", 1), ("s", 1)]
    assert len(set(disambiguate(["x"] * 7))) == 7


def test_rare_tokens_rank_first():
    r = [[("rare", 1), ("common", 1)]]
    s = [[("common", 1)] for _ in range(100)]
    d = build_dictionary(r, s)
    assert d.rank(("rare", 1)) < d.rank(("common", 1))


def test_ties_break_on_surface_string():
    sets = [[("b", 1), ("a", 1)], [("c", 1)]]
    d1 = build_dictionary(sets, [])
    d2 = build_dictionary(list(reversed(sets)), [])
    assert d1.rank(("a", 1)) < d1.rank(("b", 1)) < d1.rank(("c", 1))
    assert d1.token_to_id == d2.token_to_id


def test_toy_document_frequencies(toy):
    d = toy.dictionary
    # counted by hand over the ten toy strings
    assert d.doc_freq[("_", 1)] == 5
    assert d.doc_freq[("d", 1)] == 10
    assert d.rank(("_", 1)) < d.rank(("d", 1))


def test_encode_roundtrip_and_unknown():
    sets = [disambiguate("hello"), disambiguate("world")]
    d = build_dictionary(sets, [])
    for x in sets:
        ts = encode(x, d)
        assert set(decode(ts, d)) == set(x)
        assert ts.length == len(x)
    assert encode([], d).length == 0
    with pytest.raises(UnknownTokenError):
        encode([("zzz", 1)], d)


def test_equal_frequency_order_is_lexicographic():
    x = disambiguate(["c", "a", "b"])
    d = build_dictionary([x], [])
    assert decode(encode(x, d), d) == [("a", 1), ("b", 1), ("c", 1)]


def test_empty_records_dropped():
    c = build_corpus(["a b", "  "], ["a"], WORDS, ["x", "y"], ["z"])
    assert c.R.external_ids == ("x",)
    assert c.dropped_r == ["y"]


bags = st.lists(st.sampled_from("abcde"), max_size=12)


@given(bags, bags)
def test_multiset_intersection_preserved(a, b):
    da, db = disambiguate(a), disambiguate(b)
    d = build_dictionary([da], [db])
    ea, eb = encode(da, d), encode(db, d)
    assert ea.length == len(a)
    assert len(set(ea.tokens) & set(eb.tokens)) == sum((Counter(a) & Counter(b)).values())
