"""Random instances for tests, benchmarks and demos."""

from __future__ import annotations

import random

from .model import Dataset, Side, TokenSet
from .tokenize import build_dictionary, disambiguate, encode


def _encode_sides(r_bags, s_bags):
    r_sets = [disambiguate(b) for b in r_bags]
    s_sets = [disambiguate(b) for b in s_bags]
    d = build_dictionary(r_sets, s_sets)
    R = Dataset(Side.R, tuple(encode(x, d) for x in r_sets), tuple(f"r{i}" for i in range(len(r_sets))))
    S = Dataset(Side.S, tuple(encode(x, d) for x in s_sets), tuple(f"s{i}" for i in range(len(s_sets))))
    return R, S


def random_instance(
    rng: random.Random, max_records: int = 30, max_universe: int = 12, max_len: int = 8
) -> tuple[Dataset, Dataset]:
    """Small R and S drawn from a tiny token universe, so ties are common."""
    universe = [f"t{k}" for k in range(rng.randint(2, max_universe))]
    top = min(max_len, len(universe))

    def side():
        return [rng.sample(universe, rng.randint(1, top)) for _ in range(rng.randint(1, max_records))]

    return _encode_sides(side(), side())


def random_token_set(rng: random.Random, universe: int = 12, max_len: int = 8) -> TokenSet:
    return TokenSet(tuple(sorted(rng.sample(range(universe), rng.randint(1, min(max_len, universe))))))


def noisy_entities(
    rng: random.Random,
    n: int,
    vocab: int = 20000,
    min_len: int = 5,
    max_len: int = 15,
    noise: float = 0.2,
) -> tuple[Dataset, Dataset, set[tuple[str, str]]]:
    """Two noisy copies of ``n`` word-bag entities, plus the true pairs.

    Words follow a Zipf-like law. Each copy drops or replaces every word with
    probability ``noise``.
    """
    weights = [1.0 / (k + 1) for k in range(vocab)]
    words = [f"w{k}" for k in range(vocab)]

    def entity():
        k = rng.randint(min_len, max_len)
        return rng.choices(words, weights, k=k)

    def perturb(bag):
        out = []
        for w in bag:
            x = rng.random()
            if x < noise / 2:
                continue
            out.append(rng.choice(words) if x < noise else w)
        return out or bag[:1]

    base = [entity() for _ in range(n)]
    r_bags = [perturb(b) for b in base]
    s_order = list(range(n))
    rng.shuffle(s_order)
    s_bags = [perturb(base[k]) for k in s_order]
    R, S = _encode_sides(r_bags, s_bags)
    truth = {(f"r{k}", f"s{pos}") for pos, k in enumerate(s_order)}
    return R, S, truth
