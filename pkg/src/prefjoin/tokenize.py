"""String tokenization, bag disambiguation and the document-frequency token order."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .model import Dataset, Side, TokenSet

logger = logging.getLogger(__name__)

Token = tuple[str, int]


class UnknownTokenError(KeyError):
    pass


@dataclass(frozen=True)
class TokenizerConfig:
    """How strings become token bags.

    ``case_fold`` and ``whitespace_normalize`` default to on for word mode and
    off for q-gram mode when left as ``None``.
    """

    mode: str = "words"
    q: int = 2
    case_fold: bool | None = None
    whitespace_normalize: bool | None = None

    def __post_init__(self):
        if self.mode not in ("words", "qgrams"):
            raise ValueError(f"unknown tokenizer mode {self.mode!r}")
        if self.mode == "qgrams" and self.q < 1:
            raise ValueError("q must be >= 1")

    @classmethod
    def parse(cls, text: str) -> "TokenizerConfig":
        """Parse ``words`` or ``qgrams:N``."""
        if text == "words":
            return cls("words")
        if text.startswith("qgrams:"):
            return cls("qgrams", q=int(text.split(":", 1)[1]))
        raise ValueError(f"bad tokenizer spec {text!r}; expected 'words' or 'qgrams:N'")

    @property
    def folds_case(self) -> bool:
        return self.mode == "words" if self.case_fold is None else self.case_fold

    @property
    def normalizes_whitespace(self) -> bool:
        if self.whitespace_normalize is None:
            return self.mode == "words"
        return self.whitespace_normalize


def tokenize_string(text: str, config: TokenizerConfig) -> list[str]:
    """Return the bag of surface tokens of ``text`` (duplicates kept)."""
    if config.folds_case:
        text = text.casefold()
    if config.normalizes_whitespace:
        text = " ".join(text.split())
    if config.mode == "words":
        return text.split()
    if not text:
        return []
    q = config.q
    if len(text) < q:
        return [text]
    return [text[i : i + q] for i in range(len(text) - q + 1)]


def disambiguate(bag: Iterable[str]) -> list[Token]:
    """Turn the k-th occurrence of ``t`` into ``(t, k)`` so the bag becomes a set."""
    seen: Counter[str] = Counter()
    out = []
    for t in bag:
        seen[t] += 1
        out.append((t, seen[t]))
    return out


@dataclass
class Dictionary:
    """Token ids in global order: id ``i`` is the token of rank ``i``.

    Rarest tokens come first; ties are broken by surface string, then by
    occurrence index.
    """

    token_to_id: dict[Token, int]
    doc_freq: dict[Token, int]
    id_to_token: list[Token] = field(default_factory=list)

    def rank(self, token: Token) -> int:
        return self.token_to_id[token]

    def __len__(self) -> int:
        return len(self.id_to_token)


def build_dictionary(r_sets: Iterable[Sequence[Token]], s_sets: Iterable[Sequence[Token]]) -> Dictionary:
    df: Counter[Token] = Counter()
    for rec in list(r_sets) + list(s_sets):
        df.update(set(rec))
    ordered = sorted(df, key=lambda t: (df[t], t[0], t[1]))
    return Dictionary(
        token_to_id={t: i for i, t in enumerate(ordered)},
        doc_freq=dict(df),
        id_to_token=ordered,
    )


def encode(record: Sequence[Token], dictionary: Dictionary) -> TokenSet:
    try:
        ids = sorted(dictionary.token_to_id[t] for t in record)
    except KeyError as exc:
        raise UnknownTokenError(f"token {exc.args[0]!r} not in dictionary") from None
    return TokenSet(tuple(ids))


def decode(tokens: TokenSet, dictionary: Dictionary) -> list[Token]:
    return [dictionary.id_to_token[i] for i in tokens.tokens]


@dataclass
class Corpus:
    """Both sides encoded against one shared dictionary.

    ``dropped_r`` / ``dropped_s`` list the external ids of records that
    tokenized to nothing and were left out of the join.
    """

    R: Dataset
    S: Dataset
    dictionary: Dictionary
    dropped_r: list[str]
    dropped_s: list[str]


def _bags(texts, ids, config, side):
    kept_ids, sets, dropped = [], [], []
    for ext, text in zip(ids, texts):
        bag = tokenize_string(text, config)
        if not bag:
            logger.warning("dropping empty record %r on side %s", ext, side.value)
            dropped.append(ext)
            continue
        kept_ids.append(ext)
        sets.append(disambiguate(bag))
    return kept_ids, sets, dropped


def build_corpus(
    r_texts: Sequence[str],
    s_texts: Sequence[str],
    config: TokenizerConfig,
    r_ids: Sequence[str] | None = None,
    s_ids: Sequence[str] | None = None,
) -> Corpus:
    """Tokenize, disambiguate and encode both sides; empty records are dropped."""
    r_ids = [str(i) for i in range(len(r_texts))] if r_ids is None else list(r_ids)
    s_ids = [str(i) for i in range(len(s_texts))] if s_ids is None else list(s_ids)
    r_keep, r_sets, r_drop = _bags(r_texts, r_ids, config, Side.R)
    s_keep, s_sets, s_drop = _bags(s_texts, s_ids, config, Side.S)
    d = build_dictionary(r_sets, s_sets)
    R = Dataset(Side.R, tuple(encode(x, d) for x in r_sets), tuple(r_keep))
    S = Dataset(Side.S, tuple(encode(x, d) for x in s_sets), tuple(s_keep))
    return Corpus(R, S, d, r_drop, s_drop)
