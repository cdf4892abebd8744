"""Self-tuning set similarity join.

Give it two record collections, a set similarity and a result-set preference
(``maxgroups`` or ``minoutjoin``); it finds the threshold the preference likes
best and returns the join at that threshold.
"""

from .engine import EngineConfig, EngineOutcome, join_at_star, join_strings, run
from .model import Dataset, ExactSim, JoinResult, RecordId, Side, SimKind, TokenSet
from .oracle import oracle_run
from .preference import MAXGROUPS, MINOUTJOIN, PreferenceState, full_outer_join
from .simcore import SimilarityMeasure
from .tokenize import TokenizerConfig, build_corpus

__all__ = [
    "Dataset",
    "EngineConfig",
    "EngineOutcome",
    "ExactSim",
    "JoinResult",
    "MAXGROUPS",
    "MINOUTJOIN",
    "PreferenceState",
    "RecordId",
    "Side",
    "SimKind",
    "SimilarityMeasure",
    "TokenSet",
    "TokenizerConfig",
    "build_corpus",
    "full_outer_join",
    "join_at_star",
    "join_strings",
    "oracle_run",
    "run",
]
