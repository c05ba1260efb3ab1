"""Radar tracking strings and unique tournaments."""

from .bijection import (
    decompose_blocks,
    il_from_nontracking,
    score_vector_from_string,
    string_dual,
    string_to_tournament,
    strip_initial_loss,
    tournament_to_string,
)
from .counting import (
    SequenceTable,
    count_by_enumeration,
    count_by_transfer_matrix,
    count_compositions,
    recurrence_ntr,
    ut,
)
from .rules import DEFAULT_RULE, Dfa, TrackingRule, build_dfa, is_tracking_oracle, minimize_dfa, run_dfa
from .tournament import (
    Tournament,
    basic_tournament,
    canonical_form,
    compose,
    condensation,
    decompose_unique,
    dual,
    is_isomorphic,
    score_vector,
    unique_census,
)

__version__ = "0.1.0"
