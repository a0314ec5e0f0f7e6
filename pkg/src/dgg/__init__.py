"""Finite deterministic graphical games in pure stationary strategies."""

from .errors import (
    CapExceeded,
    CycleLabelMismatch,
    CyclicTournament,
    DggError,
    DimacsError,
    EmptyClause,
    GameFileError,
    InvalidGame,
    LabelCollision,
    NoCyclicOutcomes,
    NoNEFound,
    NoTerminalReachable,
    PreconditionFailed,
    UnknownOutcome,
)
from .graph import (
    Condensation,
    Digraph,
    SccClass,
    SccDecomposition,
    condense,
    is_symmetric,
    reachable_from,
    scc_decompose,
    topological_order,
)
from .game import (
    DEFAULT_CELL_CAP,
    GameStructure,
    NormalForm,
    Outcome,
    OutcomeKind,
    OutcomeSet,
    Play,
    Strategy,
    StrategyProfile,
    ValidationIssue,
    build_outcomes,
    format_profile,
    format_strategy,
    normal_form,
    outcome_of,
    play,
    strategies,
    validate,
)
from .prefs import (
    DEFAULT_PROFILE_CAP,
    Preference,
    PreferenceProfile,
    cnd_c0,
    cnd_c22,
    enumerate_preference_profiles,
    merge_cyclic,
    parse_preference,
    profile_by_index,
    profile_count,
    rank_vector,
)
from .equilibrium import (
    all_ne,
    brute_force_ne_free_profiles,
    construct_ne_play_once_c0,
    count_ne_free_profiles,
    delete_bad_terminal_moves,
    improving_players,
    is_ne,
    is_play_once,
    iter_ne_free_profiles,
)
from .sat import (
    AcyclicityClause,
    Cnf,
    PrefVar,
    SituationClause,
    build_acyclicity_cnf,
    build_ne_free_cnf,
    decode_model,
    encode,
    enumerate_models,
    format_dimacs,
    parse_dimacs,
    parse_model,
    profile_to_assignment,
    sat_ne_free_profiles,
    satisfies,
    solve,
    to_dimacs,
)
from .gamefile import GameFile, merged_game_file, parse_game_file, print_game_file
from .fixtures import (
    BlackmailExample,
    CheckResult,
    Counterexample,
    VerifyReport,
    annotated_table,
    blackmail,
    counterexample,
    counterexample_game,
    counterexample_preferences,
    verify_counterexample,
)

__version__ = "0.1.0"

__all__ = [
    "AcyclicityClause",
    "BlackmailExample",
    "CapExceeded",
    "CheckResult",
    "Cnf",
    "Condensation",
    "Counterexample",
    "CycleLabelMismatch",
    "CyclicTournament",
    "DEFAULT_CELL_CAP",
    "DEFAULT_PROFILE_CAP",
    "DggError",
    "Digraph",
    "DimacsError",
    "EmptyClause",
    "GameFile",
    "GameFileError",
    "GameStructure",
    "InvalidGame",
    "LabelCollision",
    "NoCyclicOutcomes",
    "NoNEFound",
    "NoTerminalReachable",
    "NormalForm",
    "Outcome",
    "OutcomeKind",
    "OutcomeSet",
    "Play",
    "PrefVar",
    "PreconditionFailed",
    "Preference",
    "PreferenceProfile",
    "SccClass",
    "SccDecomposition",
    "SituationClause",
    "Strategy",
    "StrategyProfile",
    "UnknownOutcome",
    "ValidationIssue",
    "VerifyReport",
    "all_ne",
    "annotated_table",
    "blackmail",
    "brute_force_ne_free_profiles",
    "build_acyclicity_cnf",
    "build_ne_free_cnf",
    "build_outcomes",
    "cnd_c0",
    "cnd_c22",
    "condense",
    "construct_ne_play_once_c0",
    "count_ne_free_profiles",
    "counterexample",
    "counterexample_game",
    "counterexample_preferences",
    "decode_model",
    "delete_bad_terminal_moves",
    "encode",
    "enumerate_models",
    "enumerate_preference_profiles",
    "format_dimacs",
    "format_profile",
    "format_strategy",
    "improving_players",
    "is_ne",
    "is_play_once",
    "is_symmetric",
    "iter_ne_free_profiles",
    "merge_cyclic",
    "merged_game_file",
    "normal_form",
    "outcome_of",
    "parse_dimacs",
    "parse_game_file",
    "parse_model",
    "parse_preference",
    "play",
    "print_game_file",
    "profile_by_index",
    "profile_count",
    "profile_to_assignment",
    "rank_vector",
    "reachable_from",
    "sat_ne_free_profiles",
    "satisfies",
    "scc_decompose",
    "solve",
    "strategies",
    "to_dimacs",
    "topological_order",
    "validate",
    "verify_counterexample",
]
