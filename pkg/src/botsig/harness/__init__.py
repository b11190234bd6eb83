"""Statistical experiment engine: estimators, games, reports, players."""

from .estimators import (
    check_pseudodeterminism,
    estimate_bot_rate,
    estimate_correctness,
    estimate_sign_success,
)
from .games import (
    BudgetExceeded,
    TreePrfAdapter,
    XorPrgAdapter,
    forgery_game,
    multitime_game,
    om_suf_experiment,
    prf_game,
    suf_experiment,
    WIN,
    LOSE,
)
from .players import (
    BotPatternParity,
    ConstantGuess,
    FrequencyDistinguisher,
    KeyLeakForger,
    PlantedConstantPrg,
    PrfConstantGuess,
    RandomForger,
    RepeatQueryProbe,
    ReplayForger,
    TwoMessageForger,
)
from .reports import (
    CONTAINS_ZERO,
    DEFAULT_Z,
    RATE_AT_LEAST,
    RATE_AT_MOST,
    SUMMARY_HEADER,
    ExperimentReport,
    advantage_report,
    chernoff_sample_size,
    rate_report,
)

__all__ = [
    "BotPatternParity",
    "BudgetExceeded",
    "CONTAINS_ZERO",
    "ConstantGuess",
    "DEFAULT_Z",
    "ExperimentReport",
    "FrequencyDistinguisher",
    "KeyLeakForger",
    "LOSE",
    "PlantedConstantPrg",
    "PrfConstantGuess",
    "RATE_AT_LEAST",
    "RATE_AT_MOST",
    "RandomForger",
    "RepeatQueryProbe",
    "ReplayForger",
    "SUMMARY_HEADER",
    "TreePrfAdapter",
    "TwoMessageForger",
    "WIN",
    "XorPrgAdapter",
    "advantage_report",
    "chernoff_sample_size",
    "check_pseudodeterminism",
    "estimate_bot_rate",
    "estimate_correctness",
    "estimate_sign_success",
    "forgery_game",
    "multitime_game",
    "om_suf_experiment",
    "prf_game",
    "suf_experiment",
    "rate_report",
]
