"""Frequency estimators: abort rates, pseudodeterminism, scheme correctness."""

from __future__ import annotations

from collections import Counter

from ..bits import BOT
from ..errors import PreconditionViolated
from ..signatures.verdict import Verdict
from ..tape import RandomTape
from .reports import (
    DEFAULT_Z,
    RATE_AT_LEAST,
    RATE_AT_MOST,
    ExperimentReport,
    rate_report,
)


def estimate_bot_rate(
    evaluator,
    key_source,
    trials: int,
    tape: RandomTape,
    name: str = "bot-rate",
    z: float = DEFAULT_Z,
    analytic_bound: float | None = None,
) -> ExperimentReport:
    """Frequency of aborts over fresh keys drawn from ``key_source``."""
    if trials < 1:
        raise PreconditionViolated("trials must be at least 1")
    bots = 0
    for _ in range(trials):
        key = key_source(tape)
        if evaluator(key, tape) is BOT:
            bots += 1
    return rate_report(
        name, trials, bots, z=z,
        analytic_bound=analytic_bound,
        bound_direction=RATE_AT_MOST if analytic_bound is not None else None,
    )


def check_pseudodeterminism(
    evaluator,
    keys,
    reps_per_key: int,
    tape: RandomTape,
    name: str = "pseudodeterminism",
    z: float = DEFAULT_Z,
) -> ExperimentReport:
    """Max fraction of evaluations per key outside {modal value, abort}.

    The verdict passes only when zero violations occur anywhere; the
    reported rate is the worst per-key violation fraction.
    """
    if reps_per_key < 2:
        raise PreconditionViolated("need at least two repetitions per key")
    keys = list(keys)
    worst = 0.0
    clean_keys = 0
    for key in keys:
        outcomes = Counter(evaluator(key, tape) for _ in range(reps_per_key))
        non_bot = {v: c for v, c in outcomes.items() if v is not BOT}
        if non_bot:
            modal = max(non_bot, key=non_bot.get)
            violations = sum(c for v, c in non_bot.items() if v != modal)
        else:
            violations = 0
        fraction = violations / reps_per_key
        worst = max(worst, fraction)
        clean_keys += violations == 0
    return ExperimentReport(
        name=name,
        trials=len(keys),
        successes=clean_keys,
        rate=worst,
        ci_halfwidth=0.0,
        z=z,
        analytic_bound=0.0,
        bound_direction=RATE_AT_MOST,
        verdict="pass" if worst == 0.0 else "fail",
        extra={"reps_per_key": reps_per_key},
    )


def estimate_correctness(
    scheme,
    trials: int,
    tape: RandomTape,
    name: str = "correctness",
    z: float = DEFAULT_Z,
    analytic_bound: float | None = None,
    fresh_keys: bool = True,
) -> ExperimentReport:
    """Sign/verify round-trip success rate for a signature scheme."""
    if trials < 1:
        raise PreconditionViolated("trials must be at least 1")
    wins = 0
    if not fresh_keys:
        keypair = scheme.keygen(tape)
    for _ in range(trials):
        sk, vk = scheme.keygen(tape) if fresh_keys else keypair
        m = tape.bits(scheme.message_len)
        sig = scheme.sign(sk, m, tape)
        if scheme.verify(vk, m, sig, tape) is Verdict.ACCEPT:
            wins += 1
    return rate_report(
        name, trials, wins, z=z,
        analytic_bound=analytic_bound,
        bound_direction=RATE_AT_LEAST if analytic_bound is not None else None,
    )


def estimate_sign_success(
    scheme, sks, trials: int, tape: RandomTape, name: str = "sign-success",
    z: float = DEFAULT_Z,
) -> ExperimentReport:
    """Fraction of signing attempts that do not abort (fixed key pair)."""
    wins = 0
    for _ in range(trials):
        m = tape.bits(scheme.message_len)
        if scheme.sign(sks, m, tape) is not BOT:
            wins += 1
    return rate_report(name, trials, wins, z=z)
