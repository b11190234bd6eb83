"""Experiment reports: rates, confidence intervals, verdicts.

Reports use normal-approximation (Wald) intervals at a configurable z
(default 2.576, two-sided 99%).  Asymptotic "negligible" claims are turned
into checkable verdicts: an advantage passes when its interval contains
zero; a rate passes when it respects its analytic bound within the
interval.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from ..errors import PreconditionViolated

DEFAULT_Z = 2.576

PASS = "pass"
FAIL = "fail"
INFO = "info"

# bound directions
RATE_AT_LEAST = "ge"          # rate must reach the analytic lower bound
RATE_AT_MOST = "le"           # rate must stay under the analytic upper bound
CONTAINS_ZERO = "contains_zero"  # the interval around the value must cover 0


@dataclass(frozen=True)
class ExperimentReport:
    name: str
    trials: int
    successes: int
    rate: float
    ci_halfwidth: float
    z: float = DEFAULT_Z
    analytic_bound: float | None = None
    bound_direction: str | None = None
    verdict: str = INFO
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.successes > self.trials:
            raise PreconditionViolated("successes cannot exceed trials")

    def passed(self) -> bool:
        return self.verdict != FAIL

    def to_json(self) -> dict:
        doc = {
            "name": self.name,
            "trials": self.trials,
            "successes": self.successes,
            "rate": self.rate,
            "ci_halfwidth": self.ci_halfwidth,
            "z": self.z,
            "analytic_bound": self.analytic_bound,
            "bound_direction": self.bound_direction,
            "verdict": self.verdict,
        }
        if self.extra:
            doc["extra"] = self.extra
        return doc

    def to_json_line(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def summary_row(self) -> str:
        bound = (
            f"{self.analytic_bound:.6g} ({self.bound_direction})"
            if self.analytic_bound is not None
            else "-"
        )
        return (
            f"{self.name:<34} {self.trials:>8} {self.rate:>10.6f} "
            f"+/-{self.ci_halfwidth:<9.6f} {bound:<22} {self.verdict}"
        )


SUMMARY_HEADER = (
    f"{'experiment':<34} {'trials':>8} {'rate':>10} {'ci':<12} "
    f"{'bound':<22} verdict"
)


def _verdict(rate: float, ci: float, bound: float | None, direction: str | None) -> str:
    if direction is None or bound is None and direction != CONTAINS_ZERO:
        return INFO
    if direction == CONTAINS_ZERO:
        return PASS if rate <= ci else FAIL
    if direction == RATE_AT_LEAST:
        return PASS if rate >= bound - ci else FAIL
    if direction == RATE_AT_MOST:
        return PASS if rate <= bound + ci else FAIL
    raise PreconditionViolated(f"unknown bound direction {direction!r}")


def wald_halfwidth(rate: float, trials: int, z: float) -> float:
    return z * math.sqrt(max(rate * (1.0 - rate), 0.0) / trials)


def rate_report(
    name: str,
    trials: int,
    successes: int,
    z: float = DEFAULT_Z,
    analytic_bound: float | None = None,
    bound_direction: str | None = None,
    extra: dict | None = None,
) -> ExperimentReport:
    """Report for a success-frequency estimate."""
    if trials < 1:
        raise PreconditionViolated("trials must be at least 1")
    rate = successes / trials
    ci = wald_halfwidth(rate, trials, z)
    return ExperimentReport(
        name=name,
        trials=trials,
        successes=successes,
        rate=rate,
        ci_halfwidth=ci,
        z=z,
        analytic_bound=analytic_bound,
        bound_direction=bound_direction,
        verdict=_verdict(rate, ci, analytic_bound, bound_direction),
        extra=extra or {},
    )


def advantage_report(
    name: str,
    trials: int,
    correct_guesses: int,
    z: float = DEFAULT_Z,
    threshold: float | None = None,
    extra: dict | None = None,
) -> ExperimentReport:
    """Report for a distinguishing game: rate is |2 p - 1| for guess rate p.

    Without ``threshold`` the verdict is "interval contains zero"; with it,
    the advantage must reach the threshold (planted-control checks).
    """
    if trials < 1:
        raise PreconditionViolated("trials must be at least 1")
    p = correct_guesses / trials
    advantage = abs(2.0 * p - 1.0)
    ci = 2.0 * wald_halfwidth(p, trials, z)
    if threshold is None:
        verdict = _verdict(advantage, ci, None, CONTAINS_ZERO)
        bound, direction = None, CONTAINS_ZERO
    else:
        verdict = _verdict(advantage, ci, threshold, RATE_AT_LEAST)
        bound, direction = threshold, RATE_AT_LEAST
    return ExperimentReport(
        name=name,
        trials=trials,
        successes=correct_guesses,
        rate=advantage,
        ci_halfwidth=ci,
        z=z,
        analytic_bound=bound,
        bound_direction=direction,
        verdict=verdict,
        extra=extra or {},
    )


def chernoff_sample_size(deviation: float, mean_bound: float, confidence: float) -> int:
    """Smallest n with exp(-n * mean_bound * deviation^2 / 2) <= 1 - confidence.

    Sizes a Monte Carlo loop so a relative deviation of ``deviation`` from a
    mean rate of ``mean_bound`` is excluded at the requested confidence.
    """
    if not (0.0 < deviation <= 1.0):
        raise PreconditionViolated("deviation must lie in (0, 1]")
    if not (0.0 < mean_bound < 1.0):
        raise PreconditionViolated("mean_bound must lie in (0, 1)")
    if not (0.0 <= confidence < 1.0):
        raise PreconditionViolated("confidence must lie in [0, 1)")
    if confidence == 0.0:
        return 1
    needed = 2.0 * math.log(1.0 / (1.0 - confidence)) / (mean_bound * deviation**2)
    return max(1, math.ceil(needed))
