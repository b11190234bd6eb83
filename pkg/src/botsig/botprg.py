"""Abort-recognizing generator built from the noisy backend.

Two stages: per-key repetition with a 60%-threshold vote turns backend
noise into the recognizable abort value, then a fan-in of independent
subkeys is combined with abort-absorbing XOR.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import pdprg
from .bits import BOT, Bits, BotValue
from .combinators import bot_xor, vote_threshold
from .errors import InvalidLength, PreconditionViolated
from .pdprg import PdPrgSpec
from .tape import RandomTape


@dataclass(frozen=True)
class BotPrgSpec:
    """Vote/XOR generator parameters.

    ``vote_reps`` inner evaluations feed each vote; ``fanin`` voted subkeys
    are XORed together.  The composite key is the concatenation of the
    subkeys.  ``strict_stretch`` additionally enforces the regime where the
    output is longer than the whole composite key.
    """

    base: PdPrgSpec
    vote_reps: int
    fanin: int
    strict_stretch: bool = field(default=False)

    def __post_init__(self):
        if self.vote_reps < 1:
            raise PreconditionViolated("vote_reps must be at least 1")
        if self.fanin < 1:
            raise PreconditionViolated("fanin must be at least 1")
        if self.strict_stretch and self.base.out_len <= self.composite_key_len:
            raise PreconditionViolated(
                f"strict stretch needs out_len > {self.composite_key_len}"
            )

    @property
    def composite_key_len(self) -> int:
        return self.fanin * self.base.key_len

    @property
    def out_len(self) -> int:
        return self.base.out_len

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "vote_reps": self.vote_reps,
            "fanin": self.fanin,
            "strict_stretch": self.strict_stretch,
        }

    @staticmethod
    def from_json(doc: dict) -> "BotPrgSpec":
        return BotPrgSpec(
            base=PdPrgSpec.from_json(doc["base"]),
            vote_reps=int(doc["vote_reps"]),
            fanin=int(doc["fanin"]),
            strict_stretch=bool(doc.get("strict_stretch", False)),
        )


def vote_prg_eval(spec: BotPrgSpec, key: Bits, tape: RandomTape) -> BotValue:
    """Evaluate the backend ``vote_reps`` times on one key and vote.

    The backend's output support for a fixed key is two-point, so the
    count of first-candidate outcomes among the repetitions is an exact
    Binomial draw; the vote reduces to comparing the two counts against
    the 60% threshold.  (Tests cross-check this against the explicit
    sample-list vote.)
    """
    if key.length != spec.base.key_len:
        raise InvalidLength(
            f"key is {key.length} bits, backend wants {spec.base.key_len}"
        )
    _, a, b, p_a = pdprg._key_profile(spec.base, key)
    if p_a >= 1.0:
        return a
    reps = spec.vote_reps
    count_a = tape.binomial(reps, p_a)
    threshold = vote_threshold(reps)
    if count_a >= threshold:
        return a
    if reps - count_a >= threshold:
        return b
    return BOT


def split_composite(spec: BotPrgSpec, composite_key: Bits) -> list[Bits]:
    if composite_key.length != spec.composite_key_len:
        raise InvalidLength(
            f"composite key is {composite_key.length} bits, "
            f"expected {spec.composite_key_len}"
        )
    if spec.fanin == 1:
        return [composite_key]
    n = spec.base.key_len
    mask = (1 << n) - 1
    v = composite_key.value
    return [
        Bits(n, (v >> ((spec.fanin - 1 - i) * n)) & mask)
        for i in range(spec.fanin)
    ]


def xor_prg_eval(spec: BotPrgSpec, composite_key: Bits, tape: RandomTape) -> BotValue:
    """Vote-evaluate every subkey and combine with abort-absorbing XOR."""
    subkeys = split_composite(spec, composite_key)
    if spec.fanin == 1:
        return vote_prg_eval(spec, subkeys[0], tape)
    results = []
    for sub in subkeys:
        r = vote_prg_eval(spec, sub, tape)
        if r is BOT:
            return BOT
        results.append(r)
    return bot_xor(results)


def composite_good(spec: BotPrgSpec, composite_key: Bits) -> bool:
    """True iff every subkey is classified good by the backend."""
    return all(
        pdprg.classify_key(spec.base, sub) == pdprg.GOOD
        for sub in split_composite(spec, composite_key)
    )


def canonical_xor_output(spec: BotPrgSpec, composite_key: Bits) -> Bits:
    """XOR of the subkeys' canonical outputs (the modal non-abort value)."""
    subkeys = split_composite(spec, composite_key)
    out = pdprg.canonical_output(spec.base, subkeys[0])
    for sub in subkeys[1:]:
        out = out.xor(pdprg.canonical_output(spec.base, sub))
    return out
