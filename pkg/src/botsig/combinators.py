"""Deterministic combinators over abort-aware values.

These are the pure building blocks everything else composes: the abort-
masking selector ``is_bot``, abort-absorbing XOR, the 60%-threshold vote,
and the greedy division of a finite output distribution into at most three
halves-bounded sets.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .bits import BOT, Bits, BotValue
from .errors import EmptyInput, InvalidLength, PreconditionViolated


def is_bot(a: BotValue, b: Bits) -> BotValue:
    """Return BOT if ``a`` aborted, otherwise ``b`` verbatim.

    When ``a`` carries bits, ``b`` must have the same length.
    """
    if a is BOT:
        return BOT
    if b.length != a.length:
        raise InvalidLength(
            f"replacement is {b.length} bits, expected {a.length}"
        )
    return b


def bot_xor(values: list[BotValue]) -> BotValue:
    """XOR a nonempty list of values; any abort makes the result abort."""
    if not values:
        raise EmptyInput("bot_xor of an empty list")
    length = None
    acc = 0
    for v in values:
        if v is BOT:
            # Still validate lengths of the remainder?  No: abort absorbs
            # immediately, mirroring how evaluation pipelines bail out.
            return BOT
        if length is None:
            length = v.length
        elif v.length != length:
            raise InvalidLength(f"mixed lengths {length} and {v.length}")
        acc ^= v.value
    return Bits(length, acc)


def vote_threshold(n: int) -> int:
    """Smallest count that is at least 60% of ``n`` (integer arithmetic)."""
    return (3 * n + 4) // 5


def vote(samples: list[Bits]) -> BotValue:
    """Majority vote with a 60% acceptance threshold.

    Returns the unique value appearing in at least 60% of the samples, or
    BOT when no value clears the threshold.  Since 60% > 50%, at most one
    value can win.
    """
    if not samples:
        raise EmptyInput("vote over no samples")
    length = samples[0].length
    for s in samples:
        if s.length != length:
            raise InvalidLength(f"mixed lengths {length} and {s.length}")
    winner, count = Counter(s.value for s in samples).most_common(1)[0]
    if count >= vote_threshold(len(samples)):
        return Bits(length, winner)
    return BOT


@dataclass(frozen=True)
class FiniteOutputDistribution:
    """A finite distribution over same-length bitstrings.

    ``entries`` is an ordered list of (value, mass) pairs; masses are
    non-negative, sum to 1 within 1e-9, and values are distinct.
    """

    entries: tuple[tuple[Bits, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        seen = set()
        total = 0.0
        for value, mass in self.entries:
            if mass < 0:
                raise PreconditionViolated(f"negative mass {mass}")
            key = (value.length, value.value)
            if key in seen:
                raise PreconditionViolated(f"duplicate outcome {value!r}")
            seen.add(key)
            total += mass
        if abs(total - 1.0) > 1e-9:
            raise PreconditionViolated(f"masses sum to {total}, not 1")

    @staticmethod
    def from_pairs(pairs) -> "FiniteOutputDistribution":
        return FiniteOutputDistribution(tuple((v, float(m)) for v, m in pairs))


_HALF_SLACK = 1e-12


def set_division(
    dist: FiniteOutputDistribution,
) -> tuple[tuple[Bits, ...], tuple[Bits, ...], tuple[Bits, ...]]:
    """Greedily split the support into at most three sets of mass <= 1/2.

    Entries are scanned in the given order; each joins the current set if
    the set's mass stays at or below one half, otherwise a new set is
    opened.  With every point mass below one half, three sets always
    suffice: four non-empty sets would force two disjoint pairs each of
    total mass above one half.
    """
    for value, mass in dist.entries:
        if mass >= 0.5:
            raise PreconditionViolated(
                f"point mass {mass} at {value!r} is not below 1/2"
            )
    sets: list[list[Bits]] = [[]]
    masses = [0.0]
    for value, mass in dist.entries:
        if masses[-1] + mass <= 0.5 + _HALF_SLACK:
            sets[-1].append(value)
            masses[-1] += mass
        else:
            sets.append([value])
            masses.append(mass)
    if len(sets) > 3:
        # Unreachable under the precondition; guard against float drift.
        raise PreconditionViolated("division needed more than three sets")
    while len(sets) < 3:
        sets.append([])
    return tuple(tuple(s) for s in sets)
