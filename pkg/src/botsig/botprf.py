"""GGM-style tree PRF over a length-doubling abort-recognizing generator.

Each level expands the current node key to twice its length and keeps the
half selected by the next input bit; an abort at any level aborts the whole
evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import BOT, Bits, BotValue
from .botprg import BotPrgSpec, xor_prg_eval
from .errors import InvalidLength, PreconditionViolated
from .tape import RandomTape


@dataclass(frozen=True)
class TreePrfSpec:
    """Tree PRF parameters: a doubling generator plus the input length."""

    prg: BotPrgSpec
    input_len: int

    def __post_init__(self):
        if self.prg.out_len != 2 * self.prg.composite_key_len:
            raise PreconditionViolated(
                f"generator must double: out {self.prg.out_len} != "
                f"2 x {self.prg.composite_key_len}"
            )
        if self.input_len < 1:
            raise PreconditionViolated("input length must be at least 1")

    @property
    def key_len(self) -> int:
        return self.prg.composite_key_len

    @property
    def output_len(self) -> int:
        return self.prg.composite_key_len

    def to_json(self) -> dict:
        return {"prg": self.prg.to_json(), "input_len": self.input_len}

    @staticmethod
    def from_json(doc: dict) -> "TreePrfSpec":
        return TreePrfSpec(
            prg=BotPrgSpec.from_json(doc["prg"]),
            input_len=int(doc["input_len"]),
        )


def half_select(y: Bits, b: int) -> Bits:
    """First half of ``y`` when b=0, last half when b=1."""
    if y.length % 2:
        raise InvalidLength(f"cannot halve {y.length} bits")
    half = y.length // 2
    return y.suffix(half) if b else y.prefix(half)


def tree_prf_eval(
    spec: TreePrfSpec,
    key: Bits,
    x: Bits,
    tape: RandomTape,
    trace: list[Bits] | None = None,
) -> BotValue:
    """Descend the tree along ``x``; abort as soon as any level aborts.

    ``trace``, when given, collects the intermediate node keys (one per
    level, excluding the root) for instrumentation.
    """
    if key.length != spec.key_len:
        raise InvalidLength(
            f"key is {key.length} bits, expected {spec.key_len}"
        )
    if x.length != spec.input_len:
        raise InvalidLength(
            f"input is {x.length} bits, expected {spec.input_len}"
        )
    prg = spec.prg
    half = prg.composite_key_len
    node = key
    for bit in x:
        expanded = xor_prg_eval(prg, node, tape)
        if expanded is BOT:
            return BOT
        node = expanded.suffix(half) if bit else expanded.prefix(half)
        if trace is not None:
            trace.append(node)
    return node


def prf_bot_rate_bound(m: int, mu: float, delta: float) -> float:
    """Pointwise abort-rate bound for an m-level descent: m*mu + delta."""
    if m < 0 or mu < 0 or delta < 0:
        raise PreconditionViolated("arguments must be non-negative")
    return m * mu + delta
