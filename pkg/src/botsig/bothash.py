"""Abort-aware one-way and compressing hash layers.

``bot_owf_eval`` realizes a one-way function from a generator with at least
triple stretch: the input is parsed as (seed, padding) and the seed gets
evaluated, so padding bits never influence the image.

The keyed compressing family is a desk-scale stand-in: the canonical value
is a keyed hash of (key, input) and a keyed classifier marks a ``mu``
fraction of inputs *bad*; bad inputs abort with probability exactly 1/2,
which keeps the per-input support two-point and makes the bad set
detectable by frequency.  Its collision resistance rests on the underlying
hash function, not on a reduction.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .bits import BOT, TOP, Bits, BotValue, BotValueOrTop
from .botprg import BotPrgSpec, xor_prg_eval
from .errors import InvalidLength, PreconditionViolated
from .tape import RandomTape


@dataclass(frozen=True)
class BotUowhfSpec:
    """Keyed compressing hash family parameters (in_len > out_len)."""

    key_len: int
    in_len: int
    out_len: int
    mu: float
    master_seed: bytes

    def __post_init__(self):
        if self.in_len <= self.out_len:
            raise PreconditionViolated(
                f"no compression: in {self.in_len} <= out {self.out_len}"
            )
        if not (0.0 <= self.mu < 1.0):
            raise PreconditionViolated(f"mu={self.mu} outside [0, 1)")

    @property
    def compression(self) -> float:
        return self.in_len / self.out_len

    def to_json(self) -> dict:
        return {
            "key_len": self.key_len,
            "in_len": self.in_len,
            "out_len": self.out_len,
            "mu": self.mu,
            "master_seed_hex": self.master_seed.hex(),
        }

    @staticmethod
    def from_json(doc: dict) -> "BotUowhfSpec":
        return BotUowhfSpec(
            key_len=int(doc["key_len"]),
            in_len=int(doc["in_len"]),
            out_len=int(doc["out_len"]),
            mu=float(doc["mu"]),
            master_seed=bytes.fromhex(doc["master_seed_hex"]),
        )


@lru_cache(maxsize=1 << 17)
def _hash_profile(spec: BotUowhfSpec, k: Bits, x: Bits) -> tuple[bool, Bits]:
    """(input_is_bad, canonical_value) for one (key, input) pair."""
    out_bytes = (spec.out_len + 7) // 8
    h = hashlib.shake_256()
    h.update(len(spec.master_seed).to_bytes(2, "big"))
    h.update(spec.master_seed)
    h.update(b"uowhf")
    h.update(k.length.to_bytes(4, "big"))
    h.update(k.to_bytes())
    h.update(x.length.to_bytes(4, "big"))
    h.update(x.to_bytes())
    stream = h.digest(out_bytes + 8)
    canonical = Bits.from_bytes(stream[:out_bytes], spec.out_len)
    class_u = int.from_bytes(stream[out_bytes:out_bytes + 8], "big") / 2.0**64
    return (class_u < spec.mu, canonical)


def uowhf_canonical(spec: BotUowhfSpec, k: Bits, x: Bits) -> Bits:
    """The unique non-abort value of H(k, x) (test oracle)."""
    return _hash_profile(spec, k, x)[1]


def uowhf_input_bad(spec: BotUowhfSpec, k: Bits, x: Bits) -> bool:
    """Whether ``x`` lies outside the good set of H(k, .) (test oracle)."""
    return _hash_profile(spec, k, x)[0]


def uowhf_eval(spec: BotUowhfSpec, k: Bits, x: Bits, tape: RandomTape) -> BotValue:
    """Evaluate H(k, x): canonical on good inputs, 50/50 abort on bad ones."""
    if k.length != spec.key_len:
        raise InvalidLength(f"hash key is {k.length} bits, expected {spec.key_len}")
    if x.length != spec.in_len:
        raise InvalidLength(f"input is {x.length} bits, expected {spec.in_len}")
    is_bad, canonical = _hash_profile(spec, k, x)
    if is_bad and tape.coin(0.5):
        return BOT
    return canonical


def bot_owf_eval(prg: BotPrgSpec, z: Bits, tape: RandomTape) -> BotValue:
    """One-way function from a generator with out_len >= 3 x key length.

    ``z`` has ``prg.out_len`` bits; the first ``prg.composite_key_len`` bits
    are the seed and the rest is discarded padding.
    """
    if prg.out_len < 3 * prg.composite_key_len:
        raise PreconditionViolated(
            f"stretch {prg.out_len} below 3 x {prg.composite_key_len}"
        )
    if z.length != prg.out_len:
        raise InvalidLength(f"input is {z.length} bits, expected {prg.out_len}")
    seed = z.prefix(prg.composite_key_len)
    return xor_prg_eval(prg, seed, tape)


def f_top(v: BotValue) -> BotValueOrTop:
    """Map abort to the TOP marker so it never equals a genuine image."""
    return TOP if v is BOT else v


def shift_family(
    base_eval: Callable[[Bits, RandomTape], BotValue], y: Bits
) -> Callable[[Bits, RandomTape], BotValue]:
    """Wrap a fixed function into the keyed family F_y(x) = F(y XOR x)."""

    def shifted(x: Bits, tape: RandomTape) -> BotValue:
        if x.length != y.length:
            raise InvalidLength(
                f"input is {x.length} bits, shift key has {y.length}"
            )
        return base_eval(y.xor(x), tape)

    return shifted
