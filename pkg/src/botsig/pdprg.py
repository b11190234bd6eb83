"""Simulated pseudodeterministic generator with injectable noise.

The backend is a deterministic extendable-output function keyed by a master
seed.  Noise is injected in two ways controlled by the spec:

* a ``mu`` fraction of keys are classified *bad* (membership decided by a
  keyed hash of the key compared against ``mu``);
* *good* keys return their canonical expansion except with probability
  ``nu`` per evaluation, where the deviation is the canonical string with
  one key-derived bit flipped;
* bad keys return one of two fixed per-key candidates, each with
  probability 1/2 — the worst shape the pseudodeterminism contract admits.

Every key therefore has a two-point output support, which downstream
abort-recognition layers rely on.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache

from .bits import Bits
from .errors import InvalidLength, PreconditionViolated
from .tape import RandomTape

GOOD = "Good"
BAD = "Bad"


@dataclass(frozen=True)
class PdPrgSpec:
    """Parameters of the simulated generator.

    ``master_seed`` fixes the simulated universe: which keys are bad, every
    key's canonical output, and the bad-key alternatives.
    """

    key_len: int
    out_len: int
    mu: float
    nu: float
    master_seed: bytes

    def __post_init__(self):
        if self.out_len <= self.key_len:
            raise PreconditionViolated(
                f"output length {self.out_len} must exceed key length {self.key_len}"
            )
        if not (0.0 <= self.mu < 0.5):
            raise PreconditionViolated(f"mu={self.mu} outside [0, 0.5)")
        if not (0.0 <= self.nu < 0.5):
            raise PreconditionViolated(f"nu={self.nu} outside [0, 0.5)")

    def to_json(self) -> dict:
        return {
            "key_len": self.key_len,
            "out_len": self.out_len,
            "mu": self.mu,
            "nu": self.nu,
            "master_seed_hex": self.master_seed.hex(),
        }

    @staticmethod
    def from_json(doc: dict) -> "PdPrgSpec":
        return PdPrgSpec(
            key_len=int(doc["key_len"]),
            out_len=int(doc["out_len"]),
            mu=float(doc["mu"]),
            nu=float(doc["nu"]),
            master_seed=bytes.fromhex(doc["master_seed_hex"]),
        )

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _check_key(spec: PdPrgSpec, key: Bits) -> None:
    if key.length != spec.key_len:
        raise InvalidLength(
            f"key is {key.length} bits, spec wants {spec.key_len}"
        )


@lru_cache(maxsize=1 << 17)
def _key_profile(spec: PdPrgSpec, key: Bits):
    """Everything deterministic about one key, from a single XOF squeeze.

    Returns (is_bad, first_candidate, second_candidate, p_first): the
    two-point output support of one evaluation and the probability of the
    first point.  For a good key the second candidate is the canonical
    output with one key-derived bit flipped; for a bad key it is an
    unrelated second string and both probabilities are 1/2.
    """
    out_bytes = (spec.out_len + 7) // 8
    h = hashlib.shake_256()
    h.update(len(spec.master_seed).to_bytes(2, "big"))
    h.update(spec.master_seed)
    h.update(b"pdprg")
    h.update(spec.key_len.to_bytes(4, "big"))
    h.update(key.to_bytes())
    stream = h.digest(2 * out_bytes + 16)

    canonical = Bits.from_bytes(stream[:out_bytes], spec.out_len)
    tail = stream[2 * out_bytes:]
    class_u = int.from_bytes(tail[8:16], "big") / 2.0**64
    is_bad = class_u < spec.mu
    if is_bad:
        alt = Bits.from_bytes(stream[out_bytes:2 * out_bytes], spec.out_len)
        if alt == canonical:
            alt = canonical.flip(spec.out_len - 1)
        return (True, canonical, alt, 0.5)
    if spec.nu == 0.0:
        # Degenerate support: the deviation candidate is never drawn.
        return (False, canonical, canonical, 1.0)
    flip_pos = int.from_bytes(tail[:8], "big") % spec.out_len
    return (False, canonical, canonical.flip(flip_pos), 1.0 - spec.nu)


def classify_key(spec: PdPrgSpec, key: Bits) -> str:
    """Deterministic good/bad verdict for a key (test oracle for the bad set)."""
    _check_key(spec, key)
    return BAD if _key_profile(spec, key)[0] else GOOD


def canonical_output(spec: PdPrgSpec, key: Bits) -> Bits:
    """The key's modal output: a deterministic expansion to ``out_len`` bits."""
    _check_key(spec, key)
    return _key_profile(spec, key)[1]


def support(spec: PdPrgSpec, key: Bits) -> tuple[tuple[Bits, float], tuple[Bits, float]]:
    """The output distribution of ``evaluate`` for this key, as two points.

    Good key: (canonical, 1-nu) and (canonical with one bit flipped, nu);
    with nu=0 the second point collapses onto the first.  Bad key: the two
    fixed candidates, 1/2 each.
    """
    _check_key(spec, key)
    _, a, b, p_a = _key_profile(spec, key)
    return (a, p_a), (b, 1.0 - p_a)


def evaluate(spec: PdPrgSpec, key: Bits, tape: RandomTape) -> Bits:
    """One noisy evaluation of the generator."""
    _check_key(spec, key)
    _, a, b, p_a = _key_profile(spec, key)
    if p_a >= 1.0:
        return a
    return a if tape.uniform() < p_a else b
