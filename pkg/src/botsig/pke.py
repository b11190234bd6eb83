"""Parallel-repetition correctness lifter for abort-erroring bit encryption.

The base scheme is a classical mock: keyed-hash one-time-pad bit
encryption whose decryption aborts at a configurable rate.  The lifter
encrypts under q independent keys and decodes by minimum-index agreement:
abort if every component aborted or any two surviving components
disagree, else take the first survivor.  Disagreement therefore always
surfaces as an abort, never as a wrong bit, and the residual error drops
from delta to delta^q.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .bits import BOT, Bits
from .errors import InvalidLength, PreconditionViolated
from .tape import RandomTape


@dataclass(frozen=True)
class MockBasePke:
    """Single-bit scheme with per-decryption abort rate ``delta``."""

    key_len: int
    delta: float
    master_seed: bytes

    def __post_init__(self):
        if not (0.0 <= self.delta < 1.0):
            raise PreconditionViolated(f"delta={self.delta} outside [0, 1)")
        if self.key_len < 8:
            raise PreconditionViolated("key_len must be at least 8 bits")

    def _pad_bit(self, key: Bits, nonce: Bits) -> int:
        h = hashlib.blake2b(
            key.to_bytes() + nonce.to_bytes(),
            key=self.master_seed[:64],
            person=b"pke.pad",
            digest_size=1,
        )
        return h.digest()[0] & 1

    def keygen(self, tape: RandomTape) -> Bits:
        return tape.bits(self.key_len)

    def encrypt(self, key: Bits, bit: int, tape: RandomTape) -> tuple[Bits, int]:
        if key.length != self.key_len:
            raise InvalidLength(f"key is {key.length} bits, expected {self.key_len}")
        if bit not in (0, 1):
            raise PreconditionViolated("plaintext must be a single bit")
        nonce = tape.bits(self.key_len)
        return (nonce, bit ^ self._pad_bit(key, nonce))

    def decrypt(self, key: Bits, ct: tuple[Bits, int], tape: RandomTape):
        """Returns the bit, or BOT with probability delta."""
        if key.length != self.key_len:
            raise InvalidLength(f"key is {key.length} bits, expected {self.key_len}")
        nonce, masked = ct
        if self.delta > 0.0 and tape.coin(self.delta):
            return BOT
        return masked ^ self._pad_bit(key, nonce)


def rep_encrypt(base: MockBasePke, keys: list[Bits], bit: int, tape: RandomTape) -> list:
    """Encrypt one bit independently under each key."""
    if not keys:
        raise PreconditionViolated("need at least one key")
    return [base.encrypt(k, bit, tape) for k in keys]


def agree_first(results: list):
    """Minimum-index agreement rule over per-component decryptions.

    Let S be the indices with non-abort results.  Abort if S is empty or
    two members of S disagree; otherwise return the result at min(S).
    """
    survivors = [b for b in results if b is not BOT]
    if not survivors:
        return BOT
    first = survivors[0]
    if any(b != first for b in survivors[1:]):
        return BOT
    return first


def rep_decrypt(base: MockBasePke, keys: list[Bits], cts: list, tape: RandomTape):
    """Decrypt every component and decode by minimum-index agreement."""
    if len(cts) != len(keys):
        raise InvalidLength(f"{len(cts)} ciphertexts for {len(keys)} keys")
    return agree_first(
        [base.decrypt(key, ct, tape) for key, ct in zip(keys, cts)]
    )
