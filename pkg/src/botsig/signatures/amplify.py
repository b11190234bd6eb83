"""Correctness amplifiers wrapping any base signature scheme.

``FirstValidAmplifier`` runs 3p independent key pairs, signs under all of
them, and emits the first non-abort signature together with its index; it
preserves strong unforgeability.  ``AnyValidAmplifier`` signs under every
key and accepts if any component verifies; it trades strong unforgeability
for statistical correctness.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..bits import BOT, Bits
from ..errors import PreconditionViolated
from ..tape import RandomTape
from .verdict import Verdict


@dataclass(frozen=True)
class IndexedSignature:
    index: int  # 1-based position of the first non-abort component
    inner: object


@dataclass(frozen=True)
class SignatureVector:
    components: tuple  # one entry per key; entries may be BOT


class FirstValidAmplifier:
    """3p key pairs; the signature is (j, sigma_j) for the first non-abort j."""

    def __init__(self, base, p: int):
        if p < 1:
            raise PreconditionViolated("p must be at least 1")
        self.base = base
        self.copies = 3 * p

    @property
    def message_len(self) -> int:
        return self.base.message_len

    def keygen(self, tape: RandomTape):
        pairs = [self.base.keygen(tape) for _ in range(self.copies)]
        return tuple(sk for sk, _ in pairs), tuple(vk for _, vk in pairs)

    def sign(self, sks, m: Bits, tape: RandomTape):
        for j, sk in enumerate(sks, start=1):
            sig = self.base.sign(sk, m, tape)
            if sig is not BOT:
                return IndexedSignature(j, sig)
        return BOT

    def sign_all(self, sks, m: Bits, tape: RandomTape):
        """All component signatures, for structural tests; ``sign`` equals
        picking the first non-abort entry."""
        return [self.base.sign(sk, m, tape) for sk in sks]

    def verify(self, vks, m: Bits, sig, tape: RandomTape) -> Verdict:
        if sig is BOT:
            return Verdict.BOT
        try:
            j = sig.index
            if not 1 <= j <= self.copies:
                return Verdict.REJECT
            return self.base.verify(vks[j - 1], m, sig.inner, tape)
        except (AttributeError, IndexError, TypeError):
            return Verdict.REJECT


class AnyValidAmplifier:
    """Independent keys; verification accepts if any component verifies."""

    def __init__(self, base, reps: int):
        if reps < 1:
            raise PreconditionViolated("reps must be at least 1")
        self.base = base
        self.reps = reps

    @property
    def message_len(self) -> int:
        return self.base.message_len

    def keygen(self, tape: RandomTape):
        pairs = [self.base.keygen(tape) for _ in range(self.reps)]
        return tuple(sk for sk, _ in pairs), tuple(vk for _, vk in pairs)

    def sign(self, sks, m: Bits, tape: RandomTape):
        return SignatureVector(
            tuple(self.base.sign(sk, m, tape) for sk in sks)
        )

    def verify(self, vks, m: Bits, sig, tape: RandomTape) -> Verdict:
        if sig is BOT:
            return Verdict.BOT
        try:
            if len(sig.components) != self.reps:
                return Verdict.REJECT
            for vk, component in zip(vks, sig.components):
                if component is BOT:
                    continue
                if self.base.verify(vk, m, component, tape) is Verdict.ACCEPT:
                    return Verdict.ACCEPT
        except (AttributeError, TypeError):
            return Verdict.REJECT
        return Verdict.REJECT
