"""Built-in adversaries, distinguishers, and planted broken primitives.

Everything here is a statistical sanity probe or a control, not
cryptanalysis: negative controls must not win, planted positives must.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..bits import BOT, Bits
from ..tape import RandomTape


# -- distinguishers for the multi-evaluation game --------------------------------


class ConstantGuess:
    """Always answers the same world; the null baseline."""

    def __init__(self, answer: int = 0):
        self.answer = answer

    def guess(self, transcript) -> int:
        return self.answer


class FrequencyDistinguisher:
    """Cross-trial value-frequency analysis.

    A generator whose output does not depend on its key shows the same
    value in every real-world trial; a masked-uniform world shows a fresh
    value per trial.  Answers "real" exactly when the transcript's non-abort
    value has been seen in an earlier trial.
    """

    def __init__(self):
        self.seen: set[Bits] = set()

    def guess(self, transcript) -> int:
        value = next((v for v in transcript if v is not BOT), None)
        if value is None:
            return 1
        if value in self.seen:
            return 0
        self.seen.add(value)
        return 1


class BotPatternParity:
    """Guesses from the abort pattern only; calibrates to zero advantage
    because both worlds share the same abort distribution."""

    def guess(self, transcript) -> int:
        return sum(1 for v in transcript if v is BOT) & 1


# -- distinguishers for the adaptive function game --------------------------------


class PrfConstantGuess:
    def __init__(self, answer: int = 0):
        self.answer = answer

    def run(self, oracle, prf, tape: RandomTape) -> int:
        oracle(Bits.zeros(prf.input_len))
        return self.answer


class RepeatQueryProbe:
    """Queries one input twice; inconsistent non-abort answers expose a
    world-1 oracle that fails to cache its random function."""

    def run(self, oracle, prf, tape: RandomTape) -> int:
        x = tape.bits(prf.input_len)
        first = oracle(x)
        second = oracle(x)
        if first is not BOT and second is not BOT and first != second:
            return 1
        return 0


# -- planted broken generator ------------------------------------------------------


@dataclass(frozen=True)
class PlantedConstantPrg:
    """Generator whose output ignores the key entirely (and never aborts)."""

    out_len: int
    key_len: int = 16
    constant_value: int = 0xB0

    @property
    def constant(self) -> Bits:
        return Bits(self.out_len, self.constant_value % (1 << self.out_len))

    def sample_key(self, tape: RandomTape) -> Bits:
        return tape.bits(self.key_len)

    def evaluate(self, key: Bits, tape: RandomTape) -> Bits:
        return self.constant


# -- forgery adversaries -----------------------------------------------------------


class ReplayForger:
    """Queries one message and returns the logged pair; must lose."""

    def run(self, vk, oracle, scheme, tape: RandomTape, sk=None):
        m = tape.bits(scheme.message_len)
        sig = oracle(m)
        return (m, sig)


class TwoMessageForger:
    """Queries two distinct messages; disqualified in the one-message game."""

    def run(self, vk, oracle, scheme, tape: RandomTape, sk=None):
        m1 = tape.bits(scheme.message_len)
        m2 = m1.flip(0)
        oracle(m1)
        sig2 = oracle(m2)
        # a fresh-looking pair that was nevertheless oracle-produced
        return (m2, sig2)


class RandomForger:
    """Oracle-free baseline: signs a fresh message under its own unrelated
    key pair; wins only by hash collision."""

    def run(self, vk, oracle, scheme, tape: RandomTape, sk=None):
        own_sk, _ = scheme.keygen(tape)
        m = tape.bits(scheme.message_len)
        return (m, scheme.sign(own_sk, m, tape))


class KeyLeakForger:
    """Positive control: given the secret key out of band, signs a message
    that was never queried."""

    def run(self, vk, oracle, scheme, tape: RandomTape, sk=None):
        if sk is None:
            return None
        m = tape.bits(scheme.message_len)
        return (m, scheme.sign(sk, m, tape))
