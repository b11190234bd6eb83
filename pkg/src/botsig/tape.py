"""Splittable deterministic randomness.

All probabilistic branches in the package draw from an explicit
``RandomTape`` so that any experiment is reproducible from its seed.  A
tape wraps a numpy PCG64 generator; ``split`` spawns statistically
independent child tapes.
"""

from __future__ import annotations

import numpy as np

from .bits import Bits


def _normalize_seed(seed):
    """Map strings and bytes (possibly nested in sequences) onto ints."""
    if seed is None or isinstance(seed, int):
        return seed
    if isinstance(seed, (bytes, bytearray)):
        return int.from_bytes(seed, "big")
    if isinstance(seed, str):
        return int.from_bytes(seed.encode(), "big")
    if isinstance(seed, (tuple, list)):
        return [_normalize_seed(s) for s in seed]
    return seed


class RandomTape:
    """Deterministic randomness stream with hierarchical splitting.

    Byte draws are served from an internal buffer refilled in bulk; the
    stream remains a pure function of the seed and the draw sequence.
    """

    __slots__ = ("_seq", "rng", "_buf", "_pos")

    _REFILL = 4096

    def __init__(self, seed=None):
        if isinstance(seed, RandomTape):
            raise TypeError("pass a seed, or use split() to derive a tape")
        if isinstance(seed, np.random.SeedSequence):
            self._seq = seed
        else:
            self._seq = np.random.SeedSequence(_normalize_seed(seed))
        self.rng = np.random.Generator(np.random.PCG64(self._seq))
        self._buf = b""
        self._pos = 0

    def _take(self, n: int) -> bytes:
        end = self._pos + n
        if end > len(self._buf):
            self._buf = self.rng.bytes(max(self._REFILL, n))
            self._pos, end = 0, n
        chunk = self._buf[self._pos:end]
        self._pos = end
        return chunk

    @staticmethod
    def from_bits(bits: Bits) -> "RandomTape":
        """Tape derived deterministically from a bitstring (e.g. a coin seed)."""
        return RandomTape(np.random.SeedSequence((bits.value, bits.length)))

    def split(self) -> "RandomTape":
        """Spawn an independent child tape; the parent remains usable."""
        return RandomTape(self._seq.spawn(1)[0])

    def split_many(self, n: int) -> list["RandomTape"]:
        return [RandomTape(s) for s in self._seq.spawn(n)]

    # -- draws ---------------------------------------------------------------

    def bits(self, length: int) -> Bits:
        if length == 0:
            return Bits(0, 0)
        nbytes = (length + 7) // 8
        data = self._take(nbytes)
        return Bits(length, int.from_bytes(data, "big") >> (8 * nbytes - length))

    def bits_batch(self, length: int, count: int) -> list[Bits]:
        """Draw ``count`` independent strings with one buffer slice."""
        if count == 0:
            return []
        nbytes = (length + 7) // 8
        blob = self._take(nbytes * count)
        return [
            Bits.from_bytes(blob[i * nbytes:(i + 1) * nbytes], length)
            for i in range(count)
        ]

    def coin(self, p: float) -> bool:
        """One Bernoulli(p) trial."""
        return bool(self.rng.random() < p)

    def count_below(self, p: float, n: int) -> int:
        """Number of successes among n independent Bernoulli(p) trials.

        Materializes the trials; see ``binomial`` for the aggregated draw.
        """
        return int((self.rng.random(n) < p).sum())

    def binomial(self, n: int, p: float) -> int:
        """Binomial(n, p) draw: the success count of n Bernoulli(p) trials."""
        return int(self.rng.binomial(n, p))

    def uniform(self) -> float:
        return float(self.rng.random())

    def integer(self, upper: int) -> int:
        """Uniform int in [0, upper)."""
        return int(self.rng.integers(upper))
