"""Fixed-length bitstrings and the recognizable-abort value algebra.

Every primitive in this package outputs either a bitstring of a declared
length or the distinguished abort marker ``BOT``.  ``Bits`` is an immutable
value type backed by a Python int (bit 0 of the int is the *last* bit of the
string, so ``Bits.from01("10")`` has its leading '1' as the most significant
bit).  ``BOT`` carries no payload; ``TOP`` is a second marker used only on
the verification side so an abort can never compare equal to a genuine
image.
"""

from __future__ import annotations

from .errors import InvalidLength


class _Bot:
    """Singleton abort marker."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BOT"

    def __reduce__(self):
        return (_Bot, ())


class _Top:
    """Singleton non-abort marker produced by flipping BOT on the verifier side."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "TOP"

    def __reduce__(self):
        return (_Top, ())


BOT = _Bot()
TOP = _Top()


class Bits:
    """An immutable bitstring of explicit length.

    Attributes
    ----------
    length : int
        Number of bits (may be zero).
    value : int
        The bits packed into a non-negative int, most significant bit first.
    """

    __slots__ = ("length", "value")

    def __init__(self, length: int, value: int):
        if length < 0:
            raise InvalidLength(f"negative bit length {length}")
        if value < 0 or value >> length:
            raise InvalidLength(f"value {value:#x} does not fit in {length} bits")
        object.__setattr__(self, "length", length)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, val):
        raise AttributeError("Bits is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Bits)
            and self.length == other.length
            and self.value == other.value
        )

    def __hash__(self):
        return hash((self.length, self.value))

    def __getstate__(self):
        return (self.length, self.value)

    def __setstate__(self, state):
        object.__setattr__(self, "length", state[0])
        object.__setattr__(self, "value", state[1])

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from01(s: str) -> "Bits":
        s = s.strip()
        if s and set(s) - {"0", "1"}:
            raise InvalidLength(f"not a 01-string: {s!r}")
        return Bits(len(s), int(s, 2) if s else 0)

    @staticmethod
    def from_bytes(data: bytes, length: int | None = None) -> "Bits":
        if length is None:
            length = 8 * len(data)
        value = int.from_bytes(data, "big")
        excess = 8 * len(data) - length
        if excess < 0:
            raise InvalidLength(f"{len(data)} bytes cannot hold {length} bits")
        return Bits(length, value >> excess)

    @staticmethod
    def zeros(length: int) -> "Bits":
        return Bits(length, 0)

    @staticmethod
    def from_int(value: int, length: int) -> "Bits":
        return Bits(length, value)

    # -- views -------------------------------------------------------------

    def to01(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""

    def to_bytes(self) -> bytes:
        """Big-endian packing; a trailing partial byte is zero-padded on the right."""
        nbytes = (self.length + 7) // 8
        pad = 8 * nbytes - self.length
        return (self.value << pad).to_bytes(nbytes, "big")

    def hex(self) -> str:
        return self.to_bytes().hex()

    def bit(self, i: int) -> int:
        """The i-th bit counted from the left, 0-based."""
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.value >> (self.length - 1 - i)) & 1

    def prefix(self, n: int) -> "Bits":
        if not 0 <= n <= self.length:
            raise InvalidLength(f"prefix of {n} from {self.length} bits")
        return Bits(n, self.value >> (self.length - n))

    def suffix(self, n: int) -> "Bits":
        if not 0 <= n <= self.length:
            raise InvalidLength(f"suffix of {n} from {self.length} bits")
        return Bits(n, self.value & ((1 << n) - 1))

    def concat(self, other: "Bits") -> "Bits":
        return Bits(self.length + other.length,
                    (self.value << other.length) | other.value)

    def xor(self, other: "Bits") -> "Bits":
        if self.length != other.length:
            raise InvalidLength(
                f"xor of {self.length}-bit and {other.length}-bit strings"
            )
        return Bits(self.length, self.value ^ other.value)

    def flip(self, i: int) -> "Bits":
        """Copy with the i-th bit (from the left) inverted."""
        if not 0 <= i < self.length:
            raise IndexError(i)
        return Bits(self.length, self.value ^ (1 << (self.length - 1 - i)))

    def __iter__(self):
        for i in range(self.length):
            yield self.bit(i)

    def __len__(self) -> int:
        return self.length

    def __repr__(self) -> str:
        if self.length <= 64:
            return f"Bits({self.to01()!r})"
        return f"Bits(len={self.length}, hex={self.hex()})"


def concat_all(parts: list[Bits]) -> Bits:
    total = 0
    value = 0
    for p in parts:
        value = (value << p.length) | p.value
        total += p.length
    return Bits(total, value)


# A value produced by an abort-aware primitive: payload bits or the abort marker.
BotValue = Bits | _Bot
# What a verifier-side flip produces: abort becomes TOP, payloads pass through.
BotValueOrTop = Bits | _Bot | _Top


def is_abort(v) -> bool:
    return v is BOT


# -- canonical encodings ---------------------------------------------------
#
# Wire form: tag byte 0x00 for BOT (no payload), 0x01 for Bits followed by a
# 4-byte big-endian bit count and the packed payload.  Text form: "BOT" or
# lowercase hex of the packed payload.

_TAG_BOT = b"\x00"
_TAG_BITS = b"\x01"


def encode_bot_value(v: BotValue) -> bytes:
    if v is BOT:
        return _TAG_BOT
    return _TAG_BITS + v.length.to_bytes(4, "big") + v.to_bytes()


def decode_bot_value(data: bytes, offset: int = 0) -> tuple[BotValue, int]:
    """Decode one value, returning it and the offset just past it."""
    tag = data[offset:offset + 1]
    if tag == _TAG_BOT:
        return BOT, offset + 1
    if tag != _TAG_BITS:
        raise InvalidLength(f"unknown value tag {tag!r}")
    length = int.from_bytes(data[offset + 1:offset + 5], "big")
    nbytes = (length + 7) // 8
    payload = data[offset + 5:offset + 5 + nbytes]
    if len(payload) != nbytes:
        raise InvalidLength("truncated value payload")
    return Bits.from_bytes(payload, length), offset + 5 + nbytes


def render_bot_value(v: BotValue) -> str:
    return "BOT" if v is BOT else v.hex()
