"""One-message signatures.

Two layers.  The length-restricted scheme commits to two hash preimages
per message bit and reveals the selected column; signing is deterministic,
which is what makes many signatures of one message safe to hand out.  The
hash-then-sign layer compresses a long message with a keyed abort-aware
hash and signs (hash key, digest) with the inner scheme; any abort on the
hash path propagates to the whole signature.

Images that come out as aborts at key generation are kept verbatim: the
verifier treats a stored abort as an automatic rejection slot, and the
correctness bounds already absorb this.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..bits import BOT, Bits, BotValue
from ..bothash import BotUowhfSpec, uowhf_eval
from ..errors import InvalidLength, PreconditionViolated
from ..tape import RandomTape
from .verdict import Verdict


@dataclass(frozen=True)
class OmsParams:
    """Length-restricted scheme: q message bits over a 2-to-1 hash."""

    uowhf: BotUowhfSpec
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise PreconditionViolated("q must be at least 1")
        if self.uowhf.in_len != 2 * self.uowhf.out_len:
            raise PreconditionViolated(
                "the preimage hash must compress 2:1 "
                f"(got {self.uowhf.in_len} -> {self.uowhf.out_len})"
            )

    @property
    def message_len(self) -> int:
        return self.q

    @property
    def preimage_len(self) -> int:
        return self.uowhf.in_len

    def to_json(self) -> dict:
        return {"uowhf": self.uowhf.to_json(), "q": self.q}

    @staticmethod
    def from_json(doc: dict) -> "OmsParams":
        return OmsParams(uowhf=BotUowhfSpec.from_json(doc["uowhf"]), q=int(doc["q"]))


@dataclass(frozen=True)
class OmsSecretKey:
    # preimages[j] = (x_{j,0}, x_{j,1})
    preimages: tuple[tuple[Bits, Bits], ...]


@dataclass(frozen=True)
class OmsVerifyKey:
    # slots[j] = ((k_{j,0}, y_{j,0}), (k_{j,1}, y_{j,1})); images may be BOT
    slots: tuple[tuple[tuple[Bits, BotValue], tuple[Bits, BotValue]], ...]


@dataclass(frozen=True)
class OmsSignature:
    preimages: tuple[Bits, ...]


class OneMessageSigScheme:
    """Per-bit preimage-reveal scheme with abort-aware images."""

    def __init__(self, params: OmsParams):
        self.params = params

    @property
    def message_len(self) -> int:
        return self.params.q

    def keygen(self, tape: RandomTape) -> tuple[OmsSecretKey, OmsVerifyKey]:
        spec = self.params.uowhf
        sk_rows = []
        vk_rows = []
        for _ in range(self.params.q):
            row_sk = []
            row_vk = []
            for _b in (0, 1):
                k = tape.bits(spec.key_len)
                x = tape.bits(spec.in_len)
                y = uowhf_eval(spec, k, x, tape)
                row_sk.append(x)
                row_vk.append((k, y))
            sk_rows.append(tuple(row_sk))
            vk_rows.append(tuple(row_vk))
        return OmsSecretKey(tuple(sk_rows)), OmsVerifyKey(tuple(vk_rows))

    def sign(self, sk: OmsSecretKey, m: Bits, tape: RandomTape) -> OmsSignature:
        if m.length != self.params.q:
            raise InvalidLength(
                f"message is {m.length} bits, expected {self.params.q}"
            )
        return OmsSignature(
            tuple(sk.preimages[j][m.bit(j)] for j in range(self.params.q))
        )

    def verify(self, vk: OmsVerifyKey, m: Bits, sig, tape: RandomTape) -> Verdict:
        if sig is BOT:
            return Verdict.BOT
        spec = self.params.uowhf
        try:
            if m.length != self.params.q:
                return Verdict.REJECT
            if len(sig.preimages) != self.params.q:
                return Verdict.REJECT
            for j in range(self.params.q):
                k, y = vk.slots[j][m.bit(j)]
                if y is BOT:
                    return Verdict.REJECT
                recomputed = uowhf_eval(spec, k, sig.preimages[j], tape)
                if recomputed != y:
                    return Verdict.REJECT
        except (AttributeError, IndexError, TypeError, InvalidLength):
            return Verdict.REJECT
        return Verdict.ACCEPT


@dataclass(frozen=True)
class HashedOmsParams:
    """Hash-then-sign layer: ``outer`` compresses the message, ``inner``
    signs (hash key || digest).

    The hash key plus digest must fit well inside the message space
    (key + digest < message_len / 2), so the scheme genuinely extends the
    signable length.
    """

    outer: BotUowhfSpec
    inner: OmsParams
    coin_len: int = 64

    def __post_init__(self):
        wrapped = self.outer.key_len + self.outer.out_len
        if self.inner.q != wrapped:
            raise PreconditionViolated(
                f"inner scheme signs {self.inner.q} bits, "
                f"key||digest needs {wrapped}"
            )
        if not (wrapped < self.outer.in_len / 2):
            raise PreconditionViolated(
                f"need key + digest ({wrapped}) < half the message "
                f"length ({self.outer.in_len})"
            )
        if self.coin_len < 16:
            raise PreconditionViolated("coin_len must be at least 16 bits")

    @property
    def message_len(self) -> int:
        return self.outer.in_len

    def to_json(self) -> dict:
        return {
            "outer": self.outer.to_json(),
            "inner": self.inner.to_json(),
            "coin_len": self.coin_len,
        }

    @staticmethod
    def from_json(doc: dict) -> "HashedOmsParams":
        return HashedOmsParams(
            outer=BotUowhfSpec.from_json(doc["outer"]),
            inner=OmsParams.from_json(doc["inner"]),
            coin_len=int(doc.get("coin_len", 64)),
        )


@dataclass(frozen=True)
class HashedOmsSecretKey:
    inner: OmsSecretKey
    outer_key: Bits


@dataclass(frozen=True)
class HashedOmsSignature:
    outer_key: Bits
    inner: OmsSignature


class HashedOmsScheme:
    """One-message signatures on long messages via hash-then-sign."""

    def __init__(self, params: HashedOmsParams):
        self.params = params
        self._inner = OneMessageSigScheme(params.inner)

    @property
    def message_len(self) -> int:
        return self.params.message_len

    @property
    def coin_len(self) -> int:
        """Published number of coin tosses key generation makes."""
        return self.params.coin_len

    def keygen(self, tape: RandomTape) -> tuple[HashedOmsSecretKey, OmsVerifyKey]:
        """Sample a key pair; consumes exactly ``coin_len`` tape bits.

        Key generation reads a fixed-size coin string and expands it
        internally, so derandomizing it means supplying those coins.
        """
        return self.keygen_from_coins(tape.bits(self.coin_len))

    def keygen_from_coins(self, coins: Bits) -> tuple[HashedOmsSecretKey, OmsVerifyKey]:
        if coins.length != self.coin_len:
            raise InvalidLength(
                f"coin string is {coins.length} bits, expected {self.coin_len}"
            )
        tape = RandomTape.from_bits(coins)
        inner_sk, vk = self._inner.keygen(tape)
        outer_key = tape.bits(self.params.outer.key_len)
        return HashedOmsSecretKey(inner_sk, outer_key), vk

    def sign(self, sk: HashedOmsSecretKey, m: Bits, tape: RandomTape):
        digest = uowhf_eval(self.params.outer, sk.outer_key, m, tape)
        if digest is BOT:
            return BOT
        wrapped = sk.outer_key.concat(digest)
        return HashedOmsSignature(sk.outer_key, self._inner.sign(sk.inner, wrapped, tape))

    def verify(self, vk: OmsVerifyKey, m: Bits, sig, tape: RandomTape) -> Verdict:
        if sig is BOT:
            return Verdict.BOT
        try:
            digest = uowhf_eval(self.params.outer, sig.outer_key, m, tape)
        except (AttributeError, TypeError, InvalidLength):
            return Verdict.REJECT
        if digest is BOT:
            return Verdict.BOT
        wrapped = sig.outer_key.concat(digest)
        return self._inner.verify(vk, wrapped, sig.inner, tape)
