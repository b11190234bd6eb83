"""Many-message signatures over a binary authentication tree.

A node labeled by a path prefix holds a one-message key pair; each internal
node signs the pair of its children's verification keys, and the leaf at
the full message path signs the message itself.  The stateful signer
materializes nodes lazily and remembers them; the stateless signer derives
every node's key-generation coins from a tree PRF keyed per level, so
nothing needs to be remembered between calls.

Any abort during signing aborts the whole signature.  Abort placeholders
are never stored: a later call retries the node.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..bits import BOT, Bits, BotValue, concat_all
from ..botprf import TreePrfSpec, tree_prf_eval
from ..botprg import BotPrgSpec
from ..errors import InvalidLength, PreconditionViolated
from ..tape import RandomTape
from .oms import (
    HashedOmsParams,
    HashedOmsScheme,
    HashedOmsSecretKey,
    HashedOmsSignature,
    OmsVerifyKey,
)
from .verdict import Verdict

# -- fixed-width verification-key packing -----------------------------------
#
# Chain messages must have a constant bit length, so images are packed as a
# presence bit plus a zero-filled payload slot rather than the variable
# self-delimiting encoding used on the wire.


def vk_bit_len(params: HashedOmsParams) -> int:
    inner = params.inner
    slot = inner.uowhf.key_len + 1 + inner.uowhf.out_len
    return 2 * inner.q * slot


def vk_to_bits(params: HashedOmsParams, vk: OmsVerifyKey) -> Bits:
    out_len = params.inner.uowhf.out_len
    parts: list[Bits] = []
    for row in vk.slots:
        for k, y in row:
            parts.append(k)
            if y is BOT:
                parts.append(Bits(1 + out_len, 0))
            else:
                parts.append(Bits(1, 1).concat(y))
    return concat_all(parts)


def vk_from_bits(params: HashedOmsParams, data: Bits) -> OmsVerifyKey:
    if data.length != vk_bit_len(params):
        raise InvalidLength(
            f"packed key is {data.length} bits, expected {vk_bit_len(params)}"
        )
    key_len = params.inner.uowhf.key_len
    out_len = params.inner.uowhf.out_len
    rows = []
    pos = 0
    for _ in range(params.inner.q):
        row = []
        for _b in (0, 1):
            k = data.suffix(data.length - pos).prefix(key_len)
            pos += key_len
            tag = data.bit(pos)
            pos += 1
            payload = data.suffix(data.length - pos).prefix(out_len)
            pos += out_len
            row.append((k, payload if tag else BOT))
        rows.append(tuple(row))
    return OmsVerifyKey(tuple(rows))


@dataclass(frozen=True)
class ChainLink:
    sig: HashedOmsSignature
    vk0: OmsVerifyKey
    vk1: OmsVerifyKey


@dataclass(frozen=True)
class ChainSignature:
    links: tuple[ChainLink, ...]
    leaf_sig: HashedOmsSignature


class TreeMemory:
    """The stateful signer's memory: node key pairs and child signatures.

    A node's child signature is only ever stored after both children's key
    pairs exist.
    """

    def __init__(self):
        self.keypairs: dict[str, tuple[HashedOmsSecretKey, OmsVerifyKey]] = {}
        self.signatures: dict[str, HashedOmsSignature] = {}

    def snapshot(self) -> tuple:
        return (
            tuple(sorted(self.keypairs.items())),
            tuple(sorted(self.signatures.items())),
        )

    def check_invariant(self) -> bool:
        return all(
            node + "0" in self.keypairs and node + "1" in self.keypairs
            for node in self.signatures
        )


def _pad_message(m: Bits, width: int) -> Bits:
    if m.length > width:
        raise InvalidLength(f"{m.length}-bit message exceeds capacity {width}")
    return m.concat(Bits.zeros(width - m.length))


def _child_pair_message(params: HashedOmsParams, vk0: OmsVerifyKey, vk1: OmsVerifyKey) -> Bits:
    return _pad_message(
        vk_to_bits(params, vk0).concat(vk_to_bits(params, vk1)),
        params.message_len,
    )


def _verify_chain(
    ots: HashedOmsScheme,
    root_vk: OmsVerifyKey,
    m: Bits,
    sig,
    tape: RandomTape,
    n: int,
) -> Verdict:
    if sig is BOT:
        return Verdict.BOT
    try:
        if m.length != n or len(sig.links) != n:
            return Verdict.REJECT
        current = root_vk
        for i, link in enumerate(sig.links):
            message = _child_pair_message(ots.params, link.vk0, link.vk1)
            if ots.verify(current, message, link.sig, tape) is not Verdict.ACCEPT:
                return Verdict.REJECT
            current = link.vk1 if m.bit(i) else link.vk0
        padded = _pad_message(m, ots.params.message_len)
        if ots.verify(current, padded, sig.leaf_sig, tape) is not Verdict.ACCEPT:
            return Verdict.REJECT
    except (AttributeError, IndexError, TypeError, InvalidLength):
        return Verdict.REJECT
    return Verdict.ACCEPT


# -- stateful ----------------------------------------------------------------


@dataclass(frozen=True)
class StatefulParams:
    n: int
    ots: HashedOmsParams

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise PreconditionViolated("message length n must be even and >= 2")
        if self.ots.message_len < 2 * vk_bit_len(self.ots):
            raise PreconditionViolated(
                "chain scheme must sign at least twice the packed key length "
                f"({self.ots.message_len} < {2 * vk_bit_len(self.ots)})"
            )
        if self.ots.message_len < self.n:
            raise PreconditionViolated("chain scheme cannot hold the message")

    def to_json(self) -> dict:
        return {"n": self.n, "ots": self.ots.to_json()}

    @staticmethod
    def from_json(doc: dict) -> "StatefulParams":
        return StatefulParams(n=int(doc["n"]), ots=HashedOmsParams.from_json(doc["ots"]))


class StatefulTreeScheme:
    """Authentication-tree signatures with persisted signer memory.

    ``sign`` needs exclusive access to the TreeMemory for the duration of
    the call.  ``coin_source``, when supplied, maps a node label to the
    key-generation coins used for that node; this is how tests wire the
    stateful and stateless signers to identical per-node randomness.
    """

    def __init__(self, params: StatefulParams):
        self.params = params
        self.ots = HashedOmsScheme(params.ots)

    @property
    def message_len(self) -> int:
        return self.params.n

    def keygen(self, tape: RandomTape):
        root_sk, root_vk = self.ots.keygen(tape)
        return (root_sk, TreeMemory()), root_vk

    def sign(self, sk_state, m: Bits, tape: RandomTape, coin_source=None):
        root_sk, memory = sk_state
        if m.length != self.params.n:
            raise InvalidLength(
                f"message is {m.length} bits, expected {self.params.n}"
            )
        path = m.to01()
        links: list[ChainLink] = []
        for i in range(self.params.n):
            prefix = path[:i]
            pairs = []
            for tau in "01":
                node = prefix + tau
                if node not in memory.keypairs:
                    if coin_source is not None:
                        coins = coin_source(node)
                        if coins is BOT:
                            return BOT
                        kp = self.ots.keygen_from_coins(coins)
                    else:
                        kp = self.ots.keygen(tape)
                    memory.keypairs[node] = kp
                pairs.append(memory.keypairs[node])
            (_, vk0), (_, vk1) = pairs
            if prefix not in memory.signatures:
                signer_sk = root_sk if i == 0 else memory.keypairs[prefix][0]
                sig = self.ots.sign(
                    signer_sk, _child_pair_message(self.params.ots, vk0, vk1), tape
                )
                if sig is BOT:
                    return BOT
                memory.signatures[prefix] = sig
            links.append(ChainLink(memory.signatures[prefix], vk0, vk1))
        leaf_sk = memory.keypairs[path][0]
        leaf_sig = self.ots.sign(
            leaf_sk, _pad_message(m, self.params.ots.message_len), tape
        )
        if leaf_sig is BOT:
            return BOT
        return ChainSignature(tuple(links), leaf_sig)

    def verify(self, vk: OmsVerifyKey, m: Bits, sig, tape: RandomTape) -> Verdict:
        return _verify_chain(self.ots, vk, m, sig, tape, self.params.n)


# -- stateless ----------------------------------------------------------------


@dataclass(frozen=True)
class StatelessParams:
    n: int
    ots: HashedOmsParams
    prf_prg: BotPrgSpec

    def __post_init__(self):
        StatefulParams(n=self.n, ots=self.ots)  # same structural constraints
        if self.prf_prg.out_len != 2 * self.prf_prg.composite_key_len:
            raise PreconditionViolated("PRF generator must double its key length")
        if self.prf_prg.composite_key_len != self.ots.coin_len:
            raise PreconditionViolated(
                f"PRF output ({self.prf_prg.composite_key_len} bits) must equal "
                f"the key-generation coin count ({self.ots.coin_len})"
            )

    @property
    def prf_key_len(self) -> int:
        return self.prf_prg.composite_key_len

    def prf_spec(self, level: int) -> TreePrfSpec:
        """The level's PRF: inputs are prefix||direction||padding masked to
        ``level + coin_len`` bits."""
        return TreePrfSpec(prg=self.prf_prg, input_len=level + self.ots.coin_len)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "ots": self.ots.to_json(),
            "prf_prg": self.prf_prg.to_json(),
        }

    @staticmethod
    def from_json(doc: dict) -> "StatelessParams":
        return StatelessParams(
            n=int(doc["n"]),
            ots=HashedOmsParams.from_json(doc["ots"]),
            prf_prg=BotPrgSpec.from_json(doc["prf_prg"]),
        )


@dataclass(frozen=True)
class StatelessSecretKey:
    root_sk: HashedOmsSecretKey
    prf_keys: tuple[Bits, ...]            # one per level, shared by both children
    masks: tuple[tuple[Bits, Bits], ...]  # (r_{i,0}, r_{i,1}), level i mask is i+coins bits


class StatelessScheme:
    """Tree signatures with PRF-derived node coins and no signer memory."""

    def __init__(self, params: StatelessParams):
        self.params = params
        self.ots = HashedOmsScheme(params.ots)

    @property
    def message_len(self) -> int:
        return self.params.n

    def keygen(self, tape: RandomTape):
        root_sk, root_vk = self.ots.keygen(tape)
        prf_keys = tuple(
            tape.bits(self.params.prf_key_len) for _ in range(self.params.n)
        )
        masks = tuple(
            (tape.bits(i + self.ots.coin_len), tape.bits(i + self.ots.coin_len))
            for i in range(1, self.params.n + 1)
        )
        return StatelessSecretKey(root_sk, prf_keys, masks), root_vk

    def node_coins(self, sk: StatelessSecretKey, node: str, tape: RandomTape) -> BotValue:
        """Derive the key-generation coins for a node label via the PRF.

        The PRF input at level i is prefix || direction || zero padding,
        masked by the level/direction offset; an abort here aborts signing.
        """
        level = len(node)
        prefix, tau = node[:-1], int(node[-1])
        coin_len = self.ots.coin_len
        raw = Bits.from01(prefix).concat(Bits(1, tau)).concat(Bits.zeros(coin_len))
        masked = raw.xor(sk.masks[level - 1][tau])
        return tree_prf_eval(
            self.params.prf_spec(level), sk.prf_keys[level - 1], masked, tape
        )

    def node_keypair(self, sk: StatelessSecretKey, node: str, tape: RandomTape):
        coins = self.node_coins(sk, node, tape)
        if coins is BOT:
            return BOT
        return self.ots.keygen_from_coins(coins)

    def sign(self, sk: StatelessSecretKey, m: Bits, tape: RandomTape):
        if m.length != self.params.n:
            raise InvalidLength(
                f"message is {m.length} bits, expected {self.params.n}"
            )
        path = m.to01()
        links: list[ChainLink] = []
        current_sk = sk.root_sk
        for i in range(self.params.n):
            prefix = path[:i]
            kp0 = self.node_keypair(sk, prefix + "0", tape)
            if kp0 is BOT:
                return BOT
            kp1 = self.node_keypair(sk, prefix + "1", tape)
            if kp1 is BOT:
                return BOT
            (sk0, vk0), (sk1, vk1) = kp0, kp1
            sig = self.ots.sign(
                current_sk, _child_pair_message(self.params.ots, vk0, vk1), tape
            )
            if sig is BOT:
                return BOT
            links.append(ChainLink(sig, vk0, vk1))
            current_sk = sk1 if m.bit(i) else sk0
        leaf_sig = self.ots.sign(
            current_sk, _pad_message(m, self.params.ots.message_len), tape
        )
        if leaf_sig is BOT:
            return BOT
        return ChainSignature(tuple(links), leaf_sig)

    def verify(self, vk: OmsVerifyKey, m: Bits, sig, tape: RandomTape) -> Verdict:
        return _verify_chain(self.ots, vk, m, sig, tape, self.params.n)
