"""Serialization: a versioned binary envelope plus JSON debug mirrors.

Envelope layout: the magic ``BSIG1``, one kind byte (secret key, verify
key, or signature), a JSON header frame naming the scheme and its
parameters, and the binary payload.  All frames are length-prefixed and
self-delimiting, so signatures parse without knowing the parameters;
validation happens at verification time.
"""

from __future__ import annotations

import json

from ..bits import BOT, Bits
from ..errors import InvalidLength
from .amplify import AnyValidAmplifier, FirstValidAmplifier, IndexedSignature, SignatureVector
from .chain import (
    ChainLink,
    ChainSignature,
    StatefulParams,
    StatefulTreeScheme,
    StatelessParams,
    StatelessScheme,
    StatelessSecretKey,
    TreeMemory,
)
from .oms import (
    HashedOmsParams,
    HashedOmsScheme,
    HashedOmsSecretKey,
    HashedOmsSignature,
    OmsParams,
    OmsSecretKey,
    OmsSignature,
    OmsVerifyKey,
    OneMessageSigScheme,
)

MAGIC = b"BSIG1"

KIND_SECRET = 0x01
KIND_VERIFY = 0x02
KIND_SIGNATURE = 0x03

SIG_BOT = 0x00
SIG_OMS = 0x01
SIG_HASHED_OMS = 0x02
SIG_STATEFUL = 0x03
SIG_STATELESS = 0x04
SIG_AMP_FIRST = 0x05
SIG_AMP_ANY = 0x06


class _Writer:
    def __init__(self):
        self.buf = bytearray()

    def u8(self, v: int):
        self.buf.append(v)

    def u32(self, v: int):
        self.buf += v.to_bytes(4, "big")

    def raw(self, data: bytes):
        self.buf += data

    def frame(self, data: bytes):
        self.u32(len(data))
        self.raw(data)

    def bits(self, b: Bits):
        self.u32(b.length)
        self.raw(b.to_bytes())

    def botvalue(self, v):
        if v is BOT:
            self.u8(0)
        else:
            self.u8(1)
            self.bits(v)

    def json(self, doc: dict):
        self.frame(json.dumps(doc, sort_keys=True).encode())


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise InvalidLength("truncated envelope")
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk

    def u8(self) -> int:
        return self.take(1)[0]

    def u32(self) -> int:
        return int.from_bytes(self.take(4), "big")

    def frame(self) -> bytes:
        return self.take(self.u32())

    def bits(self) -> Bits:
        length = self.u32()
        return Bits.from_bytes(self.take((length + 7) // 8), length)

    def botvalue(self):
        return self.bits() if self.u8() else BOT

    def json(self) -> dict:
        return json.loads(self.frame().decode())


# -- structural payloads -----------------------------------------------------


def _w_oms_signature(w: _Writer, sig: OmsSignature):
    w.u32(len(sig.preimages))
    for x in sig.preimages:
        w.bits(x)


def _r_oms_signature(r: _Reader) -> OmsSignature:
    return OmsSignature(tuple(r.bits() for _ in range(r.u32())))


def _w_hashed_sig(w: _Writer, sig: HashedOmsSignature):
    w.bits(sig.outer_key)
    _w_oms_signature(w, sig.inner)


def _r_hashed_sig(r: _Reader) -> HashedOmsSignature:
    return HashedOmsSignature(r.bits(), _r_oms_signature(r))


def _w_oms_vk(w: _Writer, vk: OmsVerifyKey):
    w.u32(len(vk.slots))
    for row in vk.slots:
        for k, y in row:
            w.bits(k)
            w.botvalue(y)


def _r_oms_vk(r: _Reader) -> OmsVerifyKey:
    q = r.u32()
    return OmsVerifyKey(tuple(
        ((r.bits(), r.botvalue()), (r.bits(), r.botvalue()))
        for _ in range(q)
    ))


def _w_oms_sk(w: _Writer, sk: OmsSecretKey):
    w.u32(len(sk.preimages))
    for x0, x1 in sk.preimages:
        w.bits(x0)
        w.bits(x1)


def _r_oms_sk(r: _Reader) -> OmsSecretKey:
    return OmsSecretKey(tuple((r.bits(), r.bits()) for _ in range(r.u32())))


def _w_hashed_sk(w: _Writer, sk: HashedOmsSecretKey):
    _w_oms_sk(w, sk.inner)
    w.bits(sk.outer_key)


def _r_hashed_sk(r: _Reader) -> HashedOmsSecretKey:
    return HashedOmsSecretKey(_r_oms_sk(r), r.bits())


def _w_chain_sig(w: _Writer, sig: ChainSignature):
    w.u32(len(sig.links))
    for link in sig.links:
        _w_hashed_sig(w, link.sig)
        _w_oms_vk(w, link.vk0)
        _w_oms_vk(w, link.vk1)
    _w_hashed_sig(w, sig.leaf_sig)


def _r_chain_sig(r: _Reader) -> ChainSignature:
    n = r.u32()
    links = tuple(
        ChainLink(_r_hashed_sig(r), _r_oms_vk(r), _r_oms_vk(r)) for _ in range(n)
    )
    return ChainSignature(links, _r_hashed_sig(r))


def write_signature(w: _Writer, sig, variant_hint: int | None = None):
    """Write one signature with its variant tag, recursing into wrappers."""
    if sig is BOT:
        w.u8(SIG_BOT)
    elif isinstance(sig, OmsSignature):
        w.u8(SIG_OMS)
        _w_oms_signature(w, sig)
    elif isinstance(sig, HashedOmsSignature):
        w.u8(SIG_HASHED_OMS)
        _w_hashed_sig(w, sig)
    elif isinstance(sig, ChainSignature):
        w.u8(variant_hint if variant_hint in (SIG_STATEFUL, SIG_STATELESS) else SIG_STATELESS)
        _w_chain_sig(w, sig)
    elif isinstance(sig, IndexedSignature):
        w.u8(SIG_AMP_FIRST)
        w.u32(sig.index)
        write_signature(w, sig.inner, variant_hint)
    elif isinstance(sig, SignatureVector):
        w.u8(SIG_AMP_ANY)
        w.u32(len(sig.components))
        for component in sig.components:
            write_signature(w, component, variant_hint)
    else:
        raise TypeError(f"cannot serialize signature {type(sig).__name__}")


def read_signature(r: _Reader):
    variant = r.u8()
    if variant == SIG_BOT:
        return BOT
    if variant == SIG_OMS:
        return _r_oms_signature(r)
    if variant == SIG_HASHED_OMS:
        return _r_hashed_sig(r)
    if variant in (SIG_STATEFUL, SIG_STATELESS):
        return _r_chain_sig(r)
    if variant == SIG_AMP_FIRST:
        index = r.u32()
        return IndexedSignature(index, read_signature(r))
    if variant == SIG_AMP_ANY:
        count = r.u32()
        return SignatureVector(tuple(read_signature(r) for _ in range(count)))
    raise InvalidLength(f"unknown signature variant {variant:#x}")


def _w_tree_memory(w: _Writer, memory: TreeMemory):
    w.u32(len(memory.keypairs))
    for label in sorted(memory.keypairs):
        sk, vk = memory.keypairs[label]
        w.frame(label.encode())
        _w_hashed_sk(w, sk)
        _w_oms_vk(w, vk)
    w.u32(len(memory.signatures))
    for label in sorted(memory.signatures):
        w.frame(label.encode())
        _w_hashed_sig(w, memory.signatures[label])


def _r_tree_memory(r: _Reader) -> TreeMemory:
    memory = TreeMemory()
    for _ in range(r.u32()):
        label = r.frame().decode()
        memory.keypairs[label] = (_r_hashed_sk(r), _r_oms_vk(r))
    for _ in range(r.u32()):
        label = r.frame().decode()
        memory.signatures[label] = _r_hashed_sig(r)
    return memory


def _w_stateless_sk(w: _Writer, sk: StatelessSecretKey):
    _w_hashed_sk(w, sk.root_sk)
    w.u32(len(sk.prf_keys))
    for k in sk.prf_keys:
        w.bits(k)
    for r0, r1 in sk.masks:
        w.bits(r0)
        w.bits(r1)


def _r_stateless_sk(r: _Reader) -> StatelessSecretKey:
    root = _r_hashed_sk(r)
    n = r.u32()
    keys = tuple(r.bits() for _ in range(n))
    masks = tuple((r.bits(), r.bits()) for _ in range(n))
    return StatelessSecretKey(root, keys, masks)


# -- scheme registry -----------------------------------------------------------


def scheme_doc(scheme) -> dict:
    """The JSON header describing a scheme object."""
    if isinstance(scheme, OneMessageSigScheme):
        return {"scheme": "oms", "params": scheme.params.to_json()}
    if isinstance(scheme, HashedOmsScheme):
        return {"scheme": "oms2", "params": scheme.params.to_json()}
    if isinstance(scheme, StatefulTreeScheme):
        return {"scheme": "stateful", "params": scheme.params.to_json()}
    if isinstance(scheme, StatelessScheme):
        return {"scheme": "stateless", "params": scheme.params.to_json()}
    if isinstance(scheme, FirstValidAmplifier):
        return {
            "scheme": "amplified-suf",
            "params": {"base": scheme_doc(scheme.base), "p": scheme.copies // 3},
        }
    if isinstance(scheme, AnyValidAmplifier):
        return {
            "scheme": "amplified-uf",
            "params": {"base": scheme_doc(scheme.base), "reps": scheme.reps},
        }
    raise TypeError(f"unknown scheme {type(scheme).__name__}")


def build_scheme(doc: dict):
    name = doc["scheme"]
    params = doc["params"]
    if name == "oms":
        return OneMessageSigScheme(OmsParams.from_json(params))
    if name == "oms2":
        return HashedOmsScheme(HashedOmsParams.from_json(params))
    if name == "stateful":
        return StatefulTreeScheme(StatefulParams.from_json(params))
    if name == "stateless":
        return StatelessScheme(StatelessParams.from_json(params))
    if name == "amplified-suf":
        return FirstValidAmplifier(build_scheme(params["base"]), int(params["p"]))
    if name == "amplified-uf":
        return AnyValidAmplifier(build_scheme(params["base"]), int(params["reps"]))
    raise InvalidLength(f"unknown scheme name {name!r}")


def _sig_variant_hint(scheme) -> int | None:
    if isinstance(scheme, StatefulTreeScheme):
        return SIG_STATEFUL
    if isinstance(scheme, StatelessScheme):
        return SIG_STATELESS
    if isinstance(scheme, (FirstValidAmplifier, AnyValidAmplifier)):
        return _sig_variant_hint(scheme.base)
    return None


def _write_sk_payload(w: _Writer, scheme, sk):
    if isinstance(scheme, OneMessageSigScheme):
        _w_oms_sk(w, sk)
    elif isinstance(scheme, HashedOmsScheme):
        _w_hashed_sk(w, sk)
    elif isinstance(scheme, StatefulTreeScheme):
        root_sk, memory = sk
        _w_hashed_sk(w, root_sk)
        _w_tree_memory(w, memory)
    elif isinstance(scheme, StatelessScheme):
        _w_stateless_sk(w, sk)
    elif isinstance(scheme, (FirstValidAmplifier, AnyValidAmplifier)):
        w.u32(len(sk))
        for part in sk:
            _write_sk_payload(w, scheme.base, part)
    else:
        raise TypeError(f"unknown scheme {type(scheme).__name__}")


def _read_sk_payload(r: _Reader, scheme):
    if isinstance(scheme, OneMessageSigScheme):
        return _r_oms_sk(r)
    if isinstance(scheme, HashedOmsScheme):
        return _r_hashed_sk(r)
    if isinstance(scheme, StatefulTreeScheme):
        return (_r_hashed_sk(r), _r_tree_memory(r))
    if isinstance(scheme, StatelessScheme):
        return _r_stateless_sk(r)
    if isinstance(scheme, (FirstValidAmplifier, AnyValidAmplifier)):
        return tuple(_read_sk_payload(r, scheme.base) for _ in range(r.u32()))
    raise TypeError(f"unknown scheme {type(scheme).__name__}")


def _write_vk_payload(w: _Writer, scheme, vk):
    if isinstance(scheme, (FirstValidAmplifier, AnyValidAmplifier)):
        w.u32(len(vk))
        for part in vk:
            _write_vk_payload(w, scheme.base, part)
    else:
        _w_oms_vk(w, vk)


def _read_vk_payload(r: _Reader, scheme):
    if isinstance(scheme, (FirstValidAmplifier, AnyValidAmplifier)):
        return tuple(_read_vk_payload(r, scheme.base) for _ in range(r.u32()))
    return _r_oms_vk(r)


def _envelope(kind: int, scheme, write_payload) -> bytes:
    w = _Writer()
    w.raw(MAGIC)
    w.u8(kind)
    w.json(scheme_doc(scheme))
    write_payload(w)
    return bytes(w.buf)


def _open_envelope(data: bytes, kind: int):
    if data[:5] != MAGIC:
        raise InvalidLength("not a botsig envelope")
    r = _Reader(data)
    r.take(5)
    actual = r.u8()
    if actual != kind:
        raise InvalidLength(f"expected envelope kind {kind}, found {actual}")
    scheme = build_scheme(r.json())
    return scheme, r


def encode_secret_key(scheme, sk) -> bytes:
    return _envelope(KIND_SECRET, scheme, lambda w: _write_sk_payload(w, scheme, sk))


def decode_secret_key(data: bytes):
    scheme, r = _open_envelope(data, KIND_SECRET)
    return scheme, _read_sk_payload(r, scheme)


def encode_verify_key(scheme, vk) -> bytes:
    return _envelope(KIND_VERIFY, scheme, lambda w: _write_vk_payload(w, scheme, vk))


def decode_verify_key(data: bytes):
    scheme, r = _open_envelope(data, KIND_VERIFY)
    return scheme, _read_vk_payload(r, scheme)


def encode_signature(scheme, sig) -> bytes:
    hint = _sig_variant_hint(scheme)
    return _envelope(
        KIND_SIGNATURE, scheme, lambda w: write_signature(w, sig, hint)
    )


def decode_signature(data: bytes):
    scheme, r = _open_envelope(data, KIND_SIGNATURE)
    return scheme, read_signature(r)


# -- JSON debug mirrors --------------------------------------------------------


def _json_value(v):
    if v is BOT:
        return "BOT"
    return {"bits": v.length, "hex": v.hex()}


def signature_to_json(sig) -> object:
    if sig is BOT:
        return "BOT"
    if isinstance(sig, OmsSignature):
        return {"kind": "oms", "preimages": [_json_value(x) for x in sig.preimages]}
    if isinstance(sig, HashedOmsSignature):
        return {
            "kind": "oms2",
            "hash_key": _json_value(sig.outer_key),
            "inner": signature_to_json(sig.inner),
        }
    if isinstance(sig, ChainSignature):
        return {
            "kind": "chain",
            "links": [
                {
                    "sig": signature_to_json(link.sig),
                    "vk0_slots": len(link.vk0.slots),
                    "vk1_slots": len(link.vk1.slots),
                }
                for link in sig.links
            ],
            "leaf": signature_to_json(sig.leaf_sig),
        }
    if isinstance(sig, IndexedSignature):
        return {"kind": "first-valid", "index": sig.index,
                "inner": signature_to_json(sig.inner)}
    if isinstance(sig, SignatureVector):
        return {"kind": "any-valid",
                "components": [signature_to_json(c) for c in sig.components]}
    raise TypeError(f"unknown signature {type(sig).__name__}")
