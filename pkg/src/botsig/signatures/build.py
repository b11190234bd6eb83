"""Sized parameter stacks for the signature ladder.

The chain scheme's message capacity must cover a pair of packed child
verification keys, whose size depends on the inner scheme, so the stack is
assembled bottom-up here.  Sub-seeds for each hash role are derived from
one master seed.
"""

from __future__ import annotations

import hashlib

from ..bothash import BotUowhfSpec
from ..botprg import BotPrgSpec
from ..pdprg import PdPrgSpec
from .chain import StatefulParams, StatelessParams, vk_bit_len
from .oms import HashedOmsParams, OmsParams


def derive_seed(master: bytes, role: str) -> bytes:
    return hashlib.blake2b(role.encode(), key=master, digest_size=16).digest()


def make_oms_params(
    sec_bits: int, hash_key_bits: int, q: int, mu: float, master: bytes,
    role: str = "oms",
) -> OmsParams:
    uowhf = BotUowhfSpec(
        key_len=hash_key_bits,
        in_len=2 * sec_bits,
        out_len=sec_bits,
        mu=mu,
        master_seed=derive_seed(master, role + ".preimage"),
    )
    return OmsParams(uowhf=uowhf, q=q)


def make_hashed_oms_params(
    sec_bits: int, hash_key_bits: int, message_bits: int, mu: float,
    master: bytes, role: str = "oms2", coin_len: int = 64,
) -> HashedOmsParams:
    inner = make_oms_params(
        sec_bits, hash_key_bits, q=hash_key_bits + sec_bits, mu=mu,
        master=master, role=role,
    )
    outer = BotUowhfSpec(
        key_len=hash_key_bits,
        in_len=message_bits,
        out_len=sec_bits,
        mu=mu,
        master_seed=derive_seed(master, role + ".message"),
    )
    return HashedOmsParams(outer=outer, inner=inner, coin_len=coin_len)


def make_chain_ots_params(
    sec_bits: int, hash_key_bits: int, mu: float, master: bytes,
    role: str = "chain", coin_len: int = 64,
) -> HashedOmsParams:
    """Chain scheme sized to sign exactly two packed verification keys."""
    inner = make_oms_params(
        sec_bits, hash_key_bits, q=hash_key_bits + sec_bits, mu=mu,
        master=master, role=role,
    )
    # packed key: per (bit, column) slot a hash key, a presence bit, an image
    slot_bits = hash_key_bits + 1 + sec_bits
    message_bits = 2 * (2 * inner.q * slot_bits)
    outer = BotUowhfSpec(
        key_len=hash_key_bits,
        in_len=message_bits,
        out_len=sec_bits,
        mu=mu,
        master_seed=derive_seed(master, role + ".message"),
    )
    params = HashedOmsParams(outer=outer, inner=inner, coin_len=coin_len)
    assert params.message_len == 2 * vk_bit_len(params)
    return params


def make_prf_prg(
    coin_len: int, mu: float, nu: float, vote_reps: int, master: bytes,
    role: str = "prf",
) -> BotPrgSpec:
    base = PdPrgSpec(
        key_len=coin_len,
        out_len=2 * coin_len,
        mu=mu,
        nu=nu,
        master_seed=derive_seed(master, role),
    )
    return BotPrgSpec(base=base, vote_reps=vote_reps, fanin=1)


def make_stateful_params(
    n: int, sec_bits: int, hash_key_bits: int, mu: float, master: bytes,
) -> StatefulParams:
    return StatefulParams(
        n=n,
        ots=make_chain_ots_params(sec_bits, hash_key_bits, mu, master),
    )


def make_stateless_params(
    n: int, sec_bits: int, hash_key_bits: int, mu: float, master: bytes,
    prf_mu: float = 1e-6, prf_nu: float = 0.0, prf_vote_reps: int = 64,
    coin_len: int = 64,
) -> StatelessParams:
    return StatelessParams(
        n=n,
        ots=make_chain_ots_params(
            sec_bits, hash_key_bits, mu, master, coin_len=coin_len
        ),
        prf_prg=make_prf_prg(coin_len, prf_mu, prf_nu, prf_vote_reps, master),
    )
