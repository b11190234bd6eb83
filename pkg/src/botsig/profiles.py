"""Named parameter profiles tying every layer together.

A profile is a JSON document; two ship built in (``desk-small`` and
``desk-large``) and more can be dropped into the directory named by the
``BOTSIG_PROFILE_DIR`` environment variable as ``<name>.json``.  Loading a
profile constructs every derived spec, so cross-layer constraints (triple
stretch on the one-way path, key+digest headroom in the hash-then-sign
scheme, PRF output matching the key-generation coin count) are validated
eagerly.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .bothash import BotUowhfSpec
from .botprg import BotPrgSpec
from .botprf import TreePrfSpec
from .errors import PreconditionViolated
from .pdprg import PdPrgSpec
from .pke import MockBasePke
from .signatures import (
    AnyValidAmplifier,
    FirstValidAmplifier,
    HashedOmsScheme,
    OneMessageSigScheme,
    StatefulTreeScheme,
    StatelessScheme,
)
from .signatures.build import (
    derive_seed,
    make_hashed_oms_params,
    make_oms_params,
    make_stateful_params,
    make_stateless_params,
)

PROFILE_DIR_ENV = "BOTSIG_PROFILE_DIR"

_BUILTIN: dict[str, dict] = {
    "desk-small": {
        "name": "desk-small",
        "master_seed_hex": "6465736b2d736d616c6c2d763100aa55",
        "sec_bits": 16,
        "hash_key_bits": 16,
        "n": 4,
        "sig_mu": 1e-3,
        "oms_q": 16,
        "oms_mu": 0.01,
        "oms2_message_bits": 256,
        "oms2_mu": 1e-4,
        "coin_len": 64,
        "prg": {"key_len": 16, "out_len": 48, "mu": 0.05, "nu": 0.1,
                "vote_reps": 64, "fanin": 16},
        "owf_fanin": 1,
        "prf": {"key_len": 32, "mu": 0.002, "nu": 0.05, "vote_reps": 512,
                "fanin": 2, "input_len": 32},
        "ds_prf": {"mu": 1e-6, "nu": 0.0, "vote_reps": 64},
        "uowhf": {"key_len": 16, "in_len": 32, "out_len": 16, "mu": 0.05},
        "suf_p": 1,
        "uf_reps": 64,
        "pke": {"key_len": 32, "delta": 0.3, "q": 64},
    },
    "desk-large": {
        "name": "desk-large",
        "master_seed_hex": "6465736b2d6c617267652d76310055aa",
        "sec_bits": 32,
        "hash_key_bits": 32,
        "n": 8,
        "sig_mu": 1e-3,
        "oms_q": 32,
        "oms_mu": 0.005,
        "oms2_message_bits": 512,
        "oms2_mu": 5e-5,
        "coin_len": 64,
        "prg": {"key_len": 32, "out_len": 96, "mu": 0.02, "nu": 0.1,
                "vote_reps": 256, "fanin": 16},
        "owf_fanin": 1,
        "prf": {"key_len": 64, "mu": 0.001, "nu": 0.05, "vote_reps": 512,
                "fanin": 2, "input_len": 32},
        "ds_prf": {"mu": 1e-6, "nu": 0.0, "vote_reps": 256},
        "uowhf": {"key_len": 32, "in_len": 64, "out_len": 32, "mu": 0.05},
        "suf_p": 1,
        "uf_reps": 128,
        "pke": {"key_len": 32, "delta": 0.3, "q": 64},
    },
}

SCHEME_NAMES = ("oms", "oms2", "stateful", "stateless", "amplified-suf", "amplified-uf")


@dataclass(frozen=True)
class Profile:
    """A validated parameter profile with constructors for every layer."""

    doc: dict

    def __post_init__(self):
        # construct everything once so bad profiles fail at load time
        self.prg_spec()
        self.owf_prg_spec()
        self.prf_spec()
        self.uowhf_spec()
        self.pke_base()
        for name in SCHEME_NAMES:
            self.scheme(name)

    @property
    def name(self) -> str:
        return self.doc["name"]

    @property
    def master_seed(self) -> bytes:
        return bytes.fromhex(self.doc["master_seed_hex"])

    # -- generator layers ---------------------------------------------------

    def pdprg_spec(self) -> PdPrgSpec:
        g = self.doc["prg"]
        return PdPrgSpec(
            key_len=g["key_len"], out_len=g["out_len"], mu=g["mu"], nu=g["nu"],
            master_seed=derive_seed(self.master_seed, "pdprg"),
        )

    def prg_spec(self) -> BotPrgSpec:
        g = self.doc["prg"]
        return BotPrgSpec(
            base=self.pdprg_spec(), vote_reps=g["vote_reps"], fanin=g["fanin"]
        )

    def owf_prg_spec(self) -> BotPrgSpec:
        """Fan-in restricted stack whose stretch covers the one-way parsing."""
        g = self.doc["prg"]
        spec = BotPrgSpec(
            base=self.pdprg_spec(),
            vote_reps=g["vote_reps"],
            fanin=self.doc.get("owf_fanin", 1),
        )
        if spec.out_len < 3 * spec.composite_key_len:
            raise PreconditionViolated(
                "profile's one-way path needs out_len >= 3x the seed length"
            )
        return spec

    def prf_spec(self) -> TreePrfSpec:
        g = self.doc["prf"]
        base = PdPrgSpec(
            key_len=g["key_len"],
            out_len=2 * g["fanin"] * g["key_len"],
            mu=g["mu"],
            nu=g["nu"],
            master_seed=derive_seed(self.master_seed, "treeprf"),
        )
        return TreePrfSpec(
            prg=BotPrgSpec(base=base, vote_reps=g["vote_reps"], fanin=g["fanin"]),
            input_len=g["input_len"],
        )

    def uowhf_spec(self) -> BotUowhfSpec:
        h = self.doc["uowhf"]
        return BotUowhfSpec(
            key_len=h["key_len"], in_len=h["in_len"], out_len=h["out_len"],
            mu=h["mu"], master_seed=derive_seed(self.master_seed, "uowhf"),
        )

    def pke_base(self) -> MockBasePke:
        p = self.doc["pke"]
        return MockBasePke(
            key_len=p["key_len"], delta=p["delta"],
            master_seed=derive_seed(self.master_seed, "pke"),
        )

    @property
    def pke_reps(self) -> int:
        return self.doc["pke"]["q"]

    # -- signature schemes ----------------------------------------------------

    def scheme(self, name: str):
        d = self.doc
        if name == "oms":
            return OneMessageSigScheme(make_oms_params(
                d["sec_bits"], d["hash_key_bits"], d["oms_q"], d["oms_mu"],
                self.master_seed,
            ))
        if name == "oms2":
            return HashedOmsScheme(make_hashed_oms_params(
                d["sec_bits"], d["hash_key_bits"], d["oms2_message_bits"],
                d["oms2_mu"], self.master_seed,
            ))
        if name == "stateful":
            return StatefulTreeScheme(make_stateful_params(
                d["n"], d["sec_bits"], d["hash_key_bits"], d["sig_mu"],
                self.master_seed,
            ))
        if name == "stateless":
            return StatelessScheme(self.stateless_params())
        if name == "amplified-suf":
            return FirstValidAmplifier(self.scheme("stateless"), d["suf_p"])
        if name == "amplified-uf":
            return AnyValidAmplifier(self.scheme("stateless"), d["uf_reps"])
        raise PreconditionViolated(f"unknown scheme {name!r}")

    def stateless_params(self):
        d = self.doc
        ds = d["ds_prf"]
        return make_stateless_params(
            d["n"], d["sec_bits"], d["hash_key_bits"], d["sig_mu"],
            self.master_seed,
            prf_mu=ds["mu"], prf_nu=ds["nu"], prf_vote_reps=ds["vote_reps"],
            coin_len=d["coin_len"],
        )

    # -- analytic correctness bounds -------------------------------------------

    def correctness_bound(self, scheme_name: str) -> float | None:
        d = self.doc
        if scheme_name == "oms":
            return (1 - d["oms_mu"]) ** (4 * d["oms_q"])
        if scheme_name == "oms2":
            return (1 - d["oms2_mu"]) ** (2 * d["oms2_message_bits"] + 3)
        if scheme_name in ("stateful", "stateless"):
            n, lam = d["n"], d["sec_bits"]
            return (1 - d["sig_mu"]) ** (4 * n * lam + 10 * n)
        return None

    def to_json_str(self) -> str:
        return json.dumps(self.doc, indent=2, sort_keys=True)


def builtin_names() -> list[str]:
    return sorted(_BUILTIN)


def load_profile(name: str) -> Profile:
    """Resolve a profile by name: profile dir first, then built-ins.

    ``name`` may also be a path to a JSON document.
    """
    candidate = Path(name)
    if candidate.suffix == ".json" and candidate.exists():
        return Profile(json.loads(candidate.read_text()))
    profile_dir = os.environ.get(PROFILE_DIR_ENV)
    if profile_dir:
        path = Path(profile_dir) / f"{name}.json"
        if path.exists():
            return Profile(json.loads(path.read_text()))
    if name in _BUILTIN:
        return Profile(_BUILTIN[name])
    raise PreconditionViolated(
        f"unknown profile {name!r} (built-ins: {', '.join(builtin_names())})"
    )
