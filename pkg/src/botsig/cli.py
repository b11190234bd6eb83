"""Command-line interface.

Subcommands: ``params``, ``keygen``, ``sign``, ``verify``, ``estimate``,
``game``, ``pke-demo``.  Reports go to stdout as JSON lines with a
plain-text summary table on stderr; ``--out-dir`` additionally writes a
``reports.csv`` and rendered figures.  Exit codes: 0 on success, 1 when a
verification rejects or any report verdict fails, 2 on usage or file
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .bits import BOT, Bits
from .botprf import prf_bot_rate_bound, tree_prf_eval
from .botprg import vote_prg_eval, xor_prg_eval
from .bothash import uowhf_eval
from .errors import BotsigError
from .harness import (
    BotPatternParity,
    ConstantGuess,
    FrequencyDistinguisher,
    KeyLeakForger,
    PlantedConstantPrg,
    PrfConstantGuess,
    RandomForger,
    RepeatQueryProbe,
    ReplayForger,
    TreePrfAdapter,
    TwoMessageForger,
    XorPrgAdapter,
    forgery_game,
    multitime_game,
    prf_game,
)
from .harness.estimators import check_pseudodeterminism, estimate_correctness
from .harness.reports import (
    RATE_AT_LEAST,
    RATE_AT_MOST,
    SUMMARY_HEADER,
    ExperimentReport,
    advantage_report,
    rate_report,
)
from .pke import MockBasePke, rep_decrypt, rep_encrypt
from .profiles import SCHEME_NAMES, load_profile
from .signatures import Verdict, wire
from .signatures.chain import StatefulTreeScheme
from .tape import RandomTape


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _emit(reports: list[ExperimentReport], out_dir: str | None) -> int:
    for r in reports:
        print(r.to_json_line())
    if reports:
        print(SUMMARY_HEADER, file=sys.stderr)
        for r in reports:
            print(r.summary_row(), file=sys.stderr)
    if out_dir:
        from .viz import emit_artifacts

        for path in emit_artifacts(reports, out_dir):
            print(f"wrote {path}", file=sys.stderr)
    return 1 if any(r.verdict == "fail" for r in reports) else 0


def _msg_bits(hex_str: str, length: int) -> Bits:
    if length % 4:
        raise BotsigError(f"message length {length} is not hex-aligned")
    if len(hex_str) * 4 != length:
        raise BotsigError(
            f"message must be {length // 4} hex digits for this scheme"
        )
    return Bits(length, int(hex_str, 16)) if hex_str else Bits(0, 0)


# -- estimate / game runners (also used by worker processes) -------------------


def _chunk_tape(seed, index: int) -> RandomTape:
    return RandomTape(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


def _run_estimate(profile_doc: dict, kind: str, target: str, trials: int,
                  seed, chunk: int) -> dict:
    from .profiles import Profile

    profile = Profile(profile_doc)
    tape = _chunk_tape(seed, chunk)
    if kind == "bot-rate":
        if target == "prg":
            spec = profile.prg_spec()
            src = lambda t: t.bits(spec.composite_key_len)
            ev = lambda k, t: xor_prg_eval(spec, k, t)
        elif target == "vote":
            spec = profile.prg_spec()
            src = lambda t: t.bits(spec.base.key_len)
            ev = lambda k, t: vote_prg_eval(spec, k, t)
        elif target == "prf":
            spec = profile.prf_spec()
            src = lambda t: t.bits(spec.key_len)
            ev = lambda k, t: tree_prf_eval(spec, k, t.bits(spec.input_len), t)
        elif target == "uowhf":
            spec = profile.uowhf_spec()
            src = lambda t: (t.bits(spec.key_len), t.bits(spec.in_len))
            ev = lambda kx, t: uowhf_eval(spec, kx[0], kx[1], t)
        else:
            raise BotsigError(f"unknown bot-rate target {target!r}")
        bots = sum(ev(src(tape), tape) is BOT for _ in range(trials))
        return {"kind": "rate", "trials": trials, "successes": bots}
    if kind == "pseudodet":
        keys = min(100, max(1, trials // 10))
        reps = max(2, trials // keys)
        if target == "prg":
            spec = profile.prg_spec()
            key_list = [tape.bits(spec.composite_key_len) for _ in range(keys)]
            ev = lambda k, t: xor_prg_eval(spec, k, t)
        elif target == "prf":
            spec = profile.prf_spec()
            pairs = [(tape.bits(spec.key_len), tape.bits(spec.input_len))
                     for _ in range(keys)]
            key_list = pairs
            ev = lambda kx, t: tree_prf_eval(spec, kx[0], kx[1], t)
        elif target == "uowhf":
            spec = profile.uowhf_spec()
            key_list = [(tape.bits(spec.key_len), tape.bits(spec.in_len))
                        for _ in range(keys)]
            ev = lambda kx, t: uowhf_eval(spec, kx[0], kx[1], t)
        else:
            raise BotsigError(f"unknown pseudodet target {target!r}")
        r = check_pseudodeterminism(ev, key_list, reps, tape)
        return {"kind": "pseudodet", "trials": r.trials,
                "successes": r.successes, "worst": r.rate}
    if kind == "correctness":
        scheme = profile.scheme(target)
        r = estimate_correctness(scheme, trials, tape)
        return {"kind": "rate", "trials": trials, "successes": r.successes}
    raise BotsigError(f"unknown estimate kind {kind!r}")


_DISTINGUISHERS = {
    "constant": lambda: ConstantGuess(0),
    "frequency": FrequencyDistinguisher,
    "parity": BotPatternParity,
}
_PRF_DISTINGUISHERS = {
    "constant": lambda: PrfConstantGuess(0),
    "repeat-query": RepeatQueryProbe,
}
_ADVERSARIES = {
    "replay": ReplayForger,
    "random": RandomForger,
    "two-message": TwoMessageForger,
    "key-leak": KeyLeakForger,
}


def _run_game(profile_doc: dict, game: str, opts: dict, trials: int,
              seed, chunk: int) -> dict:
    from .profiles import Profile

    profile = Profile(profile_doc)
    tape = _chunk_tape(seed, chunk)
    if game == "multitime":
        if opts.get("planted"):
            prg = PlantedConstantPrg(out_len=profile.prg_spec().out_len)
        else:
            prg = XorPrgAdapter(profile.prg_spec())
        d = _DISTINGUISHERS[opts["distinguisher"]]()
        r = multitime_game(prg, opts["q"], d, trials, tape)
        return {"kind": "advantage", "trials": trials, "successes": r.successes}
    if game == "prf":
        prf = TreePrfAdapter(profile.prf_spec())
        d = _PRF_DISTINGUISHERS[opts["distinguisher"]]()
        r = prf_game(
            prf, d, opts["budget"], trials, tape,
            world1_cache=not opts.get("broken_cache"),
        )
        return {"kind": "advantage", "trials": trials, "successes": r.successes}
    if game in ("omsuf", "suf"):
        scheme = profile.scheme(opts["scheme"])
        adversary = _ADVERSARIES[opts["adversary"]]
        r = forgery_game(
            scheme, adversary, trials, tape,
            same_message_required=(game == "omsuf"),
            leak_sk=(opts["adversary"] == "key-leak"),
        )
        return {"kind": "rate", "trials": trials, "successes": r.successes}
    raise BotsigError(f"unknown game {game!r}")


def _estimate_worker(payload: str) -> dict:
    doc = json.loads(payload)
    return _run_estimate(doc["profile"], doc["kind"], doc["target"],
                         doc["trials"], doc["seed"], doc["chunk"])


def _game_worker(payload: str) -> dict:
    doc = json.loads(payload)
    return _run_game(doc["profile"], doc["game"], doc["opts"],
                     doc["trials"], doc["seed"], doc["chunk"])


def _run_chunked(worker, base_payload: dict, trials: int, jobs: int) -> dict:
    if jobs <= 1:
        return worker(json.dumps({**base_payload, "trials": trials, "chunk": 0}))
    per = trials // jobs
    sizes = [per + (1 if i < trials % jobs else 0) for i in range(jobs)]
    payloads = [
        json.dumps({**base_payload, "trials": size, "chunk": i})
        for i, size in enumerate(sizes) if size
    ]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(worker, payloads))
    merged = dict(parts[0])
    for part in parts[1:]:
        merged["trials"] += part["trials"]
        merged["successes"] += part["successes"]
        if "worst" in merged:
            merged["worst"] = max(merged["worst"], part["worst"])
    return merged


# -- subcommand implementations --------------------------------------------------


def _cmd_params(args) -> int:
    profile = load_profile(args.profile)
    print(profile.to_json_str())
    return 0


def _cmd_keygen(args) -> int:
    profile = load_profile(args.profile)
    scheme = profile.scheme(args.scheme)
    tape = RandomTape(args.seed)
    sk, vk = scheme.keygen(tape)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(wire.encode_secret_key(scheme, sk))
    vk_path = Path(str(out) + ".vk")
    vk_path.write_bytes(wire.encode_verify_key(scheme, vk))
    print(json.dumps({
        "command": "keygen",
        "scheme": args.scheme,
        "profile": profile.name,
        "secret_key": str(out),
        "verify_key": str(vk_path),
    }, sort_keys=True))
    return 0


def _cmd_sign(args) -> int:
    key_path = Path(args.key)
    scheme, sk = wire.decode_secret_key(key_path.read_bytes())
    m = _msg_bits(args.msg, scheme.message_len)
    tape = RandomTape(args.seed)
    sig = scheme.sign(sk, m, tape)
    sig_path = Path(args.out) if args.out else Path(str(key_path) + ".sig")
    sig_path.write_bytes(wire.encode_signature(scheme, sig))
    if isinstance(scheme, StatefulTreeScheme):
        # persist the signer's updated memory
        key_path.write_bytes(wire.encode_secret_key(scheme, sk))
    print(json.dumps({
        "command": "sign",
        "message_hex": args.msg,
        "signature": str(sig_path),
        "aborted": sig is BOT,
        "payload": wire.signature_to_json(sig),
    }, sort_keys=True))
    return 1 if sig is BOT else 0


def _cmd_verify(args) -> int:
    _, vk = wire.decode_verify_key(Path(args.vk).read_bytes())
    scheme, sig = wire.decode_signature(Path(args.sig).read_bytes())
    m = _msg_bits(args.msg, scheme.message_len)
    verdict = scheme.verify(vk, m, sig, RandomTape(args.seed))
    print(json.dumps({
        "command": "verify",
        "message_hex": args.msg,
        "verdict": verdict.value,
    }, sort_keys=True))
    return 0 if verdict is Verdict.ACCEPT else 1


def _cmd_estimate(args) -> int:
    profile = load_profile(args.profile)
    payload = {
        "profile": profile.doc,
        "kind": args.kind,
        "target": args.target,
        "seed": args.seed,
    }
    merged = _run_chunked(_estimate_worker, payload, args.trials, args.jobs)
    name = f"{args.kind}[{args.target}]"
    if merged["kind"] == "pseudodet":
        report = ExperimentReport(
            name=name,
            trials=merged["trials"],
            successes=merged["successes"],
            rate=merged["worst"],
            ci_halfwidth=0.0,
            analytic_bound=0.0,
            bound_direction=RATE_AT_MOST,
            verdict="pass" if merged["worst"] == 0.0 else "fail",
        )
    elif args.kind == "bot-rate":
        bound = direction = None
        if args.target == "uowhf":
            bound, direction = profile.uowhf_spec().mu / 2, RATE_AT_MOST
        elif args.target == "prf":
            # union bound over the measured per-level abort rate
            spec = profile.prf_spec()
            probe = _chunk_tape(args.seed, 10_007)
            level_trials = max(1000, args.trials // 4)
            level_bots = sum(
                xor_prg_eval(spec.prg, probe.bits(spec.key_len), probe) is BOT
                for _ in range(level_trials)
            )
            bound = prf_bot_rate_bound(
                spec.input_len, level_bots / level_trials, 0.0
            )
            direction = RATE_AT_MOST
        report = rate_report(
            name, merged["trials"], merged["successes"],
            analytic_bound=bound, bound_direction=direction,
        )
    else:  # correctness
        report = rate_report(
            name, merged["trials"], merged["successes"],
            analytic_bound=profile.correctness_bound(args.target),
            bound_direction=(
                RATE_AT_LEAST if profile.correctness_bound(args.target) is not None
                else None
            ),
        )
    return _emit([report], args.out_dir)


def _cmd_game(args) -> int:
    profile = load_profile(args.profile)
    opts = {
        "distinguisher": args.distinguisher,
        "planted": args.planted,
        "q": args.q,
        "budget": args.budget,
        "scheme": args.scheme,
        "adversary": args.adversary,
        "broken_cache": args.broken_cache,
    }
    payload = {
        "profile": profile.doc,
        "game": args.game,
        "opts": opts,
        "seed": args.seed,
    }
    merged = _run_chunked(_game_worker, payload, args.trials, args.jobs)
    if merged["kind"] == "advantage":
        threshold = 0.4 if args.planted else None
        report = advantage_report(
            f"{args.game}[{args.distinguisher}]",
            merged["trials"], merged["successes"], threshold=threshold,
        )
    else:
        # negative controls must stay at zero wins; the key-leak positive
        # control is informational here because noisy profiles legitimately
        # lose a correctness-sized fraction of its forgeries
        expect_zero = args.adversary in ("replay", "random", "two-message")
        report = rate_report(
            f"{args.game}[{args.adversary} vs {args.scheme}]",
            merged["trials"], merged["successes"],
            analytic_bound=0.0 if expect_zero else None,
            bound_direction=RATE_AT_MOST if expect_zero else None,
        )
    return _emit([report], args.out_dir)


def _cmd_pke_demo(args) -> int:
    profile = load_profile(args.profile)
    base = MockBasePke(
        key_len=profile.pke_base().key_len,
        delta=args.delta,
        master_seed=profile.pke_base().master_seed,
    )
    tape = RandomTape(args.seed)
    keys = [base.keygen(tape) for _ in range(args.q)]
    failures = 0
    for i in range(args.trials):
        bit = i & 1
        cts = rep_encrypt(base, keys, bit, tape)
        if rep_decrypt(base, keys, cts, tape) != bit:
            failures += 1
    lifted = rate_report(
        f"pke-lift[q={args.q},delta={args.delta}]",
        args.trials, failures,
        analytic_bound=max(args.delta**args.q, 1e-3),
        bound_direction=RATE_AT_MOST,
        extra={"residual_error": args.delta**args.q},
    )

    # planted disagreement: a flipped component next to a correct one must
    # surface as abort, never as a wrong bit
    clean = MockBasePke(key_len=base.key_len, delta=0.0,
                        master_seed=base.master_seed)
    aborts = 0
    planted_trials = 100
    for _ in range(planted_trials):
        cts = rep_encrypt(clean, keys, 0, tape)
        nonce, masked = cts[0]
        cts[0] = (nonce, masked ^ 1)
        if rep_decrypt(clean, keys, cts, tape) is BOT:
            aborts += 1
    planted = rate_report(
        "pke-disagreement-aborts", planted_trials, aborts,
        analytic_bound=1.0, bound_direction=RATE_AT_LEAST,
    )
    return _emit([lifted, planted], args.out_dir)


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="botsig",
        description="abort-aware pseudorandomness, signatures, and games",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, trials_default=10_000):
        p.add_argument("--profile", default="desk-small")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--trials", type=int, default=trials_default)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--out-dir", default=None,
                       help="write reports.csv and figures here")

    p = sub.add_parser("params", help="print a resolved profile")
    p.add_argument("--profile", default="desk-small")
    p.set_defaults(func=_cmd_params)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--scheme", choices=SCHEME_NAMES, required=True)
    p.add_argument("--profile", default="desk-small")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_keygen)

    p = sub.add_parser("sign", help="sign a message")
    p.add_argument("--key", required=True)
    p.add_argument("--msg", required=True, help="message as hex digits")
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_sign)

    p = sub.add_parser("verify", help="verify a signature")
    p.add_argument("--vk", required=True)
    p.add_argument("--msg", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("estimate", help="statistical estimators")
    p.add_argument("kind", choices=("bot-rate", "pseudodet", "correctness"))
    p.add_argument("--target", required=True,
                   help="bot-rate/pseudodet: prg|vote|prf|uowhf; "
                        "correctness: a scheme name")
    common(p)
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("game", help="security experiments")
    p.add_argument("game", choices=("multitime", "prf", "omsuf", "suf"))
    p.add_argument("--distinguisher", default="frequency",
                   help="multitime: constant|frequency|parity; "
                        "prf: constant|repeat-query")
    p.add_argument("--adversary", default="random",
                   choices=sorted(_ADVERSARIES))
    p.add_argument("--scheme", default="oms", choices=SCHEME_NAMES)
    p.add_argument("--q", type=int, default=4,
                   help="evaluations per trial (multitime)")
    p.add_argument("--budget", type=int, default=8,
                   help="oracle queries per trial (prf)")
    p.add_argument("--planted", action="store_true",
                   help="multitime: use the planted key-independent generator")
    p.add_argument("--broken-cache", action="store_true",
                   help="prf: disable world-1 caching (consistency plant)")
    common(p, trials_default=1_000)
    p.set_defaults(func=_cmd_game)

    p = sub.add_parser("pke-demo", help="parallel-repetition decryption lifter")
    p.add_argument("--q", type=int, default=64)
    p.add_argument("--delta", type=float, default=0.3)
    p.add_argument("--profile", default="desk-small")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--out-dir", default=None)
    p.set_defaults(func=_cmd_pke_demo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BotsigError as exc:
        return _fail(str(exc))
    except FileNotFoundError as exc:
        return _fail(f"cannot read {exc.filename}")
    except (KeyError, ValueError, OSError) as exc:
        return _fail(f"{type(exc).__name__}: {exc}")


if __name__ == "__main__":
    sys.exit(main())
