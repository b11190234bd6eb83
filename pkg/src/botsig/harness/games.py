"""Security experiments as executable games.

Distinguishing games report an advantage with a confidence interval;
forgery games run keygen, give the adversary a logged signing oracle plus
the verification key, and score the returned forgery.  Adversaries and
distinguishers are pluggable objects; the built-in ones live in
``players``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..bits import BOT, Bits
from ..combinators import is_bot
from ..errors import PreconditionViolated
from ..signatures.verdict import Verdict
from ..tape import RandomTape
from .reports import DEFAULT_Z, ExperimentReport, advantage_report, rate_report


class BudgetExceeded(RuntimeError):
    """An oracle was queried beyond its declared budget."""


# -- generator adapters --------------------------------------------------------


@dataclass(frozen=True)
class XorPrgAdapter:
    """Multi-evaluation view of the vote/XOR generator for game harnesses."""

    spec: object  # BotPrgSpec

    @property
    def out_len(self) -> int:
        return self.spec.out_len

    def sample_key(self, tape: RandomTape) -> Bits:
        return tape.bits(self.spec.composite_key_len)

    def evaluate(self, key: Bits, tape: RandomTape):
        from ..botprg import xor_prg_eval

        return xor_prg_eval(self.spec, key, tape)


@dataclass(frozen=True)
class TreePrfAdapter:
    spec: object  # TreePrfSpec

    @property
    def input_len(self) -> int:
        return self.spec.input_len

    @property
    def output_len(self) -> int:
        return self.spec.output_len

    def sample_key(self, tape: RandomTape) -> Bits:
        return tape.bits(self.spec.key_len)

    def evaluate(self, key: Bits, x: Bits, tape: RandomTape):
        from ..botprf import tree_prf_eval

        return tree_prf_eval(self.spec, key, x, tape)


# -- multi-evaluation distinguishing game ---------------------------------------


def multitime_game(
    prg,
    q: int,
    distinguisher,
    trials: int,
    tape: RandomTape,
    z: float = DEFAULT_Z,
    threshold: float | None = None,
    record: bool = False,
):
    """Real-vs-masked-uniform game over q evaluations of one key.

    World 0 hands the distinguisher q fresh evaluations on one key; world 1
    hands abort-masked copies of a single uniform string, where each copy's
    abort pattern comes from its own fresh evaluation.  Distinguishers may
    keep state across trials (frequency analysis over repeated games is
    exactly what the multi-evaluation setting permits).

    Returns the advantage report, plus per-trial transcripts when
    ``record`` is set.
    """
    if q < 1:
        raise PreconditionViolated("q must be at least 1")
    if trials < 1:
        raise PreconditionViolated("trials must be at least 1")
    correct = 0
    transcripts = []
    for _ in range(trials):
        world = int(tape.coin(0.5))
        key = prg.sample_key(tape)
        evals = [prg.evaluate(key, tape) for _ in range(q)]
        if world:
            mask = tape.bits(prg.out_len)
            shown = [is_bot(e, mask) for e in evals]
        else:
            shown = evals
        guess = int(distinguisher.guess(shown))
        correct += guess == world
        if record:
            transcripts.append((world, tuple(evals), tuple(shown)))
    report = advantage_report(
        f"multitime[{type(distinguisher).__name__}]",
        trials, correct, z=z, threshold=threshold,
        extra={"q": q},
    )
    return (report, transcripts) if record else report


# -- adaptive function-oracle game ----------------------------------------------


def prf_game(
    prf,
    distinguisher,
    budget: int,
    trials: int,
    tape: RandomTape,
    z: float = DEFAULT_Z,
    threshold: float | None = None,
    world1_cache: bool = True,
    record: bool = False,
):
    """Adaptive real-function vs abort-masked-random-function game.

    World 0 oracles the keyed function; world 1 evaluates it, forwards
    aborts, and otherwise serves a lazily materialized random function
    (fresh value on first sight of an input, cached thereafter).  Setting
    ``world1_cache=False`` deliberately breaks that caching, which planted
    consistency probes must detect.
    """
    if budget < 1:
        raise PreconditionViolated("budget must be at least 1")
    if trials < 1:
        raise PreconditionViolated("trials must be at least 1")
    correct = 0
    logs = []
    for _ in range(trials):
        world = int(tape.coin(0.5))
        key = prf.sample_key(tape)
        cache: dict[Bits, Bits] = {}
        queries = [0]
        log = []

        def oracle(x: Bits):
            if queries[0] >= budget:
                raise BudgetExceeded(f"query budget {budget} exhausted")
            queries[0] += 1
            value = prf.evaluate(key, x, tape)
            if world and value is not BOT:
                if world1_cache:
                    if x not in cache:
                        cache[x] = tape.bits(prf.output_len)
                    value = cache[x]
                else:
                    value = tape.bits(prf.output_len)
            log.append((x, value))
            return value

        guess = int(distinguisher.run(oracle, prf, tape))
        correct += guess == world
        if record:
            logs.append((world, tuple(log)))
    report = advantage_report(
        f"prf[{type(distinguisher).__name__}]",
        trials, correct, z=z, threshold=threshold,
        extra={"budget": budget},
    )
    return (report, logs) if record else report


# -- forgery experiments ---------------------------------------------------------

WIN = "Win"
LOSE = "Lose"


def _forgery_experiment(
    scheme, adversary, tape: RandomTape, same_message_required: bool,
    leak_sk: bool,
) -> str:
    sk, vk = scheme.keygen(tape)
    queried_messages: set = set()
    log: list = []

    def oracle(m: Bits):
        sig = scheme.sign(sk, m, tape)
        queried_messages.add(m)
        log.append((m, sig))
        return sig

    try:
        forgery = adversary.run(
            vk, oracle, scheme, tape, sk=sk if leak_sk else None
        )
        if forgery is None:
            return LOSE
        m_star, sig_star = forgery
    except Exception:
        return LOSE
    if same_message_required and len(queried_messages) > 1:
        return LOSE
    if any(m == m_star and s == sig_star for m, s in log):
        return LOSE
    if scheme.verify(vk, m_star, sig_star, tape) is not Verdict.ACCEPT:
        return LOSE
    return WIN


def om_suf_experiment(scheme, adversary, tape: RandomTape, leak_sk: bool = False) -> str:
    """Forgery game where all oracle queries must hit one message."""
    return _forgery_experiment(scheme, adversary, tape, True, leak_sk)


def suf_experiment(scheme, adversary, tape: RandomTape, leak_sk: bool = False) -> str:
    """Forgery game with unrestricted oracle queries."""
    return _forgery_experiment(scheme, adversary, tape, False, leak_sk)


def forgery_game(
    scheme,
    adversary_factory,
    trials: int,
    tape: RandomTape,
    same_message_required: bool = True,
    leak_sk: bool = False,
    z: float = DEFAULT_Z,
    name: str | None = None,
    expect_zero_wins: bool = False,
) -> ExperimentReport:
    """Repeated forgery experiments with a fresh adversary per trial."""
    wins = 0
    for _ in range(trials):
        adversary = adversary_factory()
        result = _forgery_experiment(
            scheme, adversary, tape, same_message_required, leak_sk
        )
        wins += result == WIN
    game = "om-suf" if same_message_required else "suf"
    return rate_report(
        name or f"{game}[{type(adversary_factory()).__name__}]",
        trials,
        wins,
        z=z,
        analytic_bound=0.0 if expect_zero_wins else None,
        bound_direction="le" if expect_zero_wins else None,
    )
