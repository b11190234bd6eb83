import pytest

from botsig.bits import BOT, Bits
from botsig.botprg import BotPrgSpec
from botsig.botprf import TreePrfSpec
from botsig.errors import PreconditionViolated
from botsig.harness import (
    BotPatternParity,
    ConstantGuess,
    FrequencyDistinguisher,
    KeyLeakForger,
    PlantedConstantPrg,
    RandomForger,
    RepeatQueryProbe,
    ReplayForger,
    TreePrfAdapter,
    TwoMessageForger,
    XorPrgAdapter,
    chernoff_sample_size,
    check_pseudodeterminism,
    estimate_bot_rate,
    estimate_correctness,
    forgery_game,
    multitime_game,
    om_suf_experiment,
    prf_game,
    suf_experiment,
)
from botsig.pdprg import PdPrgSpec
from botsig.signatures import OneMessageSigScheme
from botsig.signatures.build import make_oms_params
from botsig.tape import RandomTape

MASTER = bytes.fromhex("10203040506070801020304050607080")


def honest_prg(mu=0.02, nu=0.05, vote_reps=256, fanin=2):
    base = PdPrgSpec(key_len=16, out_len=48, mu=mu, nu=nu, master_seed=MASTER)
    return XorPrgAdapter(BotPrgSpec(base=base, vote_reps=vote_reps, fanin=fanin))


def honest_prf(mu=0.0, nu=0.0, input_len=8):
    base = PdPrgSpec(key_len=32, out_len=128, mu=mu, nu=nu, master_seed=MASTER)
    return TreePrfAdapter(
        TreePrfSpec(
            prg=BotPrgSpec(base=base, vote_reps=256, fanin=2),
            input_len=input_len,
        )
    )


def oms_scheme(mu=0.0, q=16):
    return OneMessageSigScheme(make_oms_params(16, 16, q, mu, MASTER))


class TestEstimators:
    def test_constant_bits_rate_zero(self):
        r = estimate_bot_rate(
            lambda k, t: Bits.zeros(8), lambda t: t.bits(4), 200, RandomTape(150)
        )
        assert r.rate == 0.0

    def test_constant_bot_rate_one(self):
        r = estimate_bot_rate(
            lambda k, t: BOT, lambda t: t.bits(4), 200, RandomTape(151)
        )
        assert r.rate == 1.0

    def test_known_rate_recovered(self):
        r = estimate_bot_rate(
            lambda k, t: BOT if t.coin(0.125) else Bits.zeros(4),
            lambda t: t.bits(4),
            20_000,
            RandomTape(152),
        )
        assert abs(r.rate - 0.125) <= 0.01

    def test_pseudodet_noiseless_clean(self):
        prg = honest_prg(mu=0.0, nu=0.0)
        tape = RandomTape(153)
        keys = [prg.sample_key(tape) for _ in range(20)]
        r = check_pseudodeterminism(prg.evaluate, keys, 50, tape)
        assert r.rate == 0.0 and r.verdict == "pass"

    def test_pseudodet_binary_backend_exact(self):
        prg = honest_prg(mu=0.05, nu=0.1, vote_reps=512)
        tape = RandomTape(154)
        keys = [prg.sample_key(tape) for _ in range(30)]
        r = check_pseudodeterminism(prg.evaluate, keys, 100, tape)
        assert r.rate == 0.0

    def test_pseudodet_flags_three_point_double(self):
        # Planted counterexample: a third value appears at 10%.
        def three_point(key, tape):
            u = tape.uniform()
            if u < 0.1:
                return Bits.from01("1111")
            if u < 0.2:
                return BOT
            return Bits.from01("0000")

        tape = RandomTape(155)
        r = check_pseudodeterminism(three_point, [tape.bits(4)], 500, tape)
        assert r.rate > 0.0 and r.verdict == "fail"

    def test_correctness_roundtrip(self):
        r = estimate_correctness(oms_scheme(), 100, RandomTape(156))
        assert r.rate == 1.0


class TestChernoffSampleSize:
    def test_worked_example(self):
        # full deviation, mean 1/2, 95%: n = ceil(2 ln 20 / 0.5) = 12
        assert chernoff_sample_size(1.0, 0.5, 0.95) == 12

    def test_zero_confidence_minimum(self):
        assert chernoff_sample_size(0.5, 0.5, 0.0) == 1

    def test_monotone_in_confidence(self):
        sizes = [
            chernoff_sample_size(0.5, 0.1, c) for c in (0.5, 0.9, 0.99, 0.999)
        ]
        assert sizes == sorted(sizes)

    def test_argument_validation(self):
        with pytest.raises(PreconditionViolated):
            chernoff_sample_size(0.0, 0.5, 0.9)
        with pytest.raises(PreconditionViolated):
            chernoff_sample_size(0.5, 1.0, 0.9)
        with pytest.raises(PreconditionViolated):
            chernoff_sample_size(0.5, 0.5, 1.0)


class TestMultitimeGame:
    def test_constant_guess_null(self):
        r = multitime_game(
            honest_prg(), 4, ConstantGuess(0), 2000, RandomTape(157)
        )
        assert r.rate <= r.ci_halfwidth  # interval contains zero

    def test_planted_constant_prg_detected(self):
        r = multitime_game(
            PlantedConstantPrg(out_len=48),
            4,
            FrequencyDistinguisher(),
            1000,
            RandomTape(158),
            threshold=0.4,
        )
        assert r.rate >= 0.4 and r.verdict == "pass"

    def test_honest_prg_frequency_null(self):
        r = multitime_game(
            honest_prg(), 4, FrequencyDistinguisher(), 5000, RandomTape(159)
        )
        assert r.rate <= 0.05

    def test_bot_pattern_parity_null(self):
        r = multitime_game(
            honest_prg(mu=0.2), 6, BotPatternParity(), 5000, RandomTape(160)
        )
        assert r.rate <= r.ci_halfwidth

    def test_world1_abort_pattern_preserved(self):
        # Masked transcripts must abort exactly where the underlying
        # evaluations do, and show one constant value elsewhere.
        _, transcripts = multitime_game(
            honest_prg(mu=0.3, nu=0.1),
            6,
            ConstantGuess(0),
            300,
            RandomTape(161),
            record=True,
        )
        saw_world1_with_bots = False
        for world, evals, shown in transcripts:
            assert [e is BOT for e in evals] == [s is BOT for s in shown]
            if world == 1:
                values = {s for s in shown if s is not BOT}
                assert len(values) <= 1
                if values != set():
                    saw_world1_with_bots = True
        assert saw_world1_with_bots


class TestPrfGame:
    def test_constant_guess_null(self):
        from botsig.harness import PrfConstantGuess

        r = prf_game(honest_prf(), PrfConstantGuess(0), 4, 1000, RandomTape(162))
        assert r.rate <= r.ci_halfwidth

    def test_repeat_probe_null_on_honest(self):
        r = prf_game(honest_prf(), RepeatQueryProbe(), 4, 2000, RandomTape(163))
        assert r.rate <= 0.05

    def test_repeat_probe_flags_noncaching_stub(self):
        r = prf_game(
            honest_prf(),
            RepeatQueryProbe(),
            4,
            500,
            RandomTape(164),
            world1_cache=False,
            threshold=0.9,
        )
        assert r.rate >= 0.9 and r.verdict == "pass"

    def test_world1_oracle_consistent(self):
        _, logs = prf_game(
            honest_prf(), RepeatQueryProbe(), 4, 300, RandomTape(165), record=True
        )
        for world, log in logs:
            values = {}
            for x, v in log:
                if v is BOT:
                    continue
                assert values.setdefault(x, v) == v

    def test_budget_enforced(self):
        class Greedy:
            def run(self, oracle, prf, tape):
                for _ in range(10):
                    oracle(tape.bits(prf.input_len))
                return 0

        from botsig.harness import BudgetExceeded

        # the game treats a budget violation as an exception from the
        # distinguisher, which propagates
        with pytest.raises(BudgetExceeded):
            prf_game(honest_prf(), Greedy(), 4, 5, RandomTape(166))


class TestForgeryGames:
    def test_replay_loses(self):
        result = om_suf_experiment(oms_scheme(), ReplayForger(), RandomTape(167))
        assert result == "Lose"

    def test_two_messages_lose_om_but_not_suf_clause(self):
        # In the one-message game the two-message adversary is disqualified;
        # in the unrestricted game it still loses because the pair is logged.
        assert om_suf_experiment(oms_scheme(), TwoMessageForger(), RandomTape(168)) == "Lose"
        assert suf_experiment(oms_scheme(), TwoMessageForger(), RandomTape(169)) == "Lose"

    def test_random_forger_never_wins(self):
        r = forgery_game(
            oms_scheme(), RandomForger, 1000, RandomTape(170),
            same_message_required=True,
        )
        assert r.successes == 0

    def test_key_leak_always_wins(self):
        r = forgery_game(
            oms_scheme(), KeyLeakForger, 200, RandomTape(171),
            same_message_required=False, leak_sk=True,
        )
        assert r.rate == 1.0

    def test_key_leak_without_leak_loses(self):
        result = suf_experiment(oms_scheme(), KeyLeakForger(), RandomTape(172))
        assert result == "Lose"

    def test_crashing_adversary_loses(self):
        class Crasher:
            def run(self, vk, oracle, scheme, tape, sk=None):
                raise RuntimeError("boom")

        assert suf_experiment(oms_scheme(), Crasher(), RandomTape(173)) == "Lose"


class TestReportPlumbing:
    def test_reports_reproducible(self):
        def run():
            return estimate_bot_rate(
                lambda k, t: BOT if t.coin(0.2) else Bits.zeros(4),
                lambda t: t.bits(4),
                500,
                RandomTape(174),
            ).to_json_line()

        assert run() == run()

    def test_json_line_fields(self):
        import json

        r = estimate_correctness(oms_scheme(), 50, RandomTape(175))
        doc = json.loads(r.to_json_line())
        assert {"name", "trials", "successes", "rate", "ci_halfwidth", "verdict"} <= set(doc)

    def test_summary_row_renders(self):
        r = estimate_correctness(oms_scheme(), 50, RandomTape(176))
        assert "correctness" in r.summary_row()
