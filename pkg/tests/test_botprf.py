import math

import pytest

from botsig.bits import BOT, Bits
from botsig.botprf import TreePrfSpec, half_select, prf_bot_rate_bound, tree_prf_eval
from botsig.botprg import BotPrgSpec, xor_prg_eval
from botsig.errors import InvalidLength, PreconditionViolated
from botsig.pdprg import PdPrgSpec
from botsig.tape import RandomTape

MASTER = bytes.fromhex("5555aaaa5555aaaa5555aaaa5555aaaa")


def prf_spec(mu=0.0, nu=0.0, input_len=8, vote_reps=512, fanin=2, key_len=32):
    base = PdPrgSpec(
        key_len=key_len,
        out_len=2 * fanin * key_len,
        mu=mu,
        nu=nu,
        master_seed=MASTER,
    )
    return TreePrfSpec(
        prg=BotPrgSpec(base=base, vote_reps=vote_reps, fanin=fanin),
        input_len=input_len,
    )


class TestHalfSelect:
    def test_prefix(self):
        assert half_select(Bits.from01("10110100"), 0) == Bits.from01("1011")

    def test_suffix(self):
        assert half_select(Bits.from01("10110100"), 1) == Bits.from01("0100")

    def test_partition_identity(self):
        y = RandomTape(40).bits(64)
        assert half_select(y, 0).concat(half_select(y, 1)) == y

    def test_odd_length_rejected(self):
        with pytest.raises(InvalidLength):
            half_select(Bits.from01("101"), 0)


class TestSpec:
    def test_doubling_enforced(self):
        base = PdPrgSpec(key_len=32, out_len=100, mu=0, nu=0, master_seed=MASTER)
        with pytest.raises(PreconditionViolated):
            TreePrfSpec(prg=BotPrgSpec(base=base, vote_reps=4, fanin=2), input_len=4)

    def test_zero_length_inputs_rejected(self):
        with pytest.raises(PreconditionViolated):
            prf_spec(input_len=0)

    def test_json_roundtrip(self):
        s = prf_spec(mu=0.01, nu=0.05)
        assert TreePrfSpec.from_json(s.to_json()) == s


class TestEvaluation:
    def test_single_level_takes_half(self):
        # Noiseless one-level descent equals the selected half of the
        # deterministic generator output.
        spec = prf_spec(input_len=1)
        tape = RandomTape(41)
        key = tape.bits(spec.key_len)
        expanded = xor_prg_eval(spec.prg, key, tape)
        assert tree_prf_eval(spec, key, Bits.from01("0"), tape) == half_select(expanded, 0)
        assert tree_prf_eval(spec, key, Bits.from01("1"), tape) == half_select(expanded, 1)

    def test_noiseless_deterministic(self):
        spec = prf_spec(input_len=16)
        tape = RandomTape(42)
        key = tape.bits(spec.key_len)
        x = tape.bits(16)
        assert tree_prf_eval(spec, key, x, tape) == tree_prf_eval(spec, key, x, tape)

    def test_brute_force_oracle_m3(self):
        # Independent oracle: materialize all 8 leaves by explicit unrolling
        # of the generator, then compare every path.
        spec = prf_spec(input_len=3)
        tape = RandomTape(43)
        key = tape.bits(spec.key_len)

        def unroll(node, depth):
            if depth == 3:
                return {Bits(0, 0): node}
            expanded = xor_prg_eval(spec.prg, node, tape)
            left = unroll(half_select(expanded, 0), depth + 1)
            right = unroll(half_select(expanded, 1), depth + 1)
            leaves = {}
            for suffix, leaf in left.items():
                leaves[Bits(1, 0).concat(suffix)] = leaf
            for suffix, leaf in right.items():
                leaves[Bits(1, 1).concat(suffix)] = leaf
            return leaves

        leaves = unroll(key, 0)
        assert len(leaves) == 8
        for x, expected in leaves.items():
            assert tree_prf_eval(spec, key, x, tape) == expected

    def test_prefix_paths_share_intermediate_keys(self):
        spec = prf_spec(input_len=8)
        tape = RandomTape(44)
        key = tape.bits(spec.key_len)
        x1 = Bits.from01("10110010")
        x2 = Bits.from01("10111101")  # shares the first 4 bits
        t1, t2 = [], []
        tree_prf_eval(spec, key, x1, tape, trace=t1)
        tree_prf_eval(spec, key, x2, tape, trace=t2)
        assert t1[:4] == t2[:4]
        assert t1[4] != t2[4]

    def test_abort_propagates(self):
        # With mu high and deep descent, aborts must surface as BOT.
        spec = prf_spec(mu=0.05, nu=0.05, input_len=32)
        tape = RandomTape(45)
        results = {tree_prf_eval(spec, tape.bits(spec.key_len), tape.bits(32), tape)
                   for _ in range(50)}
        assert BOT in results

    def test_length_checks(self):
        spec = prf_spec(input_len=8)
        tape = RandomTape(46)
        with pytest.raises(InvalidLength):
            tree_prf_eval(spec, tape.bits(10), tape.bits(8), tape)
        with pytest.raises(InvalidLength):
            tree_prf_eval(spec, tape.bits(spec.key_len), tape.bits(9), tape)


class TestBotRateBound:
    def test_zero_levels(self):
        assert prf_bot_rate_bound(0, 0.1, 0.0) == 0.0

    def test_linear_value(self):
        assert prf_bot_rate_bound(32, 0.001, 0.0) == pytest.approx(0.032)

    def test_monotone(self):
        assert prf_bot_rate_bound(8, 0.01, 0.0) <= prf_bot_rate_bound(16, 0.01, 0.0)
        assert prf_bot_rate_bound(8, 0.01, 0.0) <= prf_bot_rate_bound(8, 0.02, 0.0)
        assert prf_bot_rate_bound(8, 0.01, 0.0) <= prf_bot_rate_bound(8, 0.01, 0.1)

    def test_negative_rejected(self):
        with pytest.raises(PreconditionViolated):
            prf_bot_rate_bound(-1, 0.1, 0.0)


class TestPointwiseBotRate:
    def test_empirical_rate_within_bound(self):
        # Per-level abort rate mu_eff is measured on the same backend, then
        # the m-level rate must respect the union bound m*mu_eff plus slack.
        for m in (4, 8, 16, 32):
            spec = prf_spec(mu=0.004, nu=0.05, input_len=m, vote_reps=512)
            tape = RandomTape(470 + m)

            level_trials = 4000
            level_bots = sum(
                xor_prg_eval(spec.prg, tape.bits(spec.key_len), tape) is BOT
                for _ in range(level_trials)
            )
            mu_eff = level_bots / level_trials

            trials = 1500 if m < 32 else 800
            bots = sum(
                tree_prf_eval(spec, tape.bits(spec.key_len), tape.bits(m), tape) is BOT
                for _ in range(trials)
            )
            rate = bots / trials
            bound = prf_bot_rate_bound(m, mu_eff, 0.0)
            slack = 3 * math.sqrt(max(bound, 1e-6) * (1 - min(bound, 0.5)) / trials) \
                + 3 * m * math.sqrt(mu_eff * (1 - mu_eff) / level_trials)
            assert rate <= bound + slack


class TestTwoPointSupport:
    def test_family_pseudodeterminism(self):
        # 100 random (key, x) pairs, 200 repeats each: all non-abort results
        # coincide exactly under the two-point backend.
        spec = prf_spec(mu=0.01, nu=0.05, input_len=8, vote_reps=512)
        tape = RandomTape(48)
        for _ in range(100):
            key = tape.bits(spec.key_len)
            x = tape.bits(8)
            non_bot = set()
            for _ in range(200):
                r = tree_prf_eval(spec, key, x, tape)
                if r is not BOT:
                    non_bot.add(r)
            assert len(non_bot) <= 1
