from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from botsig.bits import BOT, Bits
from botsig.combinators import (
    FiniteOutputDistribution,
    bot_xor,
    is_bot,
    set_division,
    vote,
    vote_threshold,
)
from botsig.errors import EmptyInput, InvalidLength, PreconditionViolated


def b(s):
    return Bits.from01(s)


class TestIsBot:
    def test_abort_absorbs(self):
        assert is_bot(BOT, b("1100")) is BOT

    def test_returns_replacement(self):
        assert is_bot(b("0101"), b("1100")) == b("1100")

    def test_identity_case(self):
        assert is_bot(b("1111"), b("1111")) == b("1111")

    def test_length_mismatch(self):
        with pytest.raises(InvalidLength):
            is_bot(b("0101"), b("110"))


class TestBotXor:
    def test_single_element_identity(self):
        assert bot_xor([b("1010")]) == b("1010")

    def test_bitwise(self):
        assert bot_xor([b("1010"), b("0110")]) == b("1100")

    def test_abort_absorbs(self):
        assert bot_xor([b("1010"), BOT, b("0001")]) is BOT

    def test_empty(self):
        with pytest.raises(EmptyInput):
            bot_xor([])

    def test_mixed_lengths(self):
        with pytest.raises(InvalidLength):
            bot_xor([b("10"), b("100")])

    @given(st.lists(st.text(alphabet="01", min_size=4, max_size=4), min_size=1, max_size=8))
    def test_absorption_property(self, strs):
        vals = [b(s) for s in strs]
        assert bot_xor(vals) is not BOT
        assert bot_xor(vals + [BOT]) is BOT

    @given(st.text(alphabet="01", min_size=1, max_size=32))
    def test_self_inverse(self, s):
        assert bot_xor([b(s), b(s)]) == Bits.zeros(len(s))


class TestVote:
    def test_unanimity(self):
        assert vote([b("101")] * 10) == b("101")

    def test_split_five_five(self):
        assert vote([b("1")] * 5 + [b("0")] * 5) is BOT

    def test_six_of_ten_accepts(self):
        assert vote([b("1")] * 6 + [b("0")] * 4) == b("1")

    def test_mixed_lengths(self):
        with pytest.raises(InvalidLength):
            vote([b("1"), b("10")])

    def test_empty(self):
        with pytest.raises(EmptyInput):
            vote([])

    def test_threshold_values(self):
        assert vote_threshold(10) == 6
        assert vote_threshold(64) == 39
        assert vote_threshold(256) == 154
        assert vote_threshold(5) == 3
        assert vote_threshold(1) == 1

    def test_uniqueness_brute_force(self):
        # At most one candidate can clear 60% in any binary sample list.
        for n in range(1, 7):
            thr = vote_threshold(n)
            for combo in product("01", repeat=n):
                ones = combo.count("1")
                winners = sum(1 for c in (ones, n - ones) if c >= thr)
                assert winners <= 1
                result = vote([b(c) for c in combo])
                if ones >= thr:
                    assert result == b("1")
                elif n - ones >= thr:
                    assert result == b("0")
                else:
                    assert result is BOT


def dist(pairs):
    width = max(1, (len(pairs) - 1).bit_length())
    return FiniteOutputDistribution.from_pairs(
        [(Bits(width, i), m) for i, m in enumerate(pairs)]
    )


class TestSetDivision:
    def test_four_quarters(self):
        s1, s2, s3 = set_division(dist([0.25, 0.25, 0.25, 0.25]))
        assert [v.value for v in s1] == [0, 1]
        assert [v.value for v in s2] == [2, 3]
        assert s3 == ()

    def test_two_heavy_one_light(self):
        # Greedy trace: a opens S1 (0.49); b does not fit (0.98 > 0.5) and
        # opens S2; c does not fit either (0.49 + 0.02 > 0.5) and opens S3.
        s1, s2, s3 = set_division(dist([0.49, 0.49, 0.02]))
        assert [v.value for v in s1] == [0]
        assert [v.value for v in s2] == [1]
        assert [v.value for v in s3] == [2]

    def test_two_heavy_one_fitting(self):
        # c still fits into the current set S2 (0.49 + 0.01 = 0.5), d does not.
        s1, s2, s3 = set_division(dist([0.49, 0.49, 0.01, 0.01]))
        assert [v.value for v in s1] == [0]
        assert [v.value for v in s2] == [1, 2]
        assert [v.value for v in s3] == [3]

    def test_three_sets_needed(self):
        s1, s2, s3 = set_division(dist([0.4, 0.4, 0.2]))
        assert [v.value for v in s1] == [0]
        assert [v.value for v in s2] == [1]
        assert [v.value for v in s3] == [2]

    def test_point_mass_at_half_rejected(self):
        with pytest.raises(PreconditionViolated):
            set_division(dist([0.5, 0.5]))

    def test_random_distributions_partition(self):
        rng = np.random.Generator(np.random.PCG64(2024))
        for _ in range(1000):
            k = int(rng.integers(3, 20))
            while True:
                masses = rng.random(k)
                masses /= masses.sum()
                if masses.max() < 0.5:
                    break
            d = dist(list(masses))
            parts = set_division(d)
            got = [v.value for part in parts for v in part]
            assert sorted(got) == list(range(k))
            assert len(set(got)) == k
            by_value = {v.value: m for v, m in d.entries}
            for part in parts:
                assert sum(by_value[v.value] for v in part) <= 0.5 + 1e-9


class TestDistributionValidation:
    def test_mass_sum_checked(self):
        with pytest.raises(PreconditionViolated):
            FiniteOutputDistribution.from_pairs([(b("0"), 0.6), (b("1"), 0.6)])

    def test_duplicates_forbidden(self):
        with pytest.raises(PreconditionViolated):
            FiniteOutputDistribution.from_pairs([(b("0"), 0.5), (b("0"), 0.5)])

    def test_negative_mass(self):
        with pytest.raises(PreconditionViolated):
            FiniteOutputDistribution.from_pairs([(b("0"), 1.2), (b("1"), -0.2)])
