import pytest

from botsig.bits import BOT
from botsig.errors import InvalidLength, PreconditionViolated
from botsig.pke import MockBasePke, agree_first, rep_decrypt, rep_encrypt
from botsig.tape import RandomTape

MASTER = bytes.fromhex("deadbeefdeadbeefdeadbeefdeadbeef")


def base(delta=0.0):
    return MockBasePke(key_len=32, delta=delta, master_seed=MASTER)


class TestMockBase:
    def test_roundtrip_when_no_abort(self):
        b = base()
        tape = RandomTape(130)
        for bit in (0, 1):
            key = b.keygen(tape)
            ct = b.encrypt(key, bit, tape)
            assert b.decrypt(key, ct, tape) == bit

    def test_abort_rate(self):
        b = base(delta=0.3)
        tape = RandomTape(131)
        key = b.keygen(tape)
        ct = b.encrypt(key, 1, tape)
        bots = sum(b.decrypt(key, ct, tape) is BOT for _ in range(10_000))
        assert abs(bots / 10_000 - 0.3) <= 0.015

    def test_delta_range(self):
        with pytest.raises(PreconditionViolated):
            MockBasePke(key_len=32, delta=1.0, master_seed=MASTER)

    def test_wrong_key_garbles(self):
        b = base()
        tape = RandomTape(132)
        k1, k2 = b.keygen(tape), b.keygen(tape)
        flips = sum(
            b.decrypt(k2, b.encrypt(k1, 0, tape), tape) == 1 for _ in range(200)
        )
        assert 50 <= flips <= 150  # pad bits under the wrong key look random


class TestAgreementRule:
    def test_all_agree(self):
        assert agree_first([1, 1, 1]) == 1

    def test_single_survivor_decides(self):
        assert agree_first([BOT, BOT, 0, BOT]) == 0

    def test_disagreement_aborts(self):
        assert agree_first([0, 1, BOT]) is BOT

    def test_all_abort(self):
        assert agree_first([BOT, BOT]) is BOT

    def test_min_index_selected(self):
        assert agree_first([BOT, 1, 1]) == 1
        assert agree_first([0, BOT, 0]) == 0


class TestRepetition:
    def test_single_component(self):
        b = base()
        tape = RandomTape(133)
        keys = [b.keygen(tape)]
        cts = rep_encrypt(b, keys, 1, tape)
        assert len(cts) == 1
        assert rep_decrypt(b, keys, cts, tape) == 1

    def test_reproducible(self):
        b = base(delta=0.2)
        keys = [b.keygen(RandomTape(134)) for _ in range(4)]
        c1 = rep_encrypt(b, keys, 0, RandomTape(135))
        c2 = rep_encrypt(b, keys, 0, RandomTape(135))
        assert c1 == c2

    def test_all_agree(self):
        b = base()
        tape = RandomTape(136)
        keys = [b.keygen(tape) for _ in range(8)]
        cts = rep_encrypt(b, keys, 1, tape)
        assert rep_decrypt(b, keys, cts, tape) == 1

    def test_min_index_survivor(self):
        # All but one component abort; the survivor's bit decides.
        b = base(delta=0.95)
        tape = RandomTape(137)
        keys = [b.keygen(tape) for _ in range(4)]
        cts = rep_encrypt(b, keys, 0, tape)
        seen = set()
        for _ in range(500):
            seen.add(rep_decrypt(b, keys, cts, tape))
        assert seen <= {0, BOT}

    def test_disagreement_aborts(self):
        # Plant a flipped component next to a correct one: never a wrong bit.
        b = base(delta=0.0)
        tape = RandomTape(138)
        keys = [b.keygen(tape) for _ in range(3)]
        cts = rep_encrypt(b, keys, 0, tape)
        nonce, masked = cts[1]
        cts[1] = (nonce, masked ^ 1)
        for _ in range(100):
            assert rep_decrypt(b, keys, cts, tape) is BOT

    def test_arity_checked(self):
        b = base()
        tape = RandomTape(139)
        keys = [b.keygen(tape) for _ in range(3)]
        cts = rep_encrypt(b, keys, 0, tape)
        with pytest.raises(InvalidLength):
            rep_decrypt(b, keys[:2], cts, tape)

    def test_lifted_failure_rate(self):
        # delta=0.3, q=64: analytic residual error 0.3^64 ~ 3e-34.
        b = base(delta=0.3)
        tape = RandomTape(140)
        keys = [b.keygen(tape) for _ in range(64)]
        failures = 0
        for i in range(2_000):
            bit = i & 1
            cts = rep_encrypt(b, keys, bit, tape)
            if rep_decrypt(b, keys, cts, tape) != bit:
                failures += 1
        assert failures == 0
