import random
from math import log

import pytest

from rfcert.finite_groups import symmetric_group
from rfcert.lietype import (
    TITS_EXCEPTIONS,
    FrobeniusSemidirect,
    LieTypeId,
    WreathRep,
    extension_bound_from_dimension,
    extension_bounded,
    frobenius_semidirect_rep,
    is_tits_exception,
    lie_info,
    lie_order,
    m1_bruteforce,
    m1_power,
    parse_lie_id,
    product_aut_rep,
    psl_permutation_group,
    rank_ratio,
    sl_rep,
)


def A(n, q):
    return LieTypeId("A", n, q)


@pytest.mark.parametrize("lid,order", [(A(1, 4), 60), (A(1, 7), 168), (A(1, 5), 60), (A(2, 2), 168), (A(1, 9), 360)])
def test_orders(lid, order):
    assert lie_order(lid) == order


def test_exceptional_orders():
    assert lie_order(LieTypeId("G2", 2, 3)) == 4245696
    assert lie_order(LieTypeId("2B2", 2, 8)) == 29120


def test_parse():
    assert parse_lie_id("A1", 7) == A(1, 7)
    assert parse_lie_id("A1(7)") == A(1, 7)
    assert parse_lie_id("2B2(8)").family == "2B2"
    with pytest.raises(ValueError):
        parse_lie_id("A1")
    with pytest.raises(ValueError):
        A(1, 6)
    with pytest.raises(ValueError):
        LieTypeId("2B2", 2, 4)


def test_tits():
    assert len(TITS_EXCEPTIONS) == 8
    assert is_tits_exception("SL_2(2)") and is_tits_exception("Sp_4(2)")
    assert not is_tits_exception("SL_2(4)")
    assert is_tits_exception(A(1, 3)) and not is_tits_exception(A(1, 5))


def test_extension_degree():
    assert extension_bounded([A(1, 2), A(1, 3), A(1, 5)], 1)
    assert not extension_bounded([A(1, 4)], 1)
    assert extension_bounded([], 1)
    assert [extension_bound_from_dimension(n) for n in (1, 2, 4)] == [0, 1, 6]


def test_info():
    info = lie_info(A(1, 8))
    assert info["characteristic"] == 2 and info["extension_degree"] == 3 and not info["tits_exception"]


class TestFrobenius:
    def test_degree_one_unchanged(self):
        rep = sl_rep(2, 5)
        assert frobenius_semidirect_rep(rep) is rep

    def test_pure_frobenius_block(self):
        fs = FrobeniusSemidirect(sl_rep(2, 4))
        ident = fs.rep.identity()
        P = fs.embed(ident, 1)
        assert P == fs.P
        assert fs.big.matmul(P, P) == fs.big.identity(4)

    def test_sampled_homomorphism(self):
        fs = FrobeniusSemidirect(sl_rep(2, 8))
        els = fs.elements()
        rng = random.Random(0)
        for _ in range(40):
            a, b = rng.choice(els), rng.choice(els)
            lhs = fs.embed(*fs.pair_mul(a, b))
            rhs = fs.big.matmul(fs.embed(*a), fs.embed(*b))
            assert lhs == rhs

    def test_as_rep_dimension(self):
        rep = frobenius_semidirect_rep(sl_rep(2, 4))
        assert rep.dim == 4 and rep.field.order == 2
        assert rep.group().order == 120


class TestWreath:
    def test_multiplicity_one(self):
        rep = sl_rep(2, 3)
        assert product_aut_rep(rep, 1) is rep

    def test_dimension_and_swap(self):
        rep = product_aut_rep(sl_rep(2, 2), 2)
        assert rep.dim == 4
        swap = rep.gens[-1]
        assert swap[0][2] == 1 and swap[2][0] == 1

    def test_homomorphism_samples(self):
        base = sl_rep(2, 2)
        W = WreathRep(base, 2)
        H = base.group().elements
        rng = random.Random(2)
        perms = [(0, 1), (1, 0)]
        for _ in range(30):
            a = ((rng.choice(H), rng.choice(H)), rng.choice(perms))
            b = ((rng.choice(H), rng.choice(H)), rng.choice(perms))
            F = base.field
            assert W.embed(*W.pair_mul(a, b)) == F.matmul(W.embed(*a), W.embed(*b))


class TestM1:
    def test_sl22(self):
        assert m1_bruteforce(sl_rep(2, 2)) == 3

    def test_psl25(self):
        assert m1_bruteforce(psl_permutation_group(2, 5)) == 5

    def test_trivial(self):
        assert m1_bruteforce(symmetric_group(1)) == 1

    def test_power(self):
        assert m1_power({1, 2, 3, 5}, 2) == 15
        assert m1_power({1, 2, 3, 5}, 1) == 5

    def test_rank_ratio(self):
        r = rank_ratio(A(1, 4))
        assert r.m1 == 5 and r.ratio == pytest.approx(log(60) / log(5))
        r2 = rank_ratio(A(1, 4), 2)
        assert r2.m1 == 15 and r2.ratio == pytest.approx(log(3600) / log(15))
        assert r2.m1 <= r.m1**2
