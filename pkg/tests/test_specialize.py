import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rfcert.groupfile import load_bundled, parse_group_file
from rfcert.ring import FiniteField, MultiPoly, UniPoly, parse_poly
from rfcert.specialize import (
    DenominatorCollapse,
    choose_irreducible,
    choose_prime,
    reduce_to_one_variable,
    specialize_group_char0,
    specialize_group_charp,
)


def U(c, p=0):
    return UniPoly(c, p)


class TestReduction:
    def test_two_variables(self):
        r = reduce_to_one_variable(parse_poly("T1 - T2", 2))
        assert r.n_vec == (16, 1)
        assert not r.g.is_zero()
        assert all(0 <= n <= r.box for n in r.n_vec)

    def test_constant(self):
        r = reduce_to_one_variable(parse_poly("5", 3))
        assert r.n_vec == (0, 0, 0) and r.g == U([5])

    def test_mod_two(self):
        r = reduce_to_one_variable(parse_poly("T1 + T2", 2, 2))
        assert r.n_vec != (1, 1) and not r.g.is_zero()

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            reduce_to_one_variable(MultiPoly.zero(2))

    @settings(max_examples=80, deadline=None)
    @given(
        st.integers(1, 3),
        st.sampled_from([0, 2, 3, 5]),
        st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
                        st.integers(-4, 4), min_size=1, max_size=5),
    )
    def test_nonvanishing_property(self, s, p, terms):
        f = MultiPoly(s, {e[:s]: c for e, c in terms.items()}, p)
        if f.is_zero():
            return
        r = reduce_to_one_variable(f)
        assert not r.g.is_zero()
        assert all(0 <= n <= max(f.degree(), 2) ** (2 * s) for n in r.n_vec)


class TestChoosePrime:
    def test_needs_shift(self):
        c = choose_prime(U([0, -1, 1]))
        assert (c.m, c.value, c.p) == (2, 2, 3)

    def test_tau(self):
        c = choose_prime(U([0, 1]))
        assert (c.m, c.value, c.p) == (1, 1, 2)

    def test_constant(self):
        c = choose_prime(U([6]))
        assert (c.m, c.p) == (0, 5)

    def test_also_nonzero(self):
        # tau must not vanish either, so m = 0 is excluded
        c = choose_prime(U([1, 1]), [U([0, 1])])
        assert c.m >= 1 and (c.m + 1) * c.m % c.p != 0

    def test_char_p_rejected(self):
        with pytest.raises(ValueError):
            choose_prime(U([1, 1], 2))


class TestChooseIrreducible:
    def test_tau(self):
        assert choose_irreducible(U([0, 1], 2)).w == U([1, 1], 2)

    def test_all_small_divide(self):
        h = U([0, 1], 2) * U([1, 1], 2) * U([1, 1, 1], 2)
        c = choose_irreducible(h)
        assert c.w == U([1, 1, 0, 1], 2) and c.field_size == 8

    def test_unit(self):
        assert choose_irreducible(U([1], 3)).w == U([0, 1], 3)


class TestSpecialize:
    def test_sanov_mod_3(self):
        spec = load_bundled("sanov")
        sm = specialize_group_char0(spec, (), 0, 3)
        assert sm.generators[0] == ((1, 2), (0, 1))

    def test_polynomial_entry(self):
        spec = load_bundled("poly")
        sm = specialize_group_char0(spec, (1,), 2, 5)
        assert sm.generators[0][0][1] == 4

    def test_denominator_collapse(self):
        with pytest.raises(DenominatorCollapse):
            specialize_group_char0(load_bundled("localized"), (1,), 0, 5)

    def test_charp_linear(self):
        spec = load_bundled("charp")
        sm = specialize_group_charp(spec, (1,), U([1, 1], 2))
        assert sm.generators[0][0][0] == 1

    def test_charp_quadratic(self):
        text = "ring char=2 vars=1 denoms=[]\ndim 2\ngen A = [[1, T1^2],[0, 1]] inv Ai = [[1, T1^2],[0, 1]]\n"
        spec = parse_group_file(text)
        sm = specialize_group_charp(spec, (1,), U([1, 1, 1], 2))
        F = sm.field
        assert F.to_unipoly(sm.generators[0][0][1]) == U([1, 1], 2)

    def test_constant_matrices_unchanged(self):
        text = "ring char=3 vars=1 denoms=[]\ndim 2\ngen A = [[1, 1],[0, 1]]\n"
        spec = parse_group_file(text)
        for w in (U([0, 1], 3), U([1, 0, 1], 3)):
            sm = specialize_group_charp(spec, (1,), w)
            assert sm.generators[0] == ((1, 1), (0, 1))

    def test_image_is_homomorphic(self):
        spec = load_bundled("poly")
        sm = specialize_group_char0(spec, (1,), 3, 7)
        rng = random.Random(5)
        F = sm.field
        for _ in range(10):
            u, v = spec.random_word(4, rng), spec.random_word(3, rng)
            assert sm.image_word(u + v) == F.matmul(sm.image_word(u), sm.image_word(v))

    def test_wrong_field(self):
        with pytest.raises(ValueError):
            specialize_group_char0(load_bundled("sanov"), (), 0, 4)
        with pytest.raises(ValueError):
            specialize_group_charp(load_bundled("charp"), (1,), U([1, 1], 3))
        assert FiniteField(3).order == 3
