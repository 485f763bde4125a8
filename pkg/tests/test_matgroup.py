import random

import pytest

from rfcert.groupfile import GroupFileError, format_group_file, load_bundled, parse_group_file
from rfcert.matgroup import (
    InvariantViolation,
    check_coeff_bound,
    check_degree_bound,
    clear_entry,
    evaluate_word,
    generator_constants,
    is_identity_word,
    mat_is_identity,
    phi_product,
)
from rfcert.ring import parse_poly


@pytest.fixture(scope="module")
def sanov():
    return load_bundled("sanov")


@pytest.fixture(scope="module")
def poly():
    return load_bundled("poly")


def ints(mat):
    return [[int(str(x)) for x in row] for row in mat]


class TestGroupFile:
    def test_sanov_shape(self, sanov):
        assert sanov.dim == 2 and sanov.nvars == 0
        assert sanov.names == ["A", "B"] and sanov.inverse_names == ["Ainv", "Binv"]
        assert len(sanov.all_matrices()) == 4

    def test_bad_inverse(self):
        text = "ring char=0 vars=0 denoms=[]\ndim 2\ngen A = [[1,2],[0,1]] inv Ai = [[1,2],[0,1]]\n"
        with pytest.raises(GroupFileError):
            parse_group_file(text)

    def test_undeclared_denominator(self):
        text = "ring char=0 vars=1 denoms=[T1]\ndim 2\ngen A = [[1,1/(T1+1)],[0,1]] inv Ai = [[1,-1/(T1+1)],[0,1]]\n"
        with pytest.raises(GroupFileError) as ei:
            parse_group_file(text)
        assert ei.value.line == 3

    def test_implicit_inverse_for_unimodular(self):
        text = "ring char=0 vars=0 denoms=[]\ndim 2\ngen A = [[2,1],[1,1]]\n"
        spec = parse_group_file(text)
        assert spec.inverse_names == ["Ainv"]
        assert mat_is_identity(evaluate_word(spec, spec.parse_word("A Ainv")))

    def test_implicit_inverse_requires_unit(self):
        text = "ring char=0 vars=0 denoms=[]\ndim 2\ngen A = [[2,0],[0,1]]\n"
        with pytest.raises(GroupFileError):
            parse_group_file(text)

    def test_unknown_directive(self):
        with pytest.raises(GroupFileError) as ei:
            parse_group_file("ring char=0 vars=0 denoms=[]\nfoo 2\n")
        assert ei.value.line == 2

    @pytest.mark.parametrize("name", ["sanov", "poly", "localized", "charp"])
    def test_format_roundtrip(self, name):
        spec = load_bundled(name)
        again = parse_group_file(format_group_file(spec))
        assert again.names == spec.names
        for a, b in zip(again.all_matrices(), spec.all_matrices()):
            assert all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


class TestEvaluation:
    def test_empty_word(self, sanov):
        assert mat_is_identity(evaluate_word(sanov, ()))

    def test_product(self, sanov):
        assert ints(evaluate_word(sanov, sanov.parse_word("A B"))) == [[5, 2], [2, 1]]

    def test_inverse_cancels(self, sanov):
        assert is_identity_word(sanov, sanov.parse_word("A A^-1"))
        assert is_identity_word(sanov, sanov.parse_word("B Ainv A Binv"))

    def test_free_words_nontrivial(self, sanov):
        rng = random.Random(1)
        for _ in range(30):
            w = sanov.random_word(rng.randint(1, 8), rng)
            assert not is_identity_word(sanov, w)


class TestPhiAndConstants:
    def test_sanov(self, sanov):
        c = generator_constants(sanov)
        assert (c.K, c.C) == (0, 2)
        assert phi_product(sanov) == parse_poly("1", 0)

    def test_single_denominator(self):
        text = "ring char=0 vars=1 denoms=[T1]\ndim 2\ngen A = [[1,1/T1],[0,1]] inv Ai = [[1,-1/T1],[0,1]]\n"
        assert phi_product(parse_group_file(text)) == parse_poly("T1^2", 1)

    def test_two_denominators(self):
        text2 = ("ring char=0 vars=1 denoms=[T1, T1+1]\ndim 1\n"
                 "gen A = [[T1/(T1+1)]] inv Ai = [[(T1+1)/T1]]\n")
        assert phi_product(parse_group_file(text2)) == parse_poly("T1*(T1+1)", 1)

    def test_polynomial_generator(self, poly):
        c = generator_constants(poly)
        assert (c.K, c.C) == (1, 2)

    def test_identity_only(self):
        spec = parse_group_file("ring char=0 vars=0 denoms=[]\ndim 2\ngen I = [[1,0],[0,1]]\n")
        c = generator_constants(spec)
        assert (c.K, c.C) == (0, 1)

    def test_localized_constants(self):
        c = generator_constants(load_bundled("localized"))
        assert c.phi == parse_poly("T1^2", 1)
        assert (c.K, c.C) == (3, 2)

    def test_clear_entry_violation(self):
        spec = load_bundled("localized")
        x = spec.matrices[1][1][0]  # 2/T1
        with pytest.raises(InvariantViolation):
            clear_entry(spec, x, 0)


class TestBounds:
    def test_power_degree(self, poly):
        r = check_degree_bound(poly, poly.parse_word("A^5"))
        assert r.holds and r.max_deg == 1 and r.bound == 5

    def test_sanov_degree(self, sanov):
        r = check_degree_bound(sanov, sanov.parse_word("A B A"))
        assert r.holds and r.max_deg == 0 and r.bound == 0

    def test_mixed_word(self, poly):
        assert check_degree_bound(poly, poly.parse_word("A B^-1 A")).holds

    def test_square_coefficients(self, poly):
        r = check_coeff_bound(poly, poly.parse_word("A A"))
        assert r.holds and r.max_abs == 4 and r.bound == 128

    def test_sanov_coefficients(self, sanov):
        r = check_coeff_bound(sanov, sanov.parse_word("A B"))
        assert r.holds and r.max_abs == 5 and r.bound == 128

    def test_length_one(self, poly):
        c = generator_constants(poly)
        r = check_coeff_bound(poly, poly.parse_word("B"))
        assert r.holds and r.max_abs <= c.C <= r.bound

    def test_char_p_has_no_magnitudes(self):
        spec = load_bundled("charp")
        with pytest.raises(ValueError):
            check_coeff_bound(spec, spec.parse_word("A"))
        assert check_degree_bound(spec, spec.parse_word("A B A")).holds
