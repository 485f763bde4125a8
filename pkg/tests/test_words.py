import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rfcert.words import (
    EMPTY,
    FreeGroup,
    WordParseError,
    all_words_up_to,
    commutator,
    conjugate,
    format_word,
    free_reduce,
    inverse,
    is_reduced,
    power,
    random_reduced_word,
    reduced_words_of_length,
    reduced_words_up_to,
    shortlex_key,
)

X, XI, Y, YI = (0, 1), (0, -1), (1, 1), (1, -1)
letters = st.sampled_from([X, XI, Y, YI, (2, 1), (2, -1)])
words = st.lists(letters, max_size=12).map(tuple)


def test_free_reduce_cancels():
    assert free_reduce((X, Y, YI, XI, Y)) == (Y,)
    assert free_reduce((X, XI)) == EMPTY


def test_commutator_convention():
    # [u, v] = u^-1 v^-1 u v
    assert commutator((X,), (Y,)) == (XI, YI, X, Y)
    assert conjugate((Y,), (X,)) == (Y, X, YI)


def test_power():
    assert power((X, Y), 2) == (X, Y, X, Y)
    assert free_reduce(power((X, Y), -1)) == (YI, XI)
    assert power((X,), 0) == EMPTY


@given(words)
def test_reduce_idempotent(w):
    r = free_reduce(w)
    assert is_reduced(r)
    assert free_reduce(r) == r


@given(words, words)
def test_inverse_cancels(u, v):
    assert free_reduce(u + inverse(u)) == EMPTY
    assert free_reduce(inverse(u + v)) == free_reduce(inverse(v) + inverse(u))


def test_counts():
    assert sum(1 for _ in reduced_words_of_length(2, 3)) == 4 * 3 * 3
    assert sum(1 for _ in reduced_words_up_to(2, 2)) == 4 + 12
    assert sum(1 for _ in all_words_up_to(2, 2)) == 1 + 4 + 16


def test_shortlex_order():
    ws = list(reduced_words_up_to(2, 2, include_empty=True))
    assert ws == sorted(ws, key=shortlex_key)
    assert ws[:5] == [EMPTY, (X,), (XI,), (Y,), (YI,)]


def test_random_words_are_reduced():
    rng = random.Random(3)
    for n in range(10):
        w = random_reduced_word(2, n, rng)
        assert len(w) == n and is_reduced(w)


class TestParsing:
    F = FreeGroup(2)

    def test_basic(self):
        assert self.F.parse("x y^-1") == (X, YI)
        assert self.F.parse("xy") == (X, Y)
        assert self.F.parse("x^3") == (X, X, X)
        assert self.F.parse("1") == EMPTY

    def test_commutator_and_groups(self):
        assert self.F.parse("[x,y]") == (XI, YI, X, Y)
        assert self.F.parse("(x y)^-1") == (YI, XI)

    def test_format_roundtrip(self):
        w = (X, X, YI, X, Y, Y, Y)
        assert self.F.parse(self.F.format(w)) == w
        assert format_word(EMPTY, ["x", "y"]) == "1"

    @pytest.mark.parametrize("bad", ["z", "x^", "[x y]", "(x", "x^-"])
    def test_errors(self, bad):
        with pytest.raises(WordParseError):
            self.F.parse(bad)

    def test_named_generators(self):
        F = FreeGroup(4)
        assert F.names == ["x1", "x2", "x3", "x4"]
        assert F.parse("x1 x4^-1") == ((0, 1), (3, -1))

    def test_identity(self):
        assert self.F.is_identity(self.F.parse("x y y^-1 x^-1"))
        assert not self.F.is_identity(self.F.parse("[x,y]"))
