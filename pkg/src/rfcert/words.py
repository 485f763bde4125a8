"""Words over signed generator indices, free reduction and a small word parser.

A word is a tuple of letters ``(generator_index, sign)`` with sign +1 or -1.
The commutator convention throughout the package is ``[u, v] = u^-1 v^-1 u v``.
"""

from __future__ import annotations

import random
import re
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

Letter = tuple[int, int]
Word = tuple[Letter, ...]

EMPTY: Word = ()


class WordParseError(ValueError):
    def __init__(self, message: str, column: int | None = None):
        self.column = column
        super().__init__(f"column {column}: {message}" if column is not None else message)


def _check_letters(word: Iterable[Letter]) -> Word:
    out = tuple((int(g), int(s)) for g, s in word)
    for g, s in out:
        if g < 0 or s not in (1, -1):
            raise ValueError(f"invalid letter {(g, s)}")
    return out


def word(*letters: Letter) -> Word:
    return _check_letters(letters)


def inverse(w: Sequence[Letter]) -> Word:
    return tuple((g, -s) for g, s in reversed(w))


def free_reduce(w: Iterable[Letter]) -> Word:
    """Cancel adjacent ``g g^-1`` pairs until none remain (stack pass)."""
    stack: list[Letter] = []
    for g, s in w:
        if stack and stack[-1][0] == g and stack[-1][1] == -s:
            stack.pop()
        else:
            stack.append((g, s))
    return tuple(stack)


def is_reduced(w: Sequence[Letter]) -> bool:
    return all(not (a[0] == b[0] and a[1] == -b[1]) for a, b in zip(w, w[1:]))


def commutator(u: Sequence[Letter], v: Sequence[Letter]) -> Word:
    """``u^-1 v^-1 u v`` as a plain concatenation (no reduction)."""
    return inverse(u) + inverse(v) + tuple(u) + tuple(v)


def conjugate(k: Sequence[Letter], h: Sequence[Letter]) -> Word:
    """``k h k^-1``."""
    return tuple(k) + tuple(h) + inverse(k)


def power(w: Sequence[Letter], n: int) -> Word:
    base = tuple(w) if n >= 0 else inverse(w)
    return base * abs(n)


def length(w: Sequence[Letter]) -> int:
    return len(w)


def letter_rank(letter: Letter) -> int:
    """Shortlex position of a letter: x, x^-1, y, y^-1, ..."""
    g, s = letter
    return 2 * g + (0 if s == 1 else 1)


def shortlex_key(w: Sequence[Letter]) -> tuple[int, tuple[int, ...]]:
    return (len(w), tuple(letter_rank(a) for a in w))


def alphabet(rank: int) -> list[Letter]:
    return [(g, s) for g in range(rank) for s in (1, -1)]


def reduced_words_of_length(rank: int, n: int) -> Iterator[Word]:
    """All freely reduced words of length exactly n, in shortlex order."""
    letters = alphabet(rank)
    if n == 0:
        yield EMPTY
        return

    def extend(prefix: list[Letter]) -> Iterator[Word]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for a in letters:
            if prefix and prefix[-1][0] == a[0] and prefix[-1][1] == -a[1]:
                continue
            prefix.append(a)
            yield from extend(prefix)
            prefix.pop()

    yield from extend([])


def reduced_words_up_to(rank: int, n: int, include_empty: bool = False) -> Iterator[Word]:
    start = 0 if include_empty else 1
    for k in range(start, n + 1):
        yield from reduced_words_of_length(rank, k)


def all_words_up_to(rank: int, n: int) -> Iterator[Word]:
    """Every word (reduced or not) of length <= n, shortlex."""
    letters = alphabet(rank)
    for k in range(n + 1):
        for tup in product(letters, repeat=k):
            yield tup


def random_reduced_word(rank: int, n: int, rng: random.Random) -> Word:
    out: list[Letter] = []
    letters = alphabet(rank)
    while len(out) < n:
        a = rng.choice(letters)
        if out and out[-1][0] == a[0] and out[-1][1] == -a[1]:
            continue
        out.append(a)
    return tuple(out)


def default_names(rank: int) -> list[str]:
    if rank <= 3:
        return ["x", "y", "z"][:rank]
    return [f"x{i + 1}" for i in range(rank)]


def format_word(w: Sequence[Letter], names: Sequence[str]) -> str:
    """Space separated letters with ``^-1`` for inverses and ``^k`` for runs."""
    if not w:
        return "1"
    parts: list[str] = []
    i = 0
    while i < len(w):
        j = i
        while j + 1 < len(w) and w[j + 1] == w[i]:
            j += 1
        g, s = w[i]
        run = (j - i + 1) * s
        parts.append(names[g] if run == 1 else f"{names[g]}^{run}")
        i = j + 1
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\^\s*-?\s*\d+)|([\[\](),])|([A-Za-z_][A-Za-z_0-9]*)|(1)|(\S))")


def parse_word(text: str, names: Mapping[str, Letter] | Sequence[str]) -> Word:
    """Parse ``x y^-1 [x, y] (x y)^3`` style input.

    ``names`` maps generator names to letters; a plain sequence of names is
    read as generators 0, 1, ... with sign +1. Identifier tokens that are
    not names are split greedily into the longest known names, so ``xy``
    parses as ``x y`` when both are generators.
    """
    if not isinstance(names, Mapping):
        names = {n: (i, 1) for i, n in enumerate(names)}
    by_length = sorted(names, key=len, reverse=True)
    tokens: list[tuple[str, object, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        col = m.start(m.lastindex) + 1 if m.lastindex else pos + 1
        if m.group(1):
            tokens.append(("pow", int(m.group(1)[1:].replace(" ", "")), col))
        elif m.group(2):
            tokens.append((m.group(2), None, col))
        elif m.group(3):
            ident = m.group(3)
            k = 0
            while k < len(ident):
                hit = next((n for n in by_length if ident.startswith(n, k)), None)
                if hit is None:
                    raise WordParseError(f"unknown generator in {ident!r}", col + k)
                tokens.append(("gen", names[hit], col + k))
                k += len(hit)
        elif m.group(4):
            tokens.append(("one", None, col))
        elif m.group(5):
            raise WordParseError(f"unexpected character {m.group(5)!r}", col)
        pos = m.end()
    tokens.append(("end", None, len(text) + 1))
    i = 0

    def peek() -> tuple[str, object, int]:
        return tokens[i]

    def sequence(stops: tuple[str, ...]) -> Word:
        nonlocal i
        out: list[Letter] = []
        while peek()[0] not in stops:
            out.extend(factor())
        return tuple(out)

    def factor() -> Word:
        nonlocal i
        kind, val, col = tokens[i]
        i += 1
        if kind == "gen":
            base: Word = (val,)  # type: ignore[assignment]
        elif kind == "one":
            base = EMPTY
        elif kind == "(":
            base = sequence((")", "end"))
            if peek()[0] != ")":
                raise WordParseError("missing ')'", peek()[2])
            i += 1
        elif kind == "[":
            u = sequence((",", "]", "end"))
            if peek()[0] != ",":
                raise WordParseError("commutator needs two entries separated by ','", peek()[2])
            i += 1
            v = sequence(("]", ",", "end"))
            if peek()[0] != "]":
                raise WordParseError("missing ']'", peek()[2])
            i += 1
            base = commutator(u, v)
        elif kind == "pow":
            raise WordParseError("exponent without a base", col)
        else:
            raise WordParseError(f"unexpected {kind!r}", col)
        while peek()[0] == "pow":
            base = power(base, tokens[i][1])  # type: ignore[arg-type]
            i += 1
        return base

    result = sequence(("end",))
    return result


class FreeGroup:
    """The free group on ``rank`` generators; identity is decided by free reduction."""

    def __init__(self, rank: int, names: Sequence[str] | None = None):
        if rank < 1:
            raise ValueError("rank must be at least 1")
        self.rank = rank
        self.names = list(names) if names is not None else default_names(rank)
        if len(self.names) != rank or len(set(self.names)) != rank:
            raise ValueError("need one distinct name per generator")

    def __repr__(self) -> str:
        return f"FreeGroup({self.rank})"

    def is_identity(self, w: Sequence[Letter]) -> bool:
        return not free_reduce(w)

    def reduce(self, w: Sequence[Letter]) -> Word:
        return free_reduce(w)

    def parse(self, text: str) -> Word:
        return parse_word(text, self.names)

    def format(self, w: Sequence[Letter]) -> str:
        return format_word(w, self.names)

    def generators(self) -> list[Word]:
        return [((g, 1),) for g in range(self.rank)]

    def letters(self) -> list[Letter]:
        return alphabet(self.rank)
