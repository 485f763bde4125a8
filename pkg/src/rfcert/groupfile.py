"""Reader and writer for the line-oriented group file format.

::

    # comments start with '#'
    ring char=0 vars=1 denoms=[T1]
    dim 2
    gen A = [[1, 2*T1],[0,1]]   inv Ainv = [[1, -2*T1],[0,1]]

The ``inv`` clause may be omitted for constant matrices whose inverse has
entries in the base ring; the inverse is then named ``<name>inv``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .matgroup import GroupSpec, Matrix, SpecError
from .ring import Localization, MultiPoly, ParseError, is_prime, parse_localized, parse_poly

_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class GroupFileError(ParseError):
    pass


def _split_top(text: str, sep: str = ",") -> list[tuple[str, int]]:
    """Split on ``sep`` outside brackets; returns (piece, offset) pairs."""
    out = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    out.append((text[start:], start))
    return out


def _bracket_span(line: str, start: int, lineno: int) -> int:
    """Index just past the bracket group opening at ``start``."""
    if start >= len(line) or line[start] != "[":
        raise GroupFileError("expected '['", start + 1, lineno)
    depth = 0
    for i in range(start, len(line)):
        if line[i] == "[":
            depth += 1
        elif line[i] == "]":
            depth -= 1
            if depth == 0:
                return i + 1
    raise GroupFileError("unbalanced '['", start + 1, lineno)


def _skip_ws(line: str, i: int) -> int:
    while i < len(line) and line[i].isspace():
        i += 1
    return i


def _parse_matrix(line: str, start: int, end: int, ring: Localization, dim: int, lineno: int) -> Matrix:
    inner = line[start + 1:end - 1]
    rows = []
    for row_text, row_off in _split_top(inner):
        stripped = row_text.strip()
        if not stripped:
            continue
        lead = row_text.index(stripped[0])
        base = start + 1 + row_off + lead
        if not (stripped.startswith("[") and stripped.endswith("]")):
            raise GroupFileError("matrix rows must be bracketed", base + 1, lineno)
        entries = []
        for ent, ent_off in _split_top(stripped[1:-1]):
            col0 = base + 1 + ent_off
            if not ent.strip():
                raise GroupFileError("empty matrix entry", col0 + 1, lineno)
            try:
                entries.append(parse_localized(ent, ring))
            except ParseError as exc:
                col = col0 + (exc.column or 1)
                msg = str(exc).split(": ", 1)[-1]
                raise GroupFileError(msg, col, lineno) from None
        rows.append(tuple(entries))
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise GroupFileError(f"matrix is not {dim}x{dim}", start + 1, lineno)
    return tuple(rows)


def _constant_inverse(m: Matrix, ring: Localization) -> Matrix | None:
    if not all(x.is_polynomial() and x.num.is_constant() for row in m for x in row):
        return None
    n = len(m)
    p = ring.char
    if p:
        rows = [[x.num.constant_term() % p for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
        for c in range(n):
            piv = next((r for r in range(c, n) if rows[r][c]), None)
            if piv is None:
                return None
            rows[c], rows[piv] = rows[piv], rows[c]
            s = pow(rows[c][c], -1, p)
            rows[c] = [(v * s) % p for v in rows[c]]
            for r in range(n):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[c])]
        vals = [[r[n + j] for j in range(n)] for r in rows]
    else:
        rows = [[Fraction(x.num.constant_term()) for x in row] + [Fraction(int(i == j)) for j in range(n)]
                for i, row in enumerate(m)]
        for c in range(n):
            piv = next((r for r in range(c, n) if rows[r][c]), None)
            if piv is None:
                return None
            rows[c], rows[piv] = rows[piv], rows[c]
            s = rows[c][c]
            rows[c] = [v / s for v in rows[c]]
            for r in range(n):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
        if any(rows[i][n + j].denominator != 1 for i in range(n) for j in range(n)):
            return None
        vals = [[int(rows[i][n + j]) for j in range(n)] for i in range(n)]
    return tuple(tuple(ring.elem(v) for v in row) for row in vals)


def _parse_ring(line: str, lineno: int) -> Localization:
    body = line[len("ring"):]
    opts: dict[str, str] = {}
    for piece, off in _split_top(body, " "):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            raise GroupFileError(f"expected key=value, found {piece!r}", len("ring") + off + 2, lineno)
        k, v = piece.split("=", 1)
        opts[k.strip()] = v.strip()
    unknown = set(opts) - {"char", "vars", "denoms"}
    if unknown:
        raise GroupFileError(f"unknown ring option(s) {sorted(unknown)}", None, lineno)
    try:
        char = int(opts.get("char", "0"))
        nvars = int(opts.get("vars", "0"))
    except ValueError:
        raise GroupFileError("char and vars must be integers", None, lineno) from None
    if char and not is_prime(char):
        raise GroupFileError(f"characteristic {char} is not prime", None, lineno)
    if nvars < 0:
        raise GroupFileError("vars must be nonnegative", None, lineno)
    dens: list[MultiPoly] = []
    raw = opts.get("denoms", "[]")
    if not (raw.startswith("[") and raw.endswith("]")):
        raise GroupFileError("denoms must be a bracketed list", None, lineno)
    for piece, _ in _split_top(raw[1:-1]):
        if not piece.strip():
            continue
        try:
            poly = parse_poly(piece, nvars, char)
        except ParseError as exc:
            raise GroupFileError(f"bad denominator {piece.strip()!r}: {exc}", None, lineno) from None
        if poly.is_zero():
            raise GroupFileError("denominators must be nonzero", None, lineno)
        dens.append(poly)
    return Localization(nvars, char, dens)


def parse_group_file(text: str, source: str = "") -> GroupSpec:
    ring: Localization | None = None
    dim: int | None = None
    gens: list[tuple[str, Matrix, str, Matrix]] = []
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        word0 = line.split(None, 1)[0]
        if word0 == "ring":
            if ring is not None:
                raise GroupFileError("duplicate ring line", 1, lineno)
            ring = _parse_ring(line.strip(), lineno)
        elif word0 == "dim":
            try:
                dim = int(line.split(None, 1)[1])
            except (IndexError, ValueError):
                raise GroupFileError("dim expects an integer", 1, lineno) from None
            if dim < 1:
                raise GroupFileError("dim must be positive", 1, lineno)
        elif word0 == "gen":
            if ring is None or dim is None:
                raise GroupFileError("ring and dim must precede generators", 1, lineno)
            gens.append(_parse_gen_line(line, ring, dim, lineno))
        else:
            raise GroupFileError(f"unknown directive {word0!r}", line.index(word0) + 1, lineno)
    if ring is None or dim is None:
        raise GroupFileError("missing ring or dim line")
    if not gens:
        raise GroupFileError("no generators declared")
    try:
        return GroupSpec(ring, dim, gens, source=source)
    except SpecError as exc:
        raise GroupFileError(str(exc)) from None


def _parse_named_matrix(line: str, i: int, ring: Localization, dim: int, lineno: int) -> tuple[str, Matrix, int]:
    i = _skip_ws(line, i)
    m = _NAME.match(line, i)
    if m is None:
        raise GroupFileError("expected a generator name", i + 1, lineno)
    name = m.group(0)
    i = _skip_ws(line, m.end())
    if i >= len(line) or line[i] != "=":
        raise GroupFileError("expected '='", i + 1, lineno)
    i = _skip_ws(line, i + 1)
    end = _bracket_span(line, i, lineno)
    return name, _parse_matrix(line, i, end, ring, dim, lineno), end


def _parse_gen_line(line: str, ring: Localization, dim: int, lineno: int):
    i = line.index("gen") + 3
    name, mat, i = _parse_named_matrix(line, i, ring, dim, lineno)
    i = _skip_ws(line, i)
    if i < len(line):
        if not line.startswith("inv", i):
            raise GroupFileError("expected 'inv' clause or end of line", i + 1, lineno)
        inv_name, inv_mat, i = _parse_named_matrix(line, i + 3, ring, dim, lineno)
        i = _skip_ws(line, i)
        if i < len(line):
            raise GroupFileError("trailing text", i + 1, lineno)
    else:
        inv_mat = _constant_inverse(mat, ring)
        if inv_mat is None:
            raise GroupFileError(f"generator {name} needs an explicit 'inv' clause", 1, lineno)
        inv_name = f"{name}inv"
    return name, mat, inv_name, inv_mat


def load_group_file(path: str | Path) -> GroupSpec:
    path = Path(path)
    if not path.exists():
        bundled = Path(__file__).parent / "data" / path.name
        if bundled.exists():
            path = bundled
    return parse_group_file(path.read_text(encoding="utf-8"), source=str(path))


def bundled_path(name: str) -> Path:
    return Path(__file__).parent / "data" / name


def load_bundled(name: str) -> GroupSpec:
    return load_group_file(bundled_path(name if name.endswith(".grp") else name + ".grp"))


def format_group_file(spec: GroupSpec) -> str:
    from .matgroup import mat_str

    dens = ", ".join(str(s) for s in spec.ring.S)
    lines = [f"ring char={spec.char} vars={spec.nvars} denoms=[{dens}]", f"dim {spec.dim}"]
    for name, m, inv_name, mi in zip(spec.names, spec.matrices, spec.inverse_names, spec.inverses):
        lines.append(f"gen {name} = {mat_str(m)}   inv {inv_name} = {mat_str(mi)}")
    return "\n".join(lines) + "\n"
