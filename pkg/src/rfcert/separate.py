"""End-to-end separation: a nontrivial word, a finite field, and an audit record."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Sequence

from .finite_groups import CapacityError, FiniteGroup
from .matgroup import (
    GroupSpec,
    clear_entry,
    evaluate_word,
    generator_constants,
    mat_mul,
    mat_is_identity,
)
from .ring import UniPoly, is_prime, parse_unipoly
from .ring.parse import parse_poly
from .specialize import (
    IrreducibleChoice,
    Specialization,
    choose_irreducible,
    choose_prime,
    reduce_to_one_variable,
    specialize_group_char0,
    specialize_group_charp,
)
from .witness import (
    DEFAULT_CZ,
    MalabelianContext,
    build_witness_word,
    derived_witness,
    solvable_depth,
)
from .words import Letter, Word, inverse

RECORD_VERSION = 1
RECORD_HEADER = "rfcert-certificate"
INLINE_LIMIT = 4000
DEFAULT_DEGREE_CAP = 1500
FINITE_IMAGE_CAP = 10**5


class PreconditionError(ValueError):
    pass


@dataclass
class SeparationCertificate:
    mode: str
    word: Word
    dim: int
    char: int
    nvars: int
    witness_level: int
    conjugators: list[Word]
    witness_length: int
    entry: tuple[int, int]
    f: str
    n_vec: tuple[int, ...]
    trace: str
    m: int | None
    p: int
    w: str | None
    field_size: int
    order_bound: int
    c_z: float | None = None
    diagnostics: dict = field(default_factory=dict)
    group: str = ""
    names: list[str] = field(default_factory=list)

    def fields(self) -> list[tuple[str, str]]:
        from .words import format_word

        names = self.names or [f"g{i}" for i in range(max((g for g, _ in self.word), default=0) + 1)]
        rows = [
            ("group", self.group or "-"),
            ("generators", " ".join(self.names) if self.names else "-"),
            ("mode", self.mode),
            ("word", format_word(self.word, names)),
            ("word_length", str(len(self.word))),
            ("dim", str(self.dim)),
            ("char", str(self.char)),
            ("vars", str(self.nvars)),
            ("witness_level", str(self.witness_level)),
            ("c_z", "-" if self.c_z is None else _num(self.c_z)),
            ("conjugators", "; ".join(format_word(k, names) for k in self.conjugators) or "-"),
            ("witness_length", str(self.witness_length)),
            ("entry", f"{self.entry[0]},{self.entry[1]}"),
            ("f", self.f),
            ("n_vec", ",".join(str(n) for n in self.n_vec) or "-"),
            ("trace", self.trace),
            ("m", "-" if self.m is None else str(self.m)),
            ("p", str(self.p)),
            ("w", self.w or "-"),
            ("field_size", str(self.field_size)),
            ("order_bound", str(self.order_bound)),
        ]
        for k in sorted(self.diagnostics):
            rows.append((f"diag.{k}", str(self.diagnostics[k])))
        return rows

    def to_record(self) -> str:
        lines = [f"{RECORD_HEADER}: {RECORD_VERSION}"]
        lines += [f"{k}: {v}" for k, v in self.fields()]
        return "\n".join(lines) + "\n"


def _num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def _digest_or_inline(poly) -> str:
    """The polynomial itself when short, otherwise a hash of its terms."""
    if isinstance(poly, UniPoly):
        items = [((d,), c) for d, c in enumerate(poly.coeffs) if c]
    else:
        items = sorted(poly.terms.items())
    if sum(abs(c).bit_length() for _, c in items) <= 3 * INLINE_LIMIT:
        text = str(poly)
        if len(text) <= INLINE_LIMIT:
            return text
    h = hashlib.sha256()
    for exp, c in items:
        h.update(f"{','.join(map(str, exp))}:{c:x};".encode())
    return "sha256:" + h.hexdigest()


class RecordError(ValueError):
    pass


def parse_record(text: str) -> SeparationCertificate:
    from .words import parse_word

    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith(RECORD_HEADER + ":"):
        raise RecordError("missing certificate header")
    version = lines[0].split(":", 1)[1].strip()
    if version != str(RECORD_VERSION):
        raise RecordError(f"unsupported record version {version}")
    kv: dict[str, str] = {}
    for ln in lines[1:]:
        if ":" not in ln:
            raise RecordError(f"malformed line {ln!r}")
        k, v = ln.split(":", 1)
        kv[k.strip()] = v.strip()
    try:
        names = [] if kv["generators"] == "-" else kv["generators"].split()
        wnames = names or None

        def word_of(s: str) -> Word:
            if wnames is None:
                raise RecordError("generator names are required to read words")
            return parse_word(s, wnames)

        diagnostics = {k[5:]: v for k, v in kv.items() if k.startswith("diag.")}
        conj = [] if kv["conjugators"] == "-" else [word_of(s) for s in kv["conjugators"].split(";")]
        i0, j0 = (int(t) for t in kv["entry"].split(","))
        return SeparationCertificate(
            mode=kv["mode"],
            word=word_of(kv["word"]),
            dim=int(kv["dim"]),
            char=int(kv["char"]),
            nvars=int(kv["vars"]),
            witness_level=int(kv["witness_level"]),
            conjugators=conj,
            witness_length=int(kv["witness_length"]),
            entry=(i0, j0),
            f=kv["f"],
            n_vec=() if kv["n_vec"] == "-" else tuple(int(t) for t in kv["n_vec"].split(",")),
            trace=kv["trace"],
            m=None if kv["m"] == "-" else int(kv["m"]),
            p=int(kv["p"]),
            w=None if kv["w"] == "-" else kv["w"],
            field_size=int(kv["field_size"]),
            order_bound=int(kv["order_bound"]),
            c_z=None if kv["c_z"] == "-" else float(kv["c_z"]),
            diagnostics=diagnostics,
            group="" if kv["group"] == "-" else kv["group"],
            names=names,
        )
    except KeyError as exc:
        raise RecordError(f"missing field {exc.args[0]!r}") from None


def _witness_matrix(spec: GroupSpec, a: Sequence[Letter], conjugators: Sequence[Sequence[Letter]]):
    """Exact matrix of the witness, built from (matrix, inverse) pairs."""
    v, vi = evaluate_word(spec, a), evaluate_word(spec, inverse(a))
    for k in conjugators:
        kv, kvi = evaluate_word(spec, k), evaluate_word(spec, inverse(k))
        c = mat_mul(mat_mul(kv, v), kvi)
        ci = mat_mul(mat_mul(kv, vi), kvi)
        v, vi = mat_mul(mat_mul(vi, ci), mat_mul(v, c)), mat_mul(mat_mul(ci, vi), mat_mul(c, v))
    return v


def _entry_polys(spec: GroupSpec, mat, length: int):
    consts = generator_constants(spec)
    ring = spec.ring
    out = []
    for i, row in enumerate(mat):
        for j, x in enumerate(row):
            diff = x - ring.one() if i == j else x
            out.append(((i, j), clear_entry(spec, diff, length, consts.phi_exponents)))
    return out


def _specialized_denominators_char0(spec: GroupSpec, n_vec) -> list[UniPoly]:
    return [s.substitute_powers(n_vec) for s in spec.ring.S]


def separate_element(
    spec: GroupSpec,
    a: Sequence[Letter],
    mode: str = "direct",
    *,
    c_z: float = DEFAULT_CZ,
    level: int | None = None,
    kappa: int = 1,
    kappa_max: int = 6,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> SeparationCertificate:
    """Find a finite field F and a map of the group into GL(F) where the (witness of the) word survives."""
    if mode not in ("direct", "semisimple"):
        raise ValueError(f"unknown mode {mode!r}")
    a = tuple(a)
    base = evaluate_word(spec, a)
    if mat_is_identity(base):
        raise PreconditionError("the word evaluates to the identity matrix")
    consts = generator_constants(spec)
    conjugators: list[Word] = []
    if mode == "direct":
        lvl = 0
        h_mat = base
        h_len = len(a)
    else:
        lvl = solvable_depth(spec.dim, c_z) if level is None else level
        ctx = MalabelianContext.matrix(spec, kappa, kappa_max)

        def guard(n: int) -> None:
            if consts.K * n > degree_cap:
                raise CapacityError(
                    f"witness entries could reach degree {consts.K * n} (cap {degree_cap})"
                )

        rec = derived_witness(ctx, a, lvl, degree_guard=guard)
        conjugators = rec.conjugators
        h_mat = rec.value[0]
        h_len = rec.length
    if len(spec.ring.S):
        phi_deg = consts.phi.degree() * h_len
        if phi_deg > degree_cap:
            raise CapacityError(f"Phi^{h_len} has degree {phi_deg} (cap {degree_cap})")
    entry, f = next((e, poly) for e, poly in _entry_polys(spec, h_mat, h_len) if not poly.is_zero())
    red = reduce_to_one_variable(f)
    diag: dict = {
        "K": consts.K,
        "C": "-" if consts.C is None else consts.C,
        "Phi": str(consts.phi),
        "D": red.D,
        "box": red.box,
        "reduction_fallback": red.fallback,
        "deg_f": f.degree(),
        "deg_trace": red.g.degree(),
        "effective_kappa": max([kappa] + [len(k) for k in conjugators]),
    }
    if spec.char == 0:
        dens = _specialized_denominators_char0(spec, red.n_vec)
        choice = choose_prime(red.g, dens, s=spec.nvars, d=max(f.degree(), 0))
        diag.update({f"prime.{k}": v for k, v in choice.diagnostics.items()})
        diag["h_at_m_bits"] = abs(choice.value).bit_length()
        spec_map = specialize_group_char0(spec, red.n_vec, choice.m, choice.p)
        m, p, w_str = choice.m, choice.p, None
    else:
        dens = [s.substitute_powers(red.n_vec) for s in spec.ring.S]
        ichoice = choose_irreducible(red.g, dens)
        spec_map = specialize_group_charp(spec, red.n_vec, ichoice)
        m, p, w_str = None, ichoice.p, str(ichoice.w)
        diag["deg_w"] = ichoice.w.degree()
    image = spec_map.image_witness(a, conjugators)
    if spec_map.is_identity(image):
        raise AssertionError("specialised witness is the identity; the construction is unsound")
    field_size = spec_map.field_size
    return SeparationCertificate(
        mode=mode,
        word=a,
        dim=spec.dim,
        char=spec.char,
        nvars=spec.nvars,
        witness_level=lvl,
        conjugators=conjugators,
        witness_length=h_len,
        entry=entry,
        f=_digest_or_inline(f),
        n_vec=red.n_vec,
        trace=_digest_or_inline(red.g),
        m=m,
        p=p,
        w=w_str,
        field_size=field_size,
        order_bound=field_size ** (spec.dim**2),
        c_z=c_z if mode == "semisimple" and level is None else None,
        diagnostics=diag,
        group=_group_label(spec),
        names=list(spec.names),
    )


def _group_label(spec: GroupSpec) -> str:
    from pathlib import Path

    return Path(spec.source).name if spec.source else ""


def build_specialization(spec: GroupSpec, cert: SeparationCertificate) -> Specialization:
    if cert.char == 0:
        if cert.m is None:
            raise ValueError("characteristic 0 certificate without an evaluation point")
        return specialize_group_char0(spec, cert.n_vec, cert.m, cert.p)
    if cert.w is None:
        raise ValueError("characteristic p certificate without a modulus")
    return specialize_group_charp(spec, cert.n_vec, parse_unipoly(cert.w, cert.p))


def verify_certificate(spec: GroupSpec, cert: SeparationCertificate) -> tuple[bool, str]:
    """Recompute every step from the recorded choices; returns (ok, first failure)."""
    try:
        return _verify(spec, cert)
    except Exception as exc:  # any arithmetic failure is a verification failure
        return False, f"error: {exc}"


def _verify(spec: GroupSpec, cert: SeparationCertificate) -> tuple[bool, str]:
    if (cert.dim, cert.char, cert.nvars) != (spec.dim, spec.char, spec.nvars):
        return False, "ring or dimension mismatch"
    if cert.names and cert.names != list(spec.names):
        return False, "generator names differ"
    if cert.mode not in ("direct", "semisimple"):
        return False, "unknown mode"
    if cert.mode == "direct" and (cert.witness_level or cert.conjugators):
        return False, "direct mode carries no witness"
    if cert.mode == "semisimple":
        expected = solvable_depth(spec.dim, cert.c_z) if cert.c_z is not None else cert.witness_level
        if cert.witness_level != expected or len(cert.conjugators) != expected:
            return False, "witness level"
    h_mat = _witness_matrix(spec, cert.word, cert.conjugators)
    if mat_is_identity(h_mat):
        return False, "witness trivial"
    h_len = len(build_witness_word(cert.word, cert.conjugators)) if cert.conjugators else len(cert.word)
    if h_len != cert.witness_length:
        return False, "witness length"
    polys = dict(_entry_polys(spec, h_mat, h_len))
    first = next((e for e, poly in polys.items() if not poly.is_zero()), None)
    if first != tuple(cert.entry):
        return False, "entry choice"
    f = polys[first]
    if _digest_or_inline(f) != cert.f:
        return False, "entry polynomial"
    if len(cert.n_vec) != spec.nvars or any(n < 0 for n in cert.n_vec):
        return False, "exponent vector"
    D = max(f.degree(), 2)
    if any(n > D ** (2 * spec.nvars) for n in cert.n_vec):
        return False, "exponent box"
    g = f.substitute_powers(cert.n_vec)
    if g.is_zero():
        return False, "trace polynomial vanishes"
    if _digest_or_inline(g) != cert.trace:
        return False, "trace polynomial"
    if spec.char == 0:
        if cert.m is None or not is_prime(cert.p):
            return False, "modulus condition"
        if g.eval_mod(cert.m, cert.p) == 0:
            return False, "modulus condition"
        for s in spec.ring.S:
            if s.substitute_powers(cert.n_vec).eval_mod(cert.m, cert.p) == 0:
                return False, "modulus condition"
        field_size = cert.p
    else:
        if cert.w is None or cert.p != spec.char:
            return False, "modulus condition"
        w = parse_unipoly(cert.w, spec.char)
        if not w.is_monic() or not _is_irreducible(w) or w.divides(g):
            return False, "modulus condition"
        for s in spec.ring.S:
            if w.divides(s.substitute_powers(cert.n_vec)):
                return False, "modulus condition"
        field_size = spec.char ** w.degree()
    if cert.field_size != field_size:
        return False, "field size"
    spec_map = build_specialization(spec, cert)
    if spec_map.is_identity(spec_map.image_witness(cert.word, cert.conjugators)):
        return False, "specialized image"
    if cert.order_bound != field_size ** (spec.dim**2):
        return False, "order bound"
    return True, "ok"


def _is_irreducible(w: UniPoly) -> bool:
    from .ring import enumerate_irreducibles

    d = w.degree()
    if d < 1:
        return False
    if d == 1:
        return True
    return all(not v.divides(w) for v in enumerate_irreducibles(w.char, d // 2))


def finite_image(spec: GroupSpec, cert: SeparationCertificate, cap: int = FINITE_IMAGE_CAP) -> FiniteGroup:
    """The subgroup of GL(F) generated by the specialised generators."""
    spec_map = build_specialization(spec, cert)
    return specialization_image(spec_map, cap)


def specialization_image(spec_map: Specialization, cap: int = FINITE_IMAGE_CAP) -> FiniteGroup:
    F = spec_map.field
    gens = spec_map.generators
    return FiniteGroup.generated(gens, F.matmul, spec_map.identity, name="image", cap=cap, inv=F.matinv)


def normal_closure_derived_depth(Q: FiniteGroup, x, n: int, cap: int = FINITE_IMAGE_CAP) -> FiniteGroup:
    """``D^n`` of the normal closure of x in Q."""
    if Q.order > cap:
        raise CapacityError(f"group of order {Q.order} exceeds {cap}")
    if n < 0:
        raise ValueError("level must be nonnegative")
    N = Q.normal_closure([x])
    return N.derived_term(n)


def certificate_from_text(text: str) -> SeparationCertificate:
    return parse_record(text)


def f_polynomial(spec: GroupSpec, cert: SeparationCertificate):
    """Recomputed entry polynomial (for display when the record holds a digest)."""
    if not cert.f.startswith("sha256:"):
        return parse_poly(cert.f, spec.nvars, spec.char)
    h_mat = _witness_matrix(spec, cert.word, cert.conjugators)
    return dict(_entry_polys(spec, h_mat, cert.witness_length))[tuple(cert.entry)]
