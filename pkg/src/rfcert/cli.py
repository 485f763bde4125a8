"""Command-line front end.

Exit codes: 0 success, 1 domain error (bad input data, capacity, no
separating quotient, failed check), 2 usage error.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .finite_groups import CapacityError
from .ring import ParseError
from .words import FreeGroup, WordParseError, default_names, format_word

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    fmt: str
    kappa_max: int
    budget: int
    orbit_cap: int
    n_max: int

    def __post_init__(self):
        for name in ("kappa_max", "budget", "orbit_cap", "n_max"):
            if getattr(self, name) < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep argparse from exiting inside library calls
        raise UsageError(message)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rfcert", description="Finite quotients that separate elements of matrix groups.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, formats=("human", "record"), default="record"):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--kappa-max", type=_positive, default=6)
        sp.add_argument("--budget", type=_positive, default=10**6)
        sp.add_argument("--orbit-cap", type=_positive, default=64)

    s = sub.add_parser("separate", help="certify a finite quotient in which a word survives")
    s.add_argument("groupfile")
    s.add_argument("word")
    s.add_argument("--mode", choices=("direct", "semisimple"), default="direct")
    s.add_argument("--cz", type=float, default=None, help="depth constant for semisimple mode")
    s.add_argument("--level", type=int, default=None, help="explicit witness level")
    s.add_argument("--degree-cap", type=_positive, default=None)
    common(s)

    d = sub.add_parser("depth", help="smallest catalog quotient of F_k in which a word survives")
    d.add_argument("word")
    d.add_argument("--free-rank", type=_positive, default=2)
    d.add_argument("--class", dest="cls", default="any")
    d.add_argument("--catalog", help="extra catalog groups (permutation generators)")
    d.add_argument("--aut", help="automorphism substitution rules for invariance")
    d.add_argument("--require-invariant", action="store_true")
    common(d, default="human")

    c = sub.add_parser("curve", help="growth curve of depth or certified quotient bound")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--pipeline", metavar="GROUPFILE")
    src.add_argument("--oracle", action="store_true")
    c.add_argument("--n", type=_positive, default=4, dest="n_max")
    c.add_argument("--mode", choices=("direct", "semisimple"), default="direct")
    c.add_argument("--free-rank", type=_positive, default=2)
    c.add_argument("--class", dest="cls", default="any")
    c.add_argument("--catalog")
    c.add_argument("--fit", action="store_true", help="append a power-law fit")
    common(c, formats=("csv", "human"), default="csv")

    w = sub.add_parser("witness", help="derived-series witness word")
    w.add_argument("word")
    w.add_argument("--level", type=int, default=1)
    w.add_argument("--group", metavar="GROUPFILE")
    w.add_argument("--free-rank", type=_positive, default=2)
    w.add_argument("--kappa", type=int, default=1)
    common(w)

    m = sub.add_parser("lcm", help="common multiple of several words")
    m.add_argument("words", nargs="+")
    m.add_argument("--group", metavar="GROUPFILE")
    m.add_argument("--free-rank", type=_positive, default=2)
    m.add_argument("--kappa", type=int, default=1)
    common(m)

    lt = sub.add_parser("lietype", help="finite groups of Lie type")
    lt.add_argument("action", choices=("info", "tits"))
    lt.add_argument("ident", nargs="?")
    lt.add_argument("params", nargs="*", help="q=<prime power>")
    common(lt, default="human")

    k = sub.add_parser("check", help="run invariant checks against a group file")
    k.add_argument("groupfile")
    k.add_argument("--certificate", help="verify this certificate record instead")
    k.add_argument("--words", type=_positive, default=20)
    k.add_argument("--length", type=_positive, default=6)
    k.add_argument("--seed", type=int, default=0)
    common(k, default="human")

    cat = sub.add_parser("catalog", help="list the quotient catalog")
    cat.add_argument("--catalog")
    cat.add_argument("--class", dest="cls", default="any")
    common(cat, default="human")
    return p


def _config(args) -> CliConfig:
    return CliConfig(args.command, args.format, args.kappa_max, args.budget, args.orbit_cap,
                     getattr(args, "n_max", 1))


def _load_spec(path: str):
    from .groupfile import load_group_file

    return load_group_file(path)


def _catalog(path: str | None):
    from .rfgrowth import default_catalog, load_catalog_file

    return load_catalog_file(path) if path else default_catalog()


def _record(header: str, rows: Sequence[tuple[str, object]]) -> str:
    return "\n".join([f"{header}: 1"] + [f"{k}: {v}" for k, v in rows]) + "\n"


def cmd_separate(args, cfg: CliConfig, out) -> int:
    from .separate import DEFAULT_CZ, DEFAULT_DEGREE_CAP, separate_element, verify_certificate

    spec = _load_spec(args.groupfile)
    word = spec.parse_word(args.word)
    cert = separate_element(
        spec, word, args.mode,
        c_z=DEFAULT_CZ if args.cz is None else args.cz,
        level=args.level,
        kappa_max=cfg.kappa_max,
        degree_cap=args.degree_cap or DEFAULT_DEGREE_CAP,
    )
    ok, reason = verify_certificate(spec, cert)
    if not ok:
        raise CheckFailed(f"freshly built certificate does not verify: {reason}")
    if cfg.fmt == "record":
        out.write(cert.to_record())
    else:
        where = f"F_{cert.p}" if cert.char == 0 else f"F_{cert.p}[tau]/({cert.w})"
        out.write(
            f"word {spec.format_word(cert.word)} survives in GL_{cert.dim}({where})\n"
            f"field size {cert.field_size}, quotient order at most {cert.order_bound}\n"
            f"witness level {cert.witness_level}, length {cert.witness_length}\n"
        )
    return EXIT_OK


def cmd_depth(args, cfg: CliConfig, out) -> int:
    from .rfgrowth import depth, parse_aut_rules, parse_class

    k = args.free_rank
    names = default_names(k)
    w = FreeGroup(k).parse(args.word)
    rules = parse_aut_rules(Path(args.aut).read_text(), k) if args.aut else None
    rep = depth(k, w, _catalog(args.catalog), parse_class(args.cls), cfg.budget, rules, args.require_invariant)
    if cfg.fmt == "record":
        out.write(f"rfcert-depth: 1\n{rep.format(names)}\n")
    else:
        out.write(rep.format(names) + "\n")
    return EXIT_OK


def cmd_curve(args, cfg: CliConfig, out) -> int:
    from .rfgrowth import OracleSource, PipelineSource, curve_csv, fit_polynomial, parse_class, rf_curve

    if args.pipeline:
        source = PipelineSource(_load_spec(args.pipeline), args.mode, {"kappa_max": cfg.kappa_max})
    else:
        source = OracleSource(args.free_rank, _catalog(args.catalog), parse_class(args.cls), cfg.budget)
    rows = rf_curve(source, cfg.n_max)
    if cfg.fmt == "csv":
        out.write(curve_csv(rows))
    else:
        for n, v in rows:
            out.write(f"n={n} value={v}\n")
    if args.fit:
        C, d, r = fit_polynomial(rows)
        # comment line so the CSV stays machine readable
        out.write(f"# fit: C={C:.6g} d={d:.6g} max_residual={r:.6g}\n")
    return EXIT_OK


def _witness_context(args, cfg: CliConfig):
    from .witness import MalabelianContext

    if args.group:
        spec = _load_spec(args.group)
        ctx = MalabelianContext.matrix(spec, args.kappa, cfg.kappa_max)
        return ctx, spec.parse_word, spec.format_word, Path(args.group).name
    fg = FreeGroup(args.free_rank)
    ctx = MalabelianContext.free(args.free_rank, args.kappa, cfg.kappa_max)
    return ctx, fg.parse, fg.format, f"F{args.free_rank}"


def cmd_witness(args, cfg: CliConfig, out) -> int:
    from .witness import derived_witness

    if args.level < 0:
        raise UsageError("--level must be nonnegative")
    ctx, parse, fmt, label = _witness_context(args, cfg)
    rec = derived_witness(ctx, parse(args.word), args.level)
    rows = [
        ("group", label),
        ("a", fmt(rec.a)),
        ("level", rec.level),
        ("kappa", rec.kappa),
        ("effective_kappa", rec.effective_kappa),
        ("conjugators", "; ".join(fmt(k) for k in rec.conjugators) or "-"),
        ("length", rec.length),
        ("bound", rec.bound),
        ("within_bound", str(rec.within_bound()).lower()),
        ("word", fmt(rec.word)),
    ]
    if cfg.fmt == "record":
        out.write(_record("rfcert-witness", rows))
    else:
        out.write(f"level {rec.level} witness of {fmt(rec.a)}: length {rec.length} (bound {rec.bound})\n")
        out.write(fmt(rec.word) + "\n")
    return EXIT_OK


def cmd_lcm(args, cfg: CliConfig, out) -> int:
    from .witness import lcm_witness

    ctx, parse, fmt, label = _witness_context(args, cfg)
    rec = lcm_witness(ctx, [parse(t) for t in args.words])
    rows: list[tuple[str, object]] = [
        ("group", label),
        ("inputs", "; ".join(fmt(t) for t in rec.inputs)),
        ("kappa", rec.kappa),
        ("effective_kappa", rec.effective_kappa),
    ]
    for i, lvl in enumerate(rec.levels):
        rows.append((f"tree.level{i}", " ".join(str(j) for j in lvl)))
    for i, node in enumerate(rec.nodes):
        if node.left is not None:
            rows.append((f"node{i}", f"[{node.left}, {fmt(node.conjugator)} . {node.right}] length {len(node.word)}"))
    rows += [
        ("length", rec.length),
        ("bound", rec.bound),
        ("within_bound", str(rec.within_bound()).lower()),
        ("word", fmt(rec.word)),
    ]
    if cfg.fmt == "record":
        out.write(_record("rfcert-lcm", rows))
    else:
        out.write(f"common multiple of {len(rec.inputs)} words: length {rec.length} (bound {rec.bound})\n")
        out.write(fmt(rec.word) + "\n")
    return EXIT_OK


def cmd_lietype(args, cfg: CliConfig, out) -> int:
    from .lietype import TITS_EXCEPTIONS, lie_info, parse_lie_id

    if args.action == "tits":
        out.write("\n".join(TITS_EXCEPTIONS) + "\n")
        return EXIT_OK
    if not args.ident:
        raise UsageError("lietype info needs a type such as A1")
    q = None
    for item in args.params:
        key, _, val = item.partition("=")
        if key != "q" or not val.isdigit():
            raise UsageError(f"unrecognised parameter {item!r}; expected q=<int>")
        q = int(val)
    info = lie_info(parse_lie_id(args.ident, q))
    if cfg.fmt == "record":
        out.write(_record("rfcert-lietype", list(info.items())))
    else:
        out.write(
            f"{info['id']}: order {info['order']}\n"
            f"characteristic {info['characteristic']}, extension degree {info['extension_degree']}\n"
            f"Tits exception: {'yes' if info['tits_exception'] else 'no'}\n"
        )
    return EXIT_OK


def cmd_check(args, cfg: CliConfig, out) -> int:
    from .matgroup import check_coeff_bound, check_degree_bound, is_identity_word
    from .separate import parse_record, separate_element, verify_certificate

    spec = _load_spec(args.groupfile)
    if args.certificate:
        cert = parse_record(Path(args.certificate).read_text())
        ok, reason = verify_certificate(spec, cert)
        out.write(f"certificate: {'ok' if ok else 'FAILED (' + reason + ')'}\n")
        if not ok:
            raise CheckFailed(reason)
        return EXIT_OK
    rng = random.Random(args.seed)
    failures: list[str] = []
    counts = {"degree": 0, "coefficient": 0, "certificate": 0}
    for _ in range(args.words):
        w = spec.random_word(rng.randint(1, args.length), rng)
        label = spec.format_word(w)
        if not check_degree_bound(spec, w).holds:
            failures.append(f"degree bound: {label}")
        counts["degree"] += 1
        if spec.char == 0:
            if not check_coeff_bound(spec, w).holds:
                failures.append(f"coefficient bound: {label}")
            counts["coefficient"] += 1
        if is_identity_word(spec, w):
            continue
        cert = separate_element(spec, w, "direct", kappa_max=cfg.kappa_max)
        ok, reason = verify_certificate(spec, parse_record(cert.to_record()))
        if not ok:
            failures.append(f"certificate ({reason}): {label}")
        counts["certificate"] += 1
    for key, n in counts.items():
        out.write(f"{key} checks: {n}\n")
    out.write(f"failures: {len(failures)}\n")
    for f in failures:
        out.write(f"  {f}\n")
    if failures:
        raise CheckFailed(f"{len(failures)} invariant violations")
    return EXIT_OK


def cmd_catalog(args, cfg: CliConfig, out) -> int:
    from .rfgrowth import parse_class

    cat = _catalog(args.catalog)
    cls = parse_class(args.cls)
    for e in cat.filtered(cls):
        tags = ",".join(sorted(e.tags))
        extra = f" e={e.e}" if e.e is not None else ""
        alias = f" aka {', '.join(e.aliases)}" if e.aliases else ""
        out.write(f"{e.order:>6}  {e.name}  [{tags}]{extra}{alias}\n")
    out.write(f"# complete through order {cat.complete_up_to(cls)} for class {cls}\n")
    return EXIT_OK


COMMANDS = {
    "separate": cmd_separate,
    "depth": cmd_depth,
    "curve": cmd_curve,
    "witness": cmd_witness,
    "lcm": cmd_lcm,
    "lietype": cmd_lietype,
    "check": cmd_check,
    "catalog": cmd_catalog,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (OSError, ParseError, WordParseError, ValueError, CapacityError, RuntimeError, CheckFailed) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
