"""Kernel invariance under supplied automorphisms of F_k, the invariant core,
and projections of maps into products.

An automorphism is a substitution rule: generator i goes to a word. Kernels
are never materialised. ``ker phi <= ker psi`` is tested by comparing the
order of the joint image g -> (phi(g), psi(g)) with the order of phi's image.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from ..finite_groups import FiniteGroup, closure, product_group
from ..words import Letter, Word, default_names, format_word, free_reduce, parse_word
from .oracle import Hom


class RuleError(ValueError):
    """A substitution rule is malformed or not invertible as supplied."""


class OrbitUnbounded(RuntimeError):
    pass


@dataclass(frozen=True)
class AutRule:
    name: str
    images: tuple[Word, ...]
    inverse: tuple[Word, ...] | None = None  # None: the rule is its own inverse

    @property
    def rank(self) -> int:
        return len(self.images)

    @property
    def inverse_images(self) -> tuple[Word, ...]:
        return self.images if self.inverse is None else self.inverse

    def apply(self, w: Sequence[Letter]) -> Word:
        return substitute(self.images, w)

    def apply_inverse(self, w: Sequence[Letter]) -> Word:
        return substitute(self.inverse_images, w)

    def validate(self, rank: int | None = None) -> None:
        k = self.rank
        if rank is not None and k != rank:
            raise RuleError(f"rule {self.name} has {k} images, expected {rank}")
        inv = self.inverse_images
        if len(inv) != k:
            raise RuleError(f"rule {self.name}: inverse has {len(inv)} images, expected {k}")
        for i in range(k):
            gen = ((i, 1),)
            if substitute(inv, self.images[i]) != gen or substitute(self.images, inv[i]) != gen:
                what = "supplied inverse" if self.inverse is not None else "rule applied twice"
                raise RuleError(f"rule {self.name}: {what} does not give the identity")

    def inverted(self) -> AutRule:
        return AutRule(self.name + "^-1", self.inverse_images, self.images)

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(self.rank)
        body = ", ".join(f"{names[i]} -> {format_word(w, names)}" for i, w in enumerate(self.images))
        if self.inverse is not None:
            body += " ; inverse: " + ", ".join(
                f"{names[i]} -> {format_word(w, names)}" for i, w in enumerate(self.inverse)
            )
        return f"{self.name}: {body}"


def substitute(images: Sequence[Sequence[Letter]], w: Sequence[Letter]) -> Word:
    out: list[Letter] = []
    for g, s in w:
        img = images[g]
        if s == 1:
            out.extend(img)
        else:
            out.extend((h, -e) for h, e in reversed(img))
    return free_reduce(out)


def nielsen_rules(k: int) -> list[AutRule]:
    """Nielsen generators of Aut(F_k): swap, cyclic shift, invert x1, x1 -> x1 x2."""
    if k < 1:
        raise ValueError("rank must be positive")
    gens = [((i, 1),) for i in range(k)]
    rules = []
    if k >= 2:
        swap = list(gens)
        swap[0], swap[1] = gens[1], gens[0]
        rules.append(AutRule("swap", tuple(swap)))
    if k >= 3:
        shift = tuple(gens[(i + 1) % k] for i in range(k))
        back = tuple(gens[(i - 1) % k] for i in range(k))
        rules.append(AutRule("shift", shift, back))
    inv = list(gens)
    inv[0] = ((0, -1),)
    rules.append(AutRule("invert", tuple(inv)))
    if k >= 2:
        t = list(gens)
        t[0] = ((0, 1), (1, 1))
        ti = list(gens)
        ti[0] = ((0, 1), (1, -1))
        rules.append(AutRule("transvect", tuple(t), tuple(ti)))
    return rules


def _parse_assignments(text: str, names: Sequence[str], rank: int, lineno: int) -> tuple[Word, ...]:
    images: list[Word | None] = [None] * rank
    for part in text.split(","):
        if "->" not in part:
            raise RuleError(f"line {lineno}: expected 'gen -> word' in {part.strip()!r}")
        lhs, rhs = (s.strip() for s in part.split("->", 1))
        if lhs not in names:
            raise RuleError(f"line {lineno}: unknown generator {lhs!r}")
        i = list(names).index(lhs)
        images[i] = free_reduce(parse_word(rhs, names))
    for i, w in enumerate(images):
        if w is None:
            images[i] = ((i, 1),)  # unmentioned generators are fixed
    return tuple(images)  # type: ignore[arg-type]


def parse_aut_rules(text: str, rank: int, names: Sequence[str] | None = None) -> list[AutRule]:
    """Lines ``NAME: x -> x y, y -> y [; inverse: x -> x y^-1]``; ``#`` comments.

    A rule without an inverse clause must be an involution.
    """
    names = list(names or default_names(rank))
    rules = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"^([\w.-]+)\s*:\s*(.*)$", line)
        if not m:
            raise RuleError(f"line {lineno}: expected 'NAME: assignments'")
        name, body = m.group(1), m.group(2)
        fwd, inv = body, None
        if ";" in body:
            fwd, rest = body.split(";", 1)
            rest = rest.strip()
            if not rest.startswith("inverse:"):
                raise RuleError(f"line {lineno}: expected 'inverse:' after ';'")
            inv = _parse_assignments(rest[len("inverse:"):], names, rank, lineno)
        rule = AutRule(name, _parse_assignments(fwd, names, rank, lineno), inv)
        rule.validate(rank)
        rules.append(rule)
    return rules


def _image_order(Q: FiniteGroup, gens: Sequence) -> int:
    return len(closure([g for g in gens if g != Q.identity], Q.mul, Q.identity))


def joint_image_order(phi: Hom, psi: Hom) -> int:
    """Order of the image of g -> (phi(g), psi(g))."""
    P, R = phi.target, psi.target
    one = (P.identity, R.identity)

    def mul(a, b):
        return (P.mul(a[0], b[0]), R.mul(a[1], b[1]))

    pairs = [p for p in zip(phi.images, psi.images) if p != one]
    return len(closure(pairs, mul, one))


def kernel_contained(phi: Hom, psi: Hom) -> bool:
    """``ker phi <= ker psi``."""
    return joint_image_order(phi, psi) == _image_order(phi.target, phi.images)


def kernels_equal(phi: Hom, psi: Hom) -> bool:
    j = joint_image_order(phi, psi)
    return j == _image_order(phi.target, phi.images) == _image_order(psi.target, psi.images)


def kernel_invariant(phi: Hom, rules: Sequence[AutRule]) -> bool:
    """True when ker phi is carried into itself by every rule and its inverse."""
    for rule in rules:
        rule.validate(phi.rank)
    if phi.target.order == 1:
        return True
    for rule in rules:
        for images in (rule.images, rule.inverse_images):
            if not kernel_contained(phi, phi.compose(images)):
                return False
    return True


@dataclass
class CoreResult:
    hom: Hom  # diagonal map into the product of copies of the target
    orbit: list[Hom]

    @property
    def orbit_size(self) -> int:
        return len(self.orbit)

    @property
    def image_order(self) -> int:
        return self.hom.target.order


def invariant_core(phi: Hom, rules: Sequence[AutRule], orbit_cap: int = 64) -> CoreResult:
    """Diagonal map over the orbit of ker phi under the group the rules generate.

    Its kernel is the intersection of the orbit. Raises OrbitUnbounded once
    more than ``orbit_cap`` distinct kernels are seen.
    """
    for rule in rules:
        rule.validate(phi.rank)
    orbit = [phi]
    frontier = [phi]
    moves = [r.images for r in rules] + [r.inverse_images for r in rules if r.inverse is not None]
    while frontier:
        psi = frontier.pop(0)
        for images in moves:
            cand = psi.compose(images)
            if any(kernels_equal(cand, other) for other in orbit):
                continue
            orbit.append(cand)
            if len(orbit) > orbit_cap:
                raise OrbitUnbounded(f"kernel orbit exceeds {orbit_cap}")
            frontier.append(cand)
    Q = phi.target
    gens = [tuple(h.images[i] for h in orbit) for i in range(phi.rank)]
    target = product_group([Q] * len(orbit), f"{Q.name or Q.order}^{len(orbit)}", gens)
    return CoreResult(Hom(target, gens), orbit)


def _same_type(a: FiniteGroup, b: FiniteGroup) -> bool:
    if a is b:
        return True
    if a.order != b.order:
        return False
    if a.name and a.name == b.name:
        return True
    return sorted(a.element_orders()) == sorted(b.element_orders()) and a.is_abelian() == b.is_abelian()


def project_to_factor(
    phi: Hom,
    which: int | None = None,
    element: Sequence[Letter] | None = None,
    mode: str = "factor",
) -> tuple[int, Hom]:
    """Compose phi with a coordinate projection of its product target.

    The factor is ``which`` if given, else the first factor in which
    ``element`` survives. ``mode="isotypic"`` keeps every factor of the
    same isomorphism type as the chosen one (a block that automorphisms
    permuting the factors preserve). Returns (factor index, projected map).
    """
    factors = getattr(phi.target, "factors", None)
    if not factors:
        raise ValueError("the target is not a product with known factors")
    if mode not in ("factor", "isotypic"):
        raise ValueError("mode must be 'factor' or 'isotypic'")
    if which is None:
        if element is None:
            raise ValueError("give a factor index or a tracked element")
        v = phi(element)
        if v == phi.target.identity:
            raise ValueError("the element is trivial in the product")
        which = next((j for j, (f, x) in enumerate(zip(factors, v)) if x != f.identity), None)
        if which is None:
            raise AssertionError("nontrivial product element with trivial coordinates")
    if not 0 <= which < len(factors):
        raise ValueError(f"factor index {which} out of range")
    if mode == "factor":
        return which, Hom(factors[which], [img[which] for img in phi.images])
    block = [j for j, f in enumerate(factors) if _same_type(f, factors[which])]
    target = product_group([factors[j] for j in block])
    return which, Hom(target, [tuple(img[j] for j in block) for img in phi.images])
