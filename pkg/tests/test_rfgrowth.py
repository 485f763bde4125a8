import math

import pytest

from rfcert.finite_groups import alternating_group, cyclic_group, perm_from_cycles, product_group, symmetric_group
from rfcert.rfgrowth import (
    AutRule,
    BudgetExceeded,
    CatalogError,
    Hom,
    NotSeparated,
    OrbitUnbounded,
    OracleSource,
    PipelineSource,
    QuotientCatalog,
    RuleError,
    curve_csv,
    default_catalog,
    depth,
    enumerate_homs,
    fit_polynomial,
    invariant_core,
    kernel_invariant,
    kernels_equal,
    load_catalog_file,
    nielsen_rules,
    parse_aut_rules,
    parse_catalog_file,
    parse_class,
    project_to_factor,
    rf_curve,
    substitute,
)
from rfcert.words import FreeGroup, reduced_words_up_to

F2 = FreeGroup(2)
SWAP = nielsen_rules(2)[0]


@pytest.fixture(scope="module")
def catalog():
    return default_catalog()


def c2():
    C = cyclic_group(2)
    return C, C.gens[0], C.identity


class TestCatalog:
    def test_sorted(self, catalog):
        orders = [e.order for e in catalog]
        assert orders == sorted(orders)

    def test_contents(self, catalog):
        assert sum(1 for e in catalog if e.order <= 24) == 74
        assert catalog.get("PSL2(4)").name == "A5"
        assert catalog.get("PSL2(9)").e == 2
        lie = [e.name for e in catalog.filtered(parse_class("simple-lie-type"))]
        assert lie == ["A5", "PSL2(7)", "A6", "PSL2(8)", "PSL2(11)", "PSL2(13)"]

    def test_extension_bounded_filter(self, catalog):
        names = {e.name for e in catalog.filtered(parse_class("extension-bounded(1)"))}
        assert "A6" not in names and "PSL2(8)" not in names and "A5xA5" in names

    def test_groups_build_with_declared_order(self, catalog):
        for e in catalog:
            if e.order <= 720:
                assert e.group.order == e.order

    def test_unknown_class(self):
        with pytest.raises(CatalogError):
            parse_class("nilpotent")

    def test_file_loader(self, tmp_path):
        path = tmp_path / "extra.cat"
        path.write_text(
            "# PSL2(7) again, on 7 points\n"
            "group Q7 tags=simple-lie-type e=1 gens=(1,2,3,4,5,6,7);(2,3)(4,7)\n"
            "group S3b gens=(1,2,3);(1,2)\n"
        )
        entries = parse_catalog_file(path.read_text())
        assert [(e.name, e.order) for e in entries] == [("Q7", 168), ("S3b", 6)]
        cat = load_catalog_file(path, QuotientCatalog())
        assert [e.name for e in cat] == ["S3b", "Q7"]
        with pytest.raises(CatalogError):
            parse_catalog_file("group X tags=weird gens=(1,2)\n")
        with pytest.raises(CatalogError):
            parse_catalog_file("nonsense\n")


class TestEnumerateHoms:
    def test_counts(self):
        assert len(list(enumerate_homs(1, cyclic_group(2)))) == 2
        assert len(list(enumerate_homs(2, symmetric_group(3)))) == 36

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            list(enumerate_homs(2, symmetric_group(6), budget=1000))

    def test_deterministic(self):
        S3 = symmetric_group(3)
        assert [h.images for h in enumerate_homs(2, S3)] == [h.images for h in enumerate_homs(2, S3)]


class TestDepth:
    def test_generator(self, catalog):
        r = depth(2, F2.parse("x"), catalog)
        assert (r.target, r.order, r.exhaustive) == ("C2", 2, True)

    def test_commutator(self, catalog):
        r = depth(2, F2.parse("[x,y]"), catalog)
        assert r.order == 6 and r.exhaustive
        S3 = catalog.get(r.target).group
        assert S3.evaluate(F2.parse("[x,y]"), r.images) != S3.identity

    def test_restricted_commutator(self, catalog):
        r = depth(2, F2.parse("[x,y]"), catalog, parse_class("product-of-simple-lie-type"))
        assert (r.target, r.order) == ("A5", 60)
        assert catalog.get("A5").group.generates(list(r.images))

    def test_square_needs_three(self, catalog):
        assert depth(2, F2.parse("x^2"), catalog).order == 3

    def test_not_exhaustive_beyond_catalog(self, catalog):
        r = depth(2, F2.parse("[[x,y],[x^-1,y^-1]]"), catalog)
        assert r.exhaustive == (r.order - 1 <= 24)

    def test_not_separated(self):
        tiny = default_catalog().up_to(2)
        with pytest.raises(NotSeparated):
            depth(2, F2.parse("x^2"), tiny)

    def test_trivial_word(self, catalog):
        with pytest.raises(ValueError):
            depth(2, F2.parse("x x^-1"), catalog)

    def test_invariance_reported(self, catalog):
        r = depth(2, F2.parse("x"), catalog, aut_rules=nielsen_rules(2))
        assert r.invariant is False
        r2 = depth(2, F2.parse("x"), catalog, aut_rules=nielsen_rules(2), require_invariant=True)
        assert r2.invariant is True and r2.order == 4

    def test_budget_skips(self, catalog):
        r = depth(2, F2.parse("[x,y]"), catalog, budget=30)
        assert r.skipped and not r.exhaustive


class TestRules:
    def test_nielsen_valid(self):
        for k in (1, 2, 3):
            for rule in nielsen_rules(k):
                rule.validate(k)

    def test_non_involution_without_inverse(self):
        t = AutRule("t", (F2.parse("x y"), F2.parse("y")))
        with pytest.raises(RuleError):
            t.validate(2)

    def test_parse_file(self):
        rules = parse_aut_rules(
            "swap: x -> y, y -> x\n"
            "t: x -> x y ; inverse: x -> x y^-1   # y fixed\n",
            2,
        )
        assert [r.name for r in rules] == ["swap", "t"]
        assert rules[1].apply(F2.parse("x")) == F2.parse("x y")
        with pytest.raises(RuleError):
            parse_aut_rules("bad: x -> x y\n", 2)

    def test_substitute(self):
        assert substitute((F2.parse("x y"), F2.parse("y")), F2.parse("x^-1")) == F2.parse("y^-1 x^-1")


def _ball_check(phi, rules, radius=6):
    """Direct membership test on the ball: kernel words map into the kernel."""
    for w in reduced_words_up_to(phi.rank, radius):
        if not phi.kills(w):
            continue
        for rule in rules:
            if not phi.kills(rule.apply(w)) or not phi.kills(rule.apply_inverse(w)):
                return False
    return True


class TestKernelInvariance:
    def test_mod2_abelianisation(self):
        C, g, e = c2()
        P = product_group([C, C])
        phi = Hom(P, [(g, e), (e, g)])
        assert kernel_invariant(phi, nielsen_rules(2))

    def test_single_c2(self):
        C, g, e = c2()
        transvect = nielsen_rules(2)[-1]
        assert not kernel_invariant(Hom(C, [g, g]), [transvect])

    def test_trivial_target(self):
        T = cyclic_group(1)
        assert kernel_invariant(Hom(T, [T.identity, T.identity]), nielsen_rules(2))

    @pytest.mark.parametrize("images", [
        ((1, 0, 2), (0, 2, 1)), ((1, 2, 0), (1, 2, 0)), ((1, 2, 0), (0, 1, 2)), ((1, 0, 2), (1, 0, 2)),
    ])
    def test_agrees_with_ball(self, images):
        phi = Hom(symmetric_group(3), images)
        for rule in nielsen_rules(2):
            assert kernel_invariant(phi, [rule]) == _ball_check(phi, [rule])


class TestCore:
    def test_characteristic_input(self):
        C, g, e = c2()
        P = product_group([C, C])
        phi = Hom(P, [(g, e), (e, g)])
        core = invariant_core(phi, nielsen_rules(2))
        assert core.orbit_size == 1
        assert kernels_equal(core.hom, Hom(core.hom.target, core.hom.images))
        assert core.image_order == 4

    def test_swap_orbit(self):
        C, g, e = c2()
        core = invariant_core(Hom(C, [g, e]), [SWAP])
        assert core.orbit_size == 2 and core.image_order == 4
        assert kernel_invariant(core.hom, [SWAP])

    def test_blowup(self):
        C = cyclic_group(11)
        with pytest.raises(OrbitUnbounded):
            invariant_core(Hom(C, [C.gens[0], C.identity]), nielsen_rules(2), orbit_cap=8)


class TestProjection:
    def test_second_factor(self):
        A5 = alternating_group(5)
        P = product_group([A5, A5])
        a = perm_from_cycles(5, [(1, 2, 3)])
        b = perm_from_cycles(5, [(1, 2, 3, 4, 5)])
        phi = Hom(P, [(A5.identity, a), (b, b)])
        j, proj = project_to_factor(phi, element=F2.parse("x"))
        assert j == 1 and proj.images == (a, b)

    def test_first_survivor(self):
        A5 = alternating_group(5)
        P = product_group([A5, A5])
        a = perm_from_cycles(5, [(1, 2, 3)])
        phi = Hom(P, [(a, a), (a, a)])
        assert project_to_factor(phi, element=F2.parse("x"))[0] == 0

    def test_single_factor(self):
        S3 = symmetric_group(3)
        P = product_group([S3])
        phi = Hom(P, [((1, 0, 2),), ((1, 2, 0),)])
        _, proj = project_to_factor(phi, 0)
        assert kernels_equal(proj, Hom(S3, [(1, 0, 2), (1, 2, 0)]))

    def test_dead_element(self):
        C, g, e = c2()
        phi = Hom(product_group([C, C]), [(g, e), (e, g)])
        with pytest.raises(ValueError):
            project_to_factor(phi, element=F2.parse("x^2"))

    def test_fixed_factors_keep_invariance(self):
        C2, C3 = cyclic_group(2), cyclic_group(3)
        P = product_group([C2, C3])
        img = (C2.gens[0], C3.gens[0])
        phi = Hom(P, [img, img])
        assert kernel_invariant(phi, [SWAP])
        for j in (0, 1):
            assert kernel_invariant(project_to_factor(phi, j)[1], [SWAP])

    def test_permuted_factors_isotypic(self):
        A5 = alternating_group(5)
        psi = Hom(A5, [perm_from_cycles(5, [(1, 2, 3)]), perm_from_cycles(5, [(1, 2, 3, 4, 5)])])
        core = invariant_core(psi, [SWAP])
        assert core.orbit_size == 2
        phi = core.hom
        assert kernel_invariant(phi, [SWAP])
        _, single = project_to_factor(phi, 0)
        assert not kernel_invariant(single, [SWAP])
        _, block = project_to_factor(phi, 0, mode="isotypic")
        assert kernel_invariant(block, [SWAP])


class TestCurves:
    def test_oracle(self, catalog):
        rows = rf_curve(OracleSource(2, catalog), 3)
        assert rows[0] == (1, 2)
        assert rows[1] == (2, 3)  # x^2 needs C3
        assert [v for _, v in rows] == sorted(v for _, v in rows)

    def test_pipeline(self):
        from rfcert.groupfile import load_bundled

        rows = rf_curve(PipelineSource(load_bundled("sanov")), 4)
        values = [v for _, v in rows]
        assert len(rows) == 4 and values == sorted(values)
        assert curve_csv(rows).splitlines()[0] == "n,value"

    def test_fit_exact(self):
        fit = fit_polynomial([(n, n**2) for n in range(1, 8)])
        assert abs(fit.exponent - 2) < 1e-9
        C, d, r = fit_polynomial([(n, 3 * n**3) for n in range(1, 8)])
        assert C == pytest.approx(3) and d == pytest.approx(3) and r < 1e-9

    def test_fit_constant(self):
        assert abs(fit_polynomial([(n, 7) for n in range(1, 5)]).exponent) < 1e-12

    @pytest.mark.parametrize("bad", [[(1, 1), (2, 2)], [(1, 0), (2, 1), (3, 2)], [(1, 1), (1, 2), (1, 3)]])
    def test_fit_degenerate(self, bad):
        with pytest.raises(ValueError):
            fit_polynomial(bad)

    def test_nmax(self, catalog):
        with pytest.raises(ValueError):
            rf_curve(OracleSource(2, catalog), 0)
        assert math.isfinite(fit_polynomial([(1, 2), (2, 3), (3, 3)]).exponent)
