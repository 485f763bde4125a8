"""End-to-end acceptance checks, one test (or class) per criterion."""

import math
import random
import time
from collections import Counter
from functools import lru_cache

import pytest

from rfcert.finite_groups import cyclic_group, product_group, symmetric_group
from rfcert.groupfile import load_bundled
from rfcert.lietype import TITS_EXCEPTIONS, FrobeniusSemidirect, LieTypeId, lie_order, sl_rep
from rfcert.matgroup import check_coeff_bound, check_degree_bound
from rfcert.ring import MultiPoly, enumerate_irreducibles, gauss_irreducible_count, prime_power
from rfcert.rfgrowth import (
    Hom,
    PipelineSource,
    default_catalog,
    depth,
    fit_polynomial,
    invariant_core,
    kernel_invariant,
    nielsen_rules,
    rf_curve,
)
from rfcert.separate import (
    build_specialization,
    normal_closure_derived_depth,
    separate_element,
    specialization_image,
    verify_certificate,
)
from rfcert.specialize import reduce_to_one_variable, specialize_group_char0
from rfcert.witness import MalabelianContext, derived_witness, lcm_witness
from rfcert.words import FreeGroup, random_reduced_word, reduced_words_up_to

F2 = FreeGroup(2)


@pytest.fixture(scope="module")
def sanov():
    return load_bundled("sanov")


@pytest.fixture(scope="module")
def catalog():
    return default_catalog()


@pytest.fixture(scope="module")
def s5_homs():
    S5 = symmetric_group(5)
    rng = random.Random(1234)
    return S5, [(rng.choice(S5.elements), rng.choice(S5.elements)) for _ in range(50)]


# 1
def test_variable_reduction_random_polynomials():
    rng = random.Random(2024)
    start = time.perf_counter()
    done = 0
    while done < 500:
        s = rng.randint(1, 3)
        p = rng.choice([0, 2, 3, 5])
        terms = {}
        for _ in range(rng.randint(1, 6)):
            exp = [0] * s
            for _ in range(rng.randint(0, 4)):
                exp[rng.randrange(s)] += 1
            terms[tuple(exp)] = rng.randint(-9, 9)
        f = MultiPoly(s, terms, p)
        if f.is_zero():
            continue
        r = reduce_to_one_variable(f)
        assert not r.g.is_zero()
        box = max(f.degree(), 2) ** (2 * s)
        assert all(0 <= n <= box for n in r.n_vec)
        done += 1
    assert time.perf_counter() - start < 10


# 2
def test_gauss_counts():
    start = time.perf_counter()
    for p in (2, 3, 5):
        by_degree = Counter(f.degree() for f in enumerate_irreducibles(p, 6))
        for m in range(1, 7):
            assert by_degree[m] == gauss_irreducible_count(p, m)
    assert gauss_irreducible_count(2, 2) == 1 and gauss_irreducible_count(2, 3) == 2
    assert time.perf_counter() - start < 5


# 3
def test_sanov_pipeline_all_short_words(sanov):
    start = time.perf_counter()

    @lru_cache(maxsize=None)
    def image_order(p):
        return specialization_image(specialize_group_char0(sanov, (), 0, p)).order

    count = 0
    for w in reduced_words_up_to(2, 6):
        cert = separate_element(sanov, w)
        assert verify_certificate(sanov, cert) == (True, "ok")
        sm = build_specialization(sanov, cert)
        assert sm.image_word(w) != sm.identity
        assert image_order(cert.p) <= cert.p**4
        assert cert.order_bound == cert.p**4
        count += 1
    assert count == 1456
    assert time.perf_counter() - start < 60


# 4
def test_known_depths(catalog):
    r1 = depth(2, F2.parse("x"), catalog)
    r2 = depth(2, F2.parse("[x,y]"), catalog)
    assert (r1.order, r1.exhaustive) == (2, True)
    assert (r2.order, r2.exhaustive) == (6, True)


# 5
def test_oracle_below_pipeline(sanov, catalog):
    rng = random.Random(55)
    for _ in range(100):
        w = random_reduced_word(2, rng.randint(1, 5), rng)
        # A, B generate a free group, so the same word can be fed to the oracle over F_2
        d = depth(2, w, catalog).order
        cert = separate_element(sanov, w)
        assert d <= cert.order_bound


# 6
def test_witness_properties(s5_homs):
    S5, homs = s5_homs
    ctx = MalabelianContext.free(2)
    rng = random.Random(66)

    @lru_cache(maxsize=None)
    def deep(x, n):
        return normal_closure_derived_depth(S5, x, n)

    for _ in range(200):
        a = random_reduced_word(2, rng.randint(1, 4), rng)
        n = rng.randint(0, 3)
        rec = derived_witness(ctx, a, n)
        assert rec.word and rec.length <= 8**n * max(len(a), rec.effective_kappa)
        for images in homs:
            pa = S5.evaluate(a, images)
            pw = S5.evaluate(rec.word, images)
            if pa == S5.identity:
                assert pw == S5.identity
            assert pw in deep(pa, n)


# 7
def test_lcm_properties(s5_homs):
    S5, homs = s5_homs
    ctx = MalabelianContext.free(2)
    rng = random.Random(77)
    for _ in range(100):
        T = [random_reduced_word(2, rng.randint(1, 4), rng) for _ in range(rng.randint(1, 4))]
        rec = lcm_witness(ctx, T)
        longest = max(len(t) for t in T)
        assert rec.word and rec.length <= 4 * len(T) ** 2 * (longest + 3 * rec.effective_kappa)
        for images in homs:
            if S5.evaluate(rec.word, images) != S5.identity:
                assert all(S5.evaluate(t, images) != S5.identity for t in T)


# 8
def _classical_ids():
    qs = [q for q in range(2, 33) if _is_prime_power(q)]
    for family, low in (("A", 1), ("B", 2), ("C", 3), ("D", 4), ("2A", 2)):
        for rank in range(low, 5):
            for q in qs:
                yield LieTypeId(family, rank, q)


def _is_prime_power(q):
    try:
        prime_power(q)
        return True
    except ValueError:
        return False


def test_lie_type_orders_and_tits():
    ids = list(_classical_ids())
    assert len(ids) > 100
    for lid in ids:
        assert lie_order(lid) % lid.q == 0, lid
    assert TITS_EXCEPTIONS == ["SL_2(2)", "SL_2(3)", "SU_3(2)", "Sp_4(2)", "G_2(2)", "²B_2(2)", "²G_2(3)", "²F_4(2)"]


# 9
def test_frobenius_semidirect_sl24():
    start = time.perf_counter()
    fs = FrobeniusSemidirect(sl_rep(2, 4))
    els = fs.elements()
    assert len(els) == 120
    images = {a: fs.embed(*a) for a in els}
    assert len(set(images.values())) == 120
    mm = fs.big.matmul
    for a in els:
        for b in els:
            assert images[fs.pair_mul(a, b)] == mm(images[a], images[b])
    assert all(len(m) == 4 for m in images.values())
    assert time.perf_counter() - start < 30


# 10
def test_degree_and_coefficient_bounds():
    spec = load_bundled("poly")
    rng = random.Random(10)
    for _ in range(500):
        w = spec.random_word(rng.randint(1, 12), rng)
        assert check_degree_bound(spec, w).holds
        assert check_coeff_bound(spec, w).holds


# 11
def test_growth_curve_fit(sanov):
    rows = rf_curve(PipelineSource(sanov), 6)
    values = [v for _, v in rows]
    assert len(values) == 6 and values == sorted(values)
    fit = fit_polynomial(rows)
    assert math.isfinite(fit.exponent) and fit.residual < 1.0


# 12
class TestInvariance:
    def setup_method(self):
        self.C2 = cyclic_group(2)
        self.g, self.e = self.C2.gens[0], self.C2.identity

    def test_mod2_abelianisation_invariant(self):
        P = product_group([self.C2, self.C2])
        phi = Hom(P, [(self.g, self.e), (self.e, self.g)])
        for rule in nielsen_rules(2):
            assert kernel_invariant(phi, [rule]), rule.name

    def test_single_c2_not_invariant(self):
        assert not kernel_invariant(Hom(self.C2, [self.g, self.e]), nielsen_rules(2))

    def test_core_recovers_klein_four(self):
        core = invariant_core(Hom(self.C2, [self.g, self.e]), nielsen_rules(2))
        assert core.image_order == 4
        assert kernel_invariant(core.hom, nielsen_rules(2))
        Q = core.hom.image()
        assert Q.is_abelian() and all(Q.element_order(x) <= 2 for x in Q.elements)
