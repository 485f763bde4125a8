import pytest

from rfcert.finite_groups import (
    CapacityError,
    FiniteGroup,
    alternating_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    perm_from_cycles,
    perm_mul,
    product_group,
    symmetric_group,
)
from rfcert.rfgrowth.small_groups import (
    KNOWN_COUNTS,
    TableGroup,
    automorphisms,
    groups_of_order,
    isomorphism,
    named_groups_of_order,
)


def test_perm_mul_applies_left_first():
    a = perm_from_cycles(3, [(1, 2)])
    b = perm_from_cycles(3, [(2, 3)])
    # apply a then b: 1 -> 2 -> 3
    assert perm_mul(a, b)[0] == 2


@pytest.mark.parametrize("G,n", [
    (symmetric_group(4), 24), (alternating_group(5), 60), (cyclic_group(7), 7), (dihedral_group(10), 10),
])
def test_orders(G, n):
    assert G.order == n


def test_element_orders_and_center():
    S3 = symmetric_group(3)
    assert sorted(S3.element_orders()) == [1, 2, 2, 2, 3, 3]
    assert S3.center().order == 1
    assert S3.derived_subgroup().order == 3
    assert S3.is_solvable()
    assert not alternating_group(5).is_solvable()


def test_derived_series_s4():
    orders = [H.order for H in symmetric_group(4).derived_series()]
    assert orders[:4] == [24, 12, 4, 1]


def test_normal_closure():
    S5 = symmetric_group(5)
    t = perm_from_cycles(5, [(1, 2)])
    assert S5.normal_closure([t]).order == 120
    c = perm_from_cycles(5, [(1, 2, 3)])
    assert S5.normal_closure([c]).order == 60


def test_capacity():
    with pytest.raises(CapacityError):
        FiniteGroup.from_permutations(symmetric_group(5).gens, cap=10)


def test_conjugacy_classes():
    assert len(symmetric_group(4).conjugacy_class_reps()) == 5
    assert len(alternating_group(5).conjugacy_class_reps()) == 5


def test_products():
    P = product_group([cyclic_group(2), cyclic_group(3)])
    assert P.order == 6 and P.is_abelian()
    assert len(P.factors) == 2
    D = direct_product(cyclic_group(2), symmetric_group(3))
    assert D.order == 12


def test_evaluate_word():
    S3 = symmetric_group(3)
    a, b = perm_from_cycles(3, [(1, 2)]), perm_from_cycles(3, [(1, 3)])
    comm = S3.evaluate(((0, -1), (1, -1), (0, 1), (1, 1)), [a, b])
    assert comm == S3.commutator(a, b) != S3.identity


class TestSmallGroups:
    def test_counts_match(self):
        for n, expected in enumerate(KNOWN_COUNTS, start=1):
            assert len(groups_of_order(n)) == expected

    def test_names(self):
        names8 = {name for name, _ in named_groups_of_order(8)}
        assert {"C8", "C2xC4", "C2xC2xC2", "Q8", "D8"} == names8
        names24 = {name for name, _ in named_groups_of_order(24)}
        assert {"S4", "SL(2,3)", "D24"} <= names24

    def test_tables_are_groups(self):
        for n in (8, 12, 18):
            for g in groups_of_order(n):
                t = g.t
                for a in range(n):
                    for b in range(n):
                        for c in range(0, n, 3):
                            assert t[t[a][b]][c] == t[a][t[b][c]]

    def test_automorphism_counts(self):
        c2cube = next(g for name, g in named_groups_of_order(8) if name == "C2xC2xC2")
        assert len(automorphisms(c2cube)) == 168
        s3 = next(g for name, g in named_groups_of_order(6) if name == "D6")
        assert len(automorphisms(s3)) == 6

    def test_isomorphism_detects_relabelling(self):
        g = groups_of_order(12)[3]
        perm = list(range(12))
        perm[1], perm[5] = perm[5], perm[1]
        inv = {v: i for i, v in enumerate(perm)}
        relabelled = [[perm[g.t[inv[a]][inv[b]]] for b in range(12)] for a in range(12)]
        assert isomorphism(g, TableGroup(relabelled)) is not None
        assert isomorphism(g, groups_of_order(12)[4]) is None
