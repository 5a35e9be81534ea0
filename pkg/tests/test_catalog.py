"""Catalog family constructors: orders, invariants, presentation cross-checks."""

import pytest

from factgraph.catalog import (abelian_of_type, alt, catalog_group,
                               catalog_presentation, cyclic, dihedral,
                               elementary_abelian, frobenius,
                               generalized_quaternion, k14_family, metacyclic,
                               modular_maximal_cyclic, semidihedral,
                               sixteen_group, sym)
from factgraph.errors import ValidationError
from factgraph.groups import GroupTable, center_mask, conjugate_mask
from factgraph.presentations import satisfies_presentation
from factgraph.verify import are_isomorphic


def test_quaternion_unique_involution():
    g = generalized_quaternion(8)
    assert g.order == 8
    assert sum(1 for o in g.element_orders() if o == 2) == 1


def test_k14_family_order_and_normal_sylow3():
    g = k14_family(3)
    assert g.order == 24
    assert not g.is_abelian()
    y = next(x for x in range(24) if g.element_order(x) == 3)
    sylow3 = g.closure([y])
    assert sylow3.bit_count() == 3
    for h in range(24):
        assert conjugate_mask(g, sylow3, h) == sylow3


def test_g3_has_order_16():
    assert sixteen_group(3).order == 16


def test_sixteen_groups_pairwise_distinct():
    tables = [sixteen_group(i) for i in (1, 2, 3, 4)]
    for i in range(4):
        for j in range(i + 1, 4):
            assert not are_isomorphic(tables[i], tables[j])[0]


def test_g4_is_quaternion16():
    assert are_isomorphic(sixteen_group(4), generalized_quaternion(16))[0]
    assert not are_isomorphic(sixteen_group(4), semidihedral(16))[0]


def test_metacyclic_matches_dihedral():
    assert are_isomorphic(metacyclic(5, 1, 2, 1, 4), dihedral(10))[0]


def test_metacyclic_rejects_wrong_lambda_order():
    with pytest.raises(ValidationError, match="order"):
        metacyclic(7, 1, 3, 1, 6)  # ord_7(6) = 2, not 3


@pytest.mark.parametrize("bad", [
    lambda: k14_family(0),
    lambda: generalized_quaternion(12),
    lambda: semidihedral(8),
    lambda: modular_maximal_cyclic(8),
    lambda: dihedral(7),
    lambda: elementary_abelian(4, 2),
    lambda: frobenius(7, 4),        # 4 does not divide 6
    lambda: catalog_group("Nope", 3),
])
def test_invalid_parameters(bad):
    with pytest.raises(ValidationError):
        bad()


def test_frobenius_cyclic_kernel():
    g = frobenius(7, 3)
    assert g.order == 21
    assert center_mask(g) == 1


def test_frobenius_matrix_kernel_is_a4():
    g = frobenius(2, 3, 2)
    assert g.order == 12
    assert are_isomorphic(g, alt(4))[0]


def test_frobenius_f20():
    g = frobenius(5, 4)
    assert g.order == 20
    assert g.order_histogram() == ((1, 1), (2, 5), (4, 10), (5, 4))


def test_sym_alt_orders():
    assert sym(3).order == 6
    assert sym(4).order == 24
    assert alt(4).order == 12
    assert alt(5).order == 60
    assert sym(1).order == 1 and alt(2).order == 1


@pytest.mark.parametrize("family, params", [
    ("Cyclic", (12,)),
    ("AbelianOfType", (4, 2)),
    ("ElementaryAbelian", (3, 2)),
    ("Dihedral", (12,)),
    ("GeneralizedQuaternion", (16,)),
    ("SemiDihedral", (16,)),
    ("Modular", (16,)),
    ("Metacyclic", (5, 1, 2, 1, 4)),
    ("K14Family", (2,)),
    ("Frobenius", (7, 3)),
    ("G1", ()),
    ("G2", ()),
])
def test_catalog_groups_satisfy_their_presentations(family, params):
    g = catalog_group(family, *params)
    pres = catalog_presentation(family, *params)
    assert pres is not None
    ok, witness = satisfies_presentation(g, pres)
    assert ok and witness is not None


@pytest.mark.parametrize("family, params", [
    ("Dihedral", (8,)),
    ("GeneralizedQuaternion", (16,)),
    ("SemiDihedral", (32,)),
    ("Modular", (32,)),
    ("Metacyclic", (3, 2, 2, 1, 8)),
    ("K14Family", (3,)),
    ("Frobenius", (5, 4)),
])
def test_presentation_realization_matches_table(family, params):
    """Coset enumeration and the direct table construction agree."""
    from factgraph.presentations import group_from_presentation
    direct = catalog_group(family, *params)
    via_pres = group_from_presentation(catalog_presentation(family, *params))
    assert via_pres.order == direct.order
    assert are_isomorphic(direct, via_pres)[0]


@pytest.mark.parametrize("builder", [
    lambda: cyclic(16),
    lambda: dihedral(16),
    lambda: generalized_quaternion(16),
    lambda: semidihedral(16),
    lambda: modular_maximal_cyclic(16),
    lambda: k14_family(2),
    lambda: frobenius(5, 4),
    lambda: abelian_of_type(9, 3),
    lambda: sixteen_group(1),
])
def test_catalog_tables_fully_associative(builder):
    g = builder()
    # GroupTable re-validation with the exhaustive associativity check
    GroupTable(g.mul, g.labels, check_associativity=True)
