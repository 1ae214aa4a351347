"""The ambient-image model, presented rings, and torsion-ideal certificates."""

import pytest

from rostcalc.catalog import (
    build_chow_rost,
    build_pfister_neighbor_chow,
    chow_rost_ring,
    restriction_map,
)
from rostcalc.graded import GradedMap, free_module
from rostcalc.omega import (
    BasisClass,
    DegreeRule,
    OmegaImageModel,
    OmegaModelError,
    PresentedRing,
    chow_collapse,
    ideal_power_witness,
    ring_tensor,
    torsion_ideal,
)


def test_degree_rule_tables():
    assert DegreeRule(3, 2).y_degree == 4
    assert DegreeRule(2, 3).y_degree == 7
    assert DegreeRule(3, 2).c_degree(1) == 2
    assert DegreeRule(3, 2).c_degree(0, 2) == 8
    assert DegreeRule(2, 3).c_degree(2) == 4


def test_monomial_truncation():
    m = OmegaImageModel(p=3, factor_ns=(2,))
    y = m.monomial(1, (), (1,))
    y2 = m.mul(y, y)
    assert m.element_degree(y2) == 8
    assert m.mul(y2, y) == {}  # y^3 = 0 at p = 3


def test_res_classes():
    m = OmegaImageModel(p=3, factor_ns=(2,))
    assert m.res_class(0, 0, 1) == {((), (1,)): 3}  # c_0(y) goes to 3y
    assert m.res_class(0, 1, 2) == {(((1, 1),), (2,)): 1}  # c_1(y^2) to v_1 y^2
    with pytest.raises(OmegaModelError):
        m.res_class(0, 2, 1)  # no c_2 when n = 2


def test_image_coefficients_lie_in_the_ideal():
    for p, ns in [(2, (2,)), (3, (2,)), (2, (3, 3))]:
        assert OmegaImageModel(p=p, factor_ns=ns).image_coefficients_in_ideal()


def test_commutation_identity_holds():
    m = OmegaImageModel(p=2, factor_ns=(4,))
    for r in range(0, 4):
        for s in range(r + 1, 4):
            assert m.check_commutation_identity(r, s)


def test_commutation_identity_detects_wrong_pairing():
    # anti-vacuity: v_s res(c_r) must differ from v_r res(c_w) when w != s
    m = OmegaImageModel(p=2, factor_ns=(4,))
    v2 = m.monomial(1, ((2, 1),), (0,))
    v1 = m.monomial(1, ((1, 1),), (0,))
    lhs = m.mul(v2, m.res_class(0, 1, 1))
    wrong = m.mul(v1, m.res_class(0, 3, 1))
    assert lhs != wrong


def test_inhomogeneous_degree_raises():
    m = OmegaImageModel(p=2, factor_ns=(2,))
    mixed = m.add(m.monomial(1, (), (1,)), m.monomial(1, (), (0,)))
    with pytest.raises(OmegaModelError):
        m.element_degree(mixed)


def toy_ring():
    basis = (
        BasisClass("1", 0, 0),
        BasisClass("t", 2, 1),
        BasisClass("t2", 4, 1),
    )
    mult = {(1, 1): {2: 1}, (1, 2): {}, (2, 1): {}, (2, 2): {}}
    for k in range(3):  # the unit rows are part of the table, not implicit
        mult[(0, k)] = {k: 1}
        mult[(k, 0)] = {k: 1}
    return PresentedRing(p=2, basis=basis, unit=0, mult=mult, generators=(1,))


def test_presented_ring_multiply_and_power():
    R = toy_ring()
    R.audit()
    t = R.basis_vector("t")
    assert R.multiply(t, t) == {2: 1}
    assert R.power(t, 2) == {2: 1}
    assert R.power(t, 3) == {}
    # torsion coefficients are reduced mod p
    assert R.multiply({1: 2}, t) == {}


def test_audit_catches_broken_unit():
    basis = (BasisClass("1", 0, 0), BasisClass("x", 2, 0))
    bad = PresentedRing(
        p=2, basis=basis, unit=0, mult={(0, 1): {1: 2}, (1, 0): {1: 2}}, generators=(1,)
    )
    with pytest.raises(OmegaModelError):
        bad.audit()


def test_audit_catches_noncommutative_table():
    basis = (BasisClass("1", 0, 0), BasisClass("x", 2, 0), BasisClass("y", 2, 0))
    bad = PresentedRing(
        p=2,
        basis=basis,
        unit=0,
        mult={(1, 2): {1: 1}, (2, 1): {2: 1}},
        generators=(1, 2),
    )
    with pytest.raises(OmegaModelError):
        bad.audit()


def test_ring_tensor_torsion_exponents():
    R = chow_rost_ring(2, 2, var="y_1")
    S = chow_rost_ring(2, 2, var="y_2")
    T = ring_tensor(R, S)
    by_name = {b.name: b for b in T.basis}
    assert by_name["c_0(y_1)*c_0(y_2)"].torsion_exp == 0
    assert by_name["c_1(y_1)*c_1(y_2)"].torsion_exp == 1
    assert by_name["c_1(y_1)*c_0(y_2)"].torsion_exp == 1
    # the unit is absorbed rather than spelled as 1*1
    assert "1" in by_name and "1*1" not in by_name


def test_chow_collapse_reproduces_structure_constants():
    for p, n in [(3, 2), (2, 3)]:
        collapsed = chow_collapse(OmegaImageModel(p=p, factor_ns=(n,)))
        reference = chow_rost_ring(p, n)
        names = [b.name for b in reference.basis]
        assert [b.name for b in collapsed.basis] == names
        for a in names:
            for b in names:
                left = collapsed.multiply(
                    collapsed.basis_vector(a), collapsed.basis_vector(b)
                )
                right = reference.multiply(
                    reference.basis_vector(a), reference.basis_vector(b)
                )
                left_named = {collapsed.basis[k].name: c for k, c in left.items()}
                right_named = {reference.basis[k].name: c for k, c in right.items()}
                assert left_named == right_named, (a, b)


def test_torsion_ideal_names():
    obj = build_chow_rost(2, 3)
    names = torsion_ideal(obj.ring, restriction_map(obj))
    assert set(names) == {"c_1(y)", "c_2(y)"}


def test_torsion_ideal_rejects_nonvanishing_restriction():
    ring = toy_ring()
    tgt = free_module(2, [(0, "1"), (2, "u"), (4, "w")])
    bad_res = GradedMap(
        source=ring.module(),
        target=tgt,
        matrices={0: ((1,),), 2: ((1,),), 4: ((0,),)},
    )
    with pytest.raises(OmegaModelError):
        torsion_ideal(ring, bad_res)


def test_ideal_power_witness_finds_products():
    R = toy_ring()
    w = ideal_power_witness(R, ["t"], 2)
    assert w is not None
    assert w.factors == ("t", "t")
    assert w.vector == (("t2", 1),)
    assert w.degree == 4
    assert ideal_power_witness(R, ["t"], 3) is None


def test_rost_torsion_square_vanishes():
    obj = build_chow_rost(2, 3)
    names = torsion_ideal(obj.ring, restriction_map(obj))
    assert ideal_power_witness(obj.ring, names, 2) is None


def test_pfister_torsion_square_vanishes():
    obj = build_pfister_neighbor_chow(3)
    names = torsion_ideal(obj.ring, restriction_map(obj))
    assert names  # u_1, u_2 and their h-multiples
    assert ideal_power_witness(obj.ring, names, 2) is None
