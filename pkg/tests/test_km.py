"""Morava-side presentations: base change, localization, geometric filtration."""

import pytest

from rostcalc.catalog import chow_rost_ring, km_rost
from rostcalc.graded import iso_equal, normalize
from rostcalc.km import (
    KmModuleError,
    KmPresentation,
    check_cor_3_5_second,
    free_km,
    gr_geometric,
    km_quotient,
    localize_v,
    rel_unit,
    slice_membership,
    to_chow,
    v_torsion_generators,
)


def test_homogeneity_enforced():
    with pytest.raises(KmModuleError):
        KmPresentation(p=2, m=1, gens=(("a", 0), ("b", 3)), rels=(((1,), (1,)),))


def test_rel_unit_shapes():
    M = free_km(2, 1, [("a", 0), ("b", 2)])
    assert rel_unit(M, "b") == ((), (1,))
    assert rel_unit(M, "a", shift=2, coeff=3) == ((0, 0, 3), ())


def test_to_chow_drops_v_multiples():
    # p*a = 0 survives v -> 0; v*b = 0 does not constrain the Chow side
    M = free_km(2, 1, [("a", 2), ("b", 2)])
    M = km_quotient(M, [rel_unit(M, "a", coeff=2), rel_unit(M, "b", shift=1)])
    nf = normalize(to_chow(M))
    assert nf.at(2) == (1, (1,))
    # ... but b is v-torsion and the localization forgets it
    inv = localize_v(M)
    assert inv.aggregate() == (0, (1,))


def test_to_chow_matches_chow_ring_across_regimes():
    for p, n, m in [(2, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 1), (2, 3, 5)]:
        km = km_rost(p, n, m)
        assert iso_equal(to_chow(km), chow_rost_ring(p, n).module()), (p, n, m)


def test_v_torsion_generators_frozen():
    assert v_torsion_generators(km_rost(2, 3, 1)) == ("c_2(y)",)
    assert v_torsion_generators(km_rost(2, 4, 2)) == ("c_1(y)", "c_3(y)")
    # m >= n: every relation is p-scalar, nothing is v-torsion
    assert v_torsion_generators(km_rost(2, 2, 2)) == ()


def test_gr_geometric_frozen_table():
    nf = normalize(gr_geometric(km_rost(2, 3, 1)))
    assert nf.as_dict() == {0: (1, ()), 6: (0, (1,)), 7: (1, ())}


def test_localize_on_pure_p_torsion():
    M = free_km(2, 1, [("g", 0)])
    M = km_quotient(M, [rel_unit(M, "g", coeff=2)])
    inv = localize_v(M)
    assert inv.aggregate() == (0, (1,))
    assert not inv.anomalies


def test_localize_kills_v_torsion():
    M = free_km(3, 1, [("g", 4)])
    M = km_quotient(M, [rel_unit(M, "g", shift=1)])
    assert localize_v(M).aggregate() == (0, ())


def test_localize_km_rost_is_free_of_rank_p():
    for p, n, m in [(2, 3, 1), (3, 2, 1)]:
        inv = localize_v(km_rost(p, n, m))
        assert inv.aggregate() == (p, ())
        assert not inv.anomalies


def test_amalgam_membership_in_slices():
    km = km_rost(2, 3, 1)
    i0 = km.gen_index("c_0(y)")
    i1 = km.gen_index("c_1(y)")
    d = 6  # degree of c_1(y) and of v*c_0(y)
    assert slice_membership(km, {(i1, 0): 2, (i0, 1): -1}, d)
    assert not slice_membership(km, {(i1, 0): 2}, d)
    assert not slice_membership(km, {(i0, 1): 1}, d)


def test_slice_membership_scaling_invariance():
    # v-multiples of relations stay relations in lower slices
    km = km_rost(2, 3, 1)
    i0 = km.gen_index("c_0(y)")
    i1 = km.gen_index("c_1(y)")
    assert slice_membership(km, {(i1, 1): 2, (i0, 2): -1}, 5)
    assert slice_membership(km, {(i1, 2): 2, (i0, 3): -1}, 4)


def test_second_display_comparison():
    from rostcalc.omega import DegreeRule

    for p, n, m in [(2, 3, 1), (3, 2, 1)]:
        ydeg = DegreeRule(p, n).y_degree
        bar = free_km(
            p, m, [("1", 0)] + [(f"y^{j}" if j > 1 else "y", j * ydeg) for j in range(1, p)]
        )
        report = check_cor_3_5_second(km_rost(p, n, m), bar)
        assert report.verdict == "verified", (p, n, m, report.notes)
