"""Graded modules, normal forms, and the p-power filtration.

The filtration tests check gr_ps against literal element counting in finite
abelian p-groups, so the slot formula is never trusted on its own word.
"""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rostcalc.graded import (
    DegreeComponent,
    GradedFPModule,
    GradedMap,
    GradedModuleError,
    NormalForm,
    cyclic_summands,
    direct_sum,
    free_module,
    gr_ps,
    iso_equal,
    kill_generator,
    normalize,
    quotient,
    tensor_product,
    zero_module,
)


def test_normalize_mixed_component():
    # two generators with a single relation p^2 * a = 0
    M = cyclic_summands(2, [(3, 2, "a"), (3, 0, "b")])
    nf = normalize(M)
    assert nf.at(3) == (1, (2,))
    assert nf.aggregate() == (1, (2,))


def test_normalize_drops_collapsed_degrees():
    M = cyclic_summands(3, [(1, 0, "x")])
    N = quotient(M, [(1, (1,))])
    assert normalize(N).is_zero()


def test_normal_form_json_round_trip():
    nf = NormalForm.from_dict(5, {0: (1, ()), 4: (0, (1, 2))})
    assert NormalForm.from_json(nf.to_json()) == nf


def test_iso_equal_reports_differences():
    A = cyclic_summands(2, [(2, 1, "u")])
    B = cyclic_summands(2, [(2, 2, "u")])
    res = iso_equal(A, B)
    assert not res
    assert "degree 2" in res.diffs[0]
    assert iso_equal(A, A)


def test_direct_sum_adds_invariants():
    A = cyclic_summands(3, [(0, 0, "1"), (2, 1, "t")])
    B = cyclic_summands(3, [(2, 0, "u")])
    nf = normalize(direct_sum(A, B))
    assert nf.at(0) == (1, ())
    assert nf.at(2) == (1, (1,))


def test_tensor_of_cyclics():
    # Z/p^a (x) Z/p^b = Z/p^min(a,b), placed in the sum of the degrees
    for a, b in [(1, 1), (1, 2), (3, 2)]:
        A = cyclic_summands(2, [(2, a, "x")])
        B = cyclic_summands(2, [(4, b, "y")])
        nf = normalize(tensor_product(A, B))
        assert nf.as_dict() == {6: (0, (min(a, b),))}


def test_tensor_names_record_both_factors():
    A = free_module(2, [(0, "1"), (3, "x")])
    B = cyclic_summands(2, [(2, 1, "y")])
    T = tensor_product(A, B)
    assert T.names_at(2) == ("1*y",)
    assert T.names_at(5) == ("x*y",)


def test_tensor_with_unit_preserves_invariants():
    unit = free_module(3, [(0, "1")])
    M = cyclic_summands(3, [(0, 0, "1"), (2, 1, "c"), (5, 0, "z")])
    assert normalize(tensor_product(unit, M)).as_dict() == normalize(M).as_dict()


def test_tensor_is_symmetric_on_invariants():
    A = cyclic_summands(2, [(0, 0, "1"), (2, 1, "a")])
    B = cyclic_summands(2, [(0, 0, "1"), (3, 2, "b")])
    left = normalize(tensor_product(A, B)).as_dict()
    right = normalize(tensor_product(B, A)).as_dict()
    assert left == right


def test_quotient_validation():
    M = cyclic_summands(2, [(1, 0, "x")])
    with pytest.raises(GradedModuleError):
        quotient(M, [(9, (1,))])
    with pytest.raises(GradedModuleError):
        quotient(M, [(1, (1, 0))])


def test_kill_generator():
    M = cyclic_summands(2, [(2, 0, "x"), (2, 1, "t")])
    nf = normalize(kill_generator(M, "t"))
    assert nf.as_dict() == {2: (1, ())}
    with pytest.raises(GradedModuleError):
        kill_generator(M, "missing")


def test_gr_ps_frozen_example():
    # A+ = Z (+) Z/p^2 in degree 1; slots 1,2 have rank 2, the tail keeps Z
    A = cyclic_summands(2, [(0, 0, "1"), (1, 0, "x"), (1, 2, "t")])
    filt = gr_ps(A, 2)
    assert filt.slot_aggregate(0) == (1, ())
    assert filt.slot_aggregate(1) == (0, (1, 1))
    assert filt.slot_aggregate(2) == (0, (1, 1))
    assert filt.slot_aggregate(3) == (1, ())


def test_gr_ps_rejects_negative_degrees():
    A = cyclic_summands(2, [(-1, 0, "x")])
    with pytest.raises(GradedModuleError):
        gr_ps(A, 1)


def brute_force_slots(p, exponents, s):
    """Slot invariants of the p-power filtration on G = prod Z/p^e, by counting.

    Returns (ranks of p^{k-1}G/p^kG for k=1..s, invariant exponents of p^sG).
    """
    G = list(itertools.product(*[range(p**e) for e in exponents]))

    def scale(k):
        return {tuple((p**k * g) % p**e for g, e in zip(el, exponents)) for el in G}

    def logp(n):
        v = 0
        while n > 1:
            n //= p
            v += 1
        return v

    layers = [scale(k) for k in range(s + 1)]
    ranks = [logp(len(layers[k - 1]) // len(layers[k])) for k in range(1, s + 1)]
    tail = layers[s]
    # Ulm-style counting inside p^s G: c_j = log_p #{g : p^j g = 0}, and the
    # number of invariant factors of exponent >= j is c_j - c_{j-1}
    counts = []
    j = 0
    while True:
        c = sum(
            1
            for el in tail
            if all((p**j * g) % p**e == 0 for g, e in zip(el, exponents))
        )
        counts.append(logp(c))
        if c == len(tail):
            break
        j += 1
    ge = [counts[j] - counts[j - 1] for j in range(1, len(counts))]
    exact = []
    for j in range(1, len(ge) + 1):
        exact.extend([j] * (ge[j - 1] - (ge[j] if j < len(ge) else 0)))
    return tuple(ranks), tuple(sorted(exact))


@given(
    st.lists(st.integers(1, 4), min_size=1, max_size=3).filter(lambda e: sum(e) <= 6),
    st.integers(1, 3),
    st.sampled_from((2, 3)),
)
def test_gr_ps_matches_element_counting(exponents, s, p):
    A = cyclic_summands(p, [(i + 1, e, f"t{i}") for i, e in enumerate(exponents)])
    filt = gr_ps(A, s)
    ranks, tail = brute_force_slots(p, exponents, s)
    for k in range(1, s + 1):
        fr, tors = filt.slot_aggregate(k)
        assert fr == 0
        assert len(tors) == ranks[k - 1]
        assert all(e == 1 for e in tors)
    fr, tors = filt.slot_aggregate(s + 1)
    assert fr == 0
    assert tors == tail


def test_graded_map_well_defined_projection():
    src = cyclic_summands(2, [(1, 1, "t")])
    tgt = cyclic_summands(2, [(1, 1, "u")])
    f = GradedMap(source=src, target=tgt, matrices={1: ((1,),)})
    assert f.well_defined()


def test_graded_map_rejects_torsion_to_free():
    src = cyclic_summands(2, [(1, 1, "t")])
    tgt = cyclic_summands(2, [(1, 0, "u")])
    f = GradedMap(source=src, target=tgt, matrices={1: ((1,),)})
    res = f.well_defined()
    assert not res
    assert "degree 1" in res.diffs[0]


def test_graded_map_apply():
    src = free_module(2, [(2, "a"), (2, "b")])
    tgt = free_module(2, [(2, "u")])
    f = GradedMap(source=src, target=tgt, matrices={2: ((1, -1),)})
    assert f.apply(2, (3, 1)) == (2,)


def test_component_validation():
    with pytest.raises(GradedModuleError):
        DegreeComponent(gens=1, relations=((1, 0),), names=("x",))
    with pytest.raises(GradedModuleError):
        GradedFPModule(
            p=4, components={}, window=(0, 0)
        )


def test_zero_module_is_zero():
    assert normalize(zero_module(7)).is_zero()
