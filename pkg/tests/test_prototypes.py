import pytest
from hypothesis import given
from hypothesis import strategies as st

from prymperm.errors import ConnectedLocus, InadmissibleSpec, NotADiscriminant
from prymperm.prototypes import (LocusStatus, Prototype, admissible_range, aux_prototypes,
                                 component_tag, locus_status, predicted_group,
                                 reduced_prototypes, same_component)

from oracles import brute_R, brute_S


def test_locus_status():
    assert locus_status(17) is LocusStatus.TWO_COMPONENTS
    assert locus_status(16) is LocusStatus.EMPTY
    assert locus_status(12) is LocusStatus.CONNECTED
    assert locus_status(8) is LocusStatus.CONNECTED
    with pytest.raises(NotADiscriminant):
        locus_status(7)


def test_reduced_sets():
    assert reduced_prototypes(17) == [-3, -1]
    assert reduced_prototypes(25) == [-3, -1]
    assert reduced_prototypes(8) == []
    assert reduced_prototypes(73) == [-7, -5, -3, -1, 1, 3]


def test_aux_sets():
    assert aux_prototypes(5) == [-1]
    assert aux_prototypes(2) == []


def test_brute_force_agreement():
    for D in range(1, 501):
        if D % 4 in (0, 1):
            assert reduced_prototypes(D) == brute_S(D), D
        assert aux_prototypes(D) == brute_R(D), D


def test_half_S_is_R_quarter():
    for D in admissible_range(17, 500):
        if D % 2 == 0:
            assert [e // 2 for e in reduced_prototypes(D)] == aux_prototypes(D // 4), D
            assert all(e % 2 == 0 for e in reduced_prototypes(D))


def test_parity_of_S():
    for D in admissible_range(5, 500):
        assert all((e - D) % 2 == 0 for e in reduced_prototypes(D))


def test_odd_choices_present():
    for D in admissible_range(33, 500):
        if D % 16 == 1:
            assert {-5, -3} <= set(reduced_prototypes(D))
        elif D % 16 == 9 and D >= 41:
            assert {-1, 1} <= set(reduced_prototypes(D))


def test_same_component_examples():
    assert not same_component("A+", -3, "A-", -3, 17)
    assert not same_component("A+", -5, "A+", -3, 33)
    assert same_component("A-", -1, "A-", -1, 41)
    with pytest.raises(ConnectedLocus):
        same_component("A+", -2, "A+", -2, 20)


@given(st.sampled_from([D for D in admissible_range(17, 500) if D % 2]))
def test_same_component_is_two_class_equivalence(D):
    items = [(m, e) for m in ("A+", "A-") for e in reduced_prototypes(D)]
    rel = {(a, b): same_component(*a, *b, D) for a in items for b in items}
    for a in items:
        assert rel[(a, a)]
        for b in items:
            assert rel[(a, b)] == rel[(b, a)]
            for c in items:
                if rel[(a, b)] and rel[(b, c)]:
                    assert rel[(a, c)]
    classes = {frozenset(b for b in items if rel[(a, b)]) for a in items}
    assert len(classes) == 2
    assert {component_tag(m, e, D) for m, e in items} == {"plus", "minus"}


def test_predicted_group():
    assert predicted_group(8) == "Sym3"
    assert predicted_group(68) == "Sym2"
    assert predicted_group(41) == "Sym3"


def test_admissible_range():
    assert admissible_range(5, 30) == [8, 12, 17, 20, 24, 25, 28]
    assert admissible_range(16, 16) == []


def test_prototype_constraints():
    p = Prototype(1, 4, 2, -3)
    assert p.d_param == 73
    with pytest.raises(InadmissibleSpec):
        Prototype(1, 7, 3, -3)  # a must be below gcd(b, c) = 1
    with pytest.raises(InadmissibleSpec):
        Prototype(0, 1, 1, 0)  # 2c + e < b fails
    assert Prototype.reduced(17, -3) == Prototype(0, 1, 1, -3)
