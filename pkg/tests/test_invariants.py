from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prymperm.cylinders import cylinder_decomposition
from prymperm.errors import NotPrimitive, NotSquareTiled, OutsideRestrictedCase
from prymperm.invariants import (displacement, fr_action, fr_classes, hlk_blocks, hlk_invariant,
                                 primitive_normalization, restricted_case)
from prymperm.origami import Origami
from prymperm.permgroup import SubgroupClass
from prymperm.prototypes import admissible_range, reduced_prototypes, same_component
from prymperm.qfield import canonical_d
from prymperm.special import period_order_discriminant
from prymperm.surface import LABELS, a_minus, a_plus, apply_matrix, b8, sq_z, z_surface
from prymperm.twists import multitwist

from oracles import hlk_from_origami


def _hlk(S):
    T, _ = primitive_normalization(S)
    return hlk_invariant(T)


@pytest.mark.parametrize("d", [6, 8, 10])
def test_square_z_hlk(d):
    for e in reduced_prototypes(d * d):
        inv = _hlk(sq_z(d, e))
        assert str(inv) == "(1,[v,v])"
        assert inv.counts() == (1, (2, 0, 0))
        assert inv.points["w3"] == "0"


@pytest.mark.parametrize("S", [sq_z(6, -2), sq_z(10, 2), a_plus(25, -3), a_minus(49, -1),
                               a_plus(81, 3)], ids=lambda S: S.spec.label())
def test_hlk_agrees_with_square_positions(S):
    T, _ = primitive_normalization(S)
    inv = hlk_invariant(T)
    _, kinds = Origami.with_marked_points(T)
    assert hlk_from_origami(kinds) == (inv.n_integral, inv.types)


def test_odd_square_components_have_distinct_hlk():
    for d in (5, 7, 9):
        D = d * d
        items = [(m, e) for m in ("A+", "A-") for e in reduced_prototypes(D)]
        inv = {(m, e): str(_hlk((a_plus if m == "A+" else a_minus)(D, e))) for m, e in items}
        assert set(inv.values()) == {"(3,[])", "(0,[h,v,c])"}
        for x in items:
            for y in items:
                assert (inv[x] == inv[y]) == same_component(*x, *y, D)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([(6, -2), (8, 0), (10, -6), (10, 2)]),
       st.lists(st.sampled_from([(1, 0), (0, 1)]), min_size=1, max_size=3))
def test_hlk_counts_invariant_under_multitwists(de, dirs):
    S = sq_z(*de)
    before = _hlk(S)
    for v in dirs:
        S = apply_matrix(S, multitwist(cylinder_decomposition(S, v)).matrix)
    after = _hlk(S)
    assert after.counts() == before.counts()
    # the integral point is never exchanged with a non-integral one
    assert [lb for lb in LABELS if after.points[lb] == "0"] == \
        [lb for lb in LABELS if before.points[lb] == "0"]


def test_hlk_blocks():
    inv = _hlk(sq_z(6, -2))
    assert sorted(map(sorted, hlk_blocks(inv))) == [[1, 2], [3]]


def test_hlk_errors():
    with pytest.raises(NotSquareTiled):
        hlk_invariant(a_plus(17, -3))
    T, _ = primitive_normalization(sq_z(6, -2))
    with pytest.raises(NotPrimitive):
        hlk_invariant(apply_matrix(T, ((2, 0), (0, 1))))


def test_fr_classes_d20():
    part = fr_classes(20, -2)
    half = Fraction(1, 2)
    assert part.fr == {"w1": (0, half), "w2": (0, half), "w3": (0, 0)}
    assert part.zero_class == frozenset({3})
    assert part.upper_class == SubgroupClass("sym2", (1, 2))


def test_fr_outside_restricted_case():
    with pytest.raises(OutsideRestrictedCase):
        fr_classes(17, -3)
    with pytest.raises(OutsideRestrictedCase):
        fr_classes(36, -2)  # square
    with pytest.raises(OutsideRestrictedCase):
        fr_classes(20, -1)
    assert restricted_case(20) and not restricted_case(24)


restricted = [D for D in admissible_range(17, 400) if restricted_case(D)]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(restricted), st.data())
def test_fr_path_independence(D, data):
    e = data.draw(st.sampled_from(reduced_prototypes(D)))
    ref = fr_classes(D, e)
    for root in range(3):
        for corner in range(2):
            assert fr_classes(D, e, root=root, corner=corner).classes == ref.classes


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(restricted), st.data())
def test_fr_action_law(D, data):
    e = data.draw(st.sampled_from(reduced_prototypes(D)))
    S = z_surface(D, e)
    d = canonical_d(D)
    for v in ((1, 0), (0, 1)):
        A = multitwist(cylinder_decomposition(S, v)).matrix
        for label in LABELS:
            lhs, rhs = fr_action(A, displacement(S, label), D, d)
            assert lhs == rhs


def test_period_order_discriminant():
    assert period_order_discriminant(b8()) == 32
    for D, e in ((17, -3), (20, -2), (33, -5), (41, 1), (32, 0)):
        for build in (a_plus, a_minus, z_surface):
            assert period_order_discriminant(build(D, e)) == 4 * D
