import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prymperm.cylinders import cylinder_decomposition
from prymperm.errors import InadmissibleSpec
from prymperm.invariants import hlk_invariant, primitive_normalization
from prymperm.origami import (Origami, component_orbit, model_surface, nonexistence_failures,
                              orbit, vertical_shape)
from prymperm.surface import a_plus, apply_matrix, sq_z, validate_surface

SEEDS = [Origami.from_surface(sq_z(6, -2)), Origami.from_surface(sq_z(8, 0)),
         Origami.from_surface(primitive_normalization(a_plus(25, -3))[0])]


@pytest.mark.parametrize("d", [5, 6, 7, 8, 9])
@pytest.mark.parametrize("model", ["C", "D"])
def test_model_surfaces(model, d):
    S = model_surface(model, d)
    assert validate_surface(S).ok
    assert len(cylinder_decomposition(S, (1, 0)).cylinders) == (2 if model == "C" else 1)
    assert len(cylinder_decomposition(S, (0, 1)).cylinders) == 3
    inv = hlk_invariant(S)
    if d % 2:
        assert S.meta["n"] == (2 * d if model == "C" else d)
        assert str(inv) == ("(3,[])" if model == "C" else "(0,[h,v,c])")
    else:
        assert inv.counts() == (1, (2, 0, 0))
    shape = vertical_shape(S)
    assert shape.laws_hold()
    assert shape.lateral_moduli_equal


@pytest.mark.parametrize("d", [5, 7, 9])
def test_nonexistence(d):
    assert nonexistence_failures(d) == []


def test_model_errors():
    with pytest.raises(InadmissibleSpec):
        model_surface("E", 7)
    with pytest.raises(InadmissibleSpec):
        model_surface("C", 3)


@pytest.mark.parametrize("O", SEEDS, ids=["Z36", "Z64", "A+25"])
def test_surface_round_trip(O):
    S = O.to_surface()
    assert validate_surface(S).ok
    assert Origami.from_surface(S).canonical() == O.canonical()
    assert sorted(S.cone_angles, reverse=True) == O.cone_angles()


@pytest.mark.parametrize("O", SEEDS, ids=["Z36", "Z64", "A+25"])
def test_shears_match_matrix_action(O):
    S = O.to_surface()
    T = Origami.from_surface(apply_matrix(S, ((1, 1), (0, 1))))
    V = Origami.from_surface(apply_matrix(S, ((1, 0), (1, 1))))
    assert T.canonical() == O.shear_h().canonical()
    assert V.canonical() == O.shear_v().canonical()


@pytest.mark.parametrize("O", SEEDS, ids=["Z36", "Z64", "A+25"])
def test_cylinder_counts_match_exact_decomposition(O):
    S = O.to_surface()
    assert O.horizontal_cylinders() == len(cylinder_decomposition(S, (1, 0)).cylinders)
    assert O.vertical_cylinders() == len(cylinder_decomposition(S, (0, 1)).cylinders)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SEEDS), st.data())
def test_canonical_form_is_label_free(O, data):
    n = O.n
    perm = data.draw(st.permutations(range(n)))
    inv = [0] * n
    for i, j in enumerate(perm):
        inv[j] = i
    # conjugate r and u by the relabelling
    R = tuple(perm[O.r[inv[i]]] for i in range(n))
    U = tuple(perm[O.u[inv[i]]] for i in range(n))
    P = Origami(R, U)
    assert P.canonical() == O.canonical()
    assert len(O.isomorphisms(P)) >= 1


def test_orbit_is_closed():
    orb = orbit(SEEDS[0])
    members = set(orb)
    for o in orb:
        assert o.shear_h().canonical() in members
        assert o.shear_v().canonical() in members
        angles = o.cone_angles()
        assert angles[0] == 5 and set(angles[1:]) <= {1}


def test_component_orbits_differ_for_odd_d():
    a, b = component_orbit(7, "C"), component_orbit(7, "D")
    assert not set(a) & set(b)
