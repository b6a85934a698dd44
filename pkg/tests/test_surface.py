from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prymperm.errors import InadmissibleSpec, SingularMatrix
from prymperm.prototypes import Prototype, admissible_range, reduced_prototypes
from prymperm.qfield import lam
from prymperm.surface import (SurfaceSpec, TranslationSurface, a_minus, a_plus, apply_matrix, b8,
                              build_surface, dumps, loads, same_surface, sq_z, validate_surface,
                              z_matrix, z_surface)


def _replace(S, **kw):
    fields = dict(D=S.D, polygons=S.polygons, gluings=S.gluings, marked=S.marked,
                  involution=S.involution, spec=S.spec, meta=S.meta)
    fields.update(kw)
    return TranslationSurface(**fields)


@pytest.mark.parametrize("S", [a_plus(17, -3), a_plus(17, -1), a_minus(17, -3), a_minus(25, -1),
                               z_surface(17, -3), sq_z(6, -2), b8(), a_plus(proto=Prototype(1, 4, 2, -3))],
                         ids=lambda S: S.spec.label())
def test_builders_validate(S):
    rep = validate_surface(S)
    assert rep.ok, rep.failures
    assert rep.stats["genus"] == 3
    assert rep.stats["cone_angles"][0] == 5
    assert all(a == 1 for a in rep.stats["cone_angles"][1:])


def test_euler_characteristic():
    for S in (a_plus(41, -5), a_minus(41, 1), b8()):
        V = len(S.vertex_classes)
        E = sum(S.nsides(p) for p in range(len(S.polygons))) // 2
        F = len(S.polygons)
        assert 2 - 2 * S.genus == V - E + F
        assert max(S.cone_angles) == 5
        assert S.genus == 3


def test_corrupted_gluing_fails_cone_angle():
    S = a_minus(17, -3)
    g = dict(S.gluings)
    # glue the two exchanged squares to each other instead of to themselves
    g[(1, 1)], g[(2, 1)] = (2, 1), (1, 1)
    g[(1, 3)], g[(2, 3)] = (2, 3), (1, 3)
    rep = validate_surface(_replace(S, gluings=g))
    assert not rep.ok
    assert any(f.startswith("cone angle") for f in rep.failures)


def test_moved_marked_point_fails():
    S = a_minus(17, -3)
    p, (x, y) = S.marked["w1"]
    marked = dict(S.marked, w1=(p, (x, y + Fraction(1, 7))))
    rep = validate_surface(_replace(S, marked=marked))
    assert not rep.ok
    assert any("w1" in f for f in rep.failures)


def test_duplicate_marked_point_fails():
    S = a_plus(17, -3)
    marked = dict(S.marked, w3=S.marked["w1"])
    assert not validate_surface(_replace(S, marked=marked)).ok


def test_involution_fixes_marked_points_and_singularity():
    for S in (a_plus(33, -5), a_minus(33, -3), b8()):
        fixed = S.fixed_points
        assert len(fixed) == 4
        for label, (p, pt) in S.marked.items():
            assert S.same_point(S.involute(p, pt), (p, pt)), label
        assert S.canonical(*S.singularity()) in fixed


def test_z_is_diagonal_image_of_a_minus():
    for D, e in ((17, -3), (20, -2), (41, -1)):
        Z = z_surface(D, e)
        A = apply_matrix(a_minus(D, e), z_matrix(D, e))
        assert same_surface(Z, A)
        assert Z.area == a_minus(D, e).area * 2 / lam(D, e)


def test_inadmissible_specs():
    with pytest.raises(InadmissibleSpec):
        a_plus(17, 1)
    with pytest.raises(InadmissibleSpec):
        sq_z(5, -3)
    with pytest.raises(InadmissibleSpec):
        build_surface(SurfaceSpec("B8", 12, 0))
    with pytest.raises(InadmissibleSpec):
        build_surface(SurfaceSpec("Q", 17, -3))


def test_singular_matrix():
    S = a_plus(17, -3)
    with pytest.raises(SingularMatrix):
        apply_matrix(S, ((1, 2), (2, 4)))
    with pytest.raises(SingularMatrix):
        apply_matrix(S, ((0, 1), (1, 0)))


matrices = st.tuples(*[st.integers(-3, 3)] * 4).filter(lambda m: m[0] * m[3] - m[1] * m[2] > 0)


@settings(max_examples=40, deadline=None)
@given(matrices, st.sampled_from([(17, -3), (17, -1), (33, -5), (20, -2)]), st.booleans())
def test_matrix_action(m, De, plus):
    a, b, c, d = m
    S = (a_plus if plus else a_minus)(*De)
    M = ((a, b), (c, d))
    T = apply_matrix(S, M)
    assert T.area == S.area * (a * d - b * c)
    assert validate_surface(T).ok
    det = Fraction(a * d - b * c)
    Minv = ((d / det, -b / det), (-c / det, a / det))
    back = apply_matrix(T, Minv)
    assert same_surface(back, S)


@pytest.mark.parametrize("S", [a_plus(17, -3), z_surface(20, -2), apply_matrix(a_minus(25, -3), ((1, 1), (0, 1))),
                               b8()], ids=["A+", "Z", "sheared A-", "B8"])
def test_json_round_trip(S):
    T = loads(dumps(S))
    assert same_surface(S, T)
    assert T.spec == S.spec
    assert T.meta.get("matrix") == S.meta.get("matrix")
    assert dumps(T) == dumps(S)


def test_every_builder_validates_up_to_500():
    bad = []
    for D in admissible_range(5, 500):
        for e in reduced_prototypes(D):
            for build in (a_plus, a_minus):
                rep = validate_surface(build(D, e))
                if not rep.ok:
                    bad.append((build.__name__, D, e, rep.failures))
    assert bad == []


def test_square_discriminant_coordinates():
    S = sq_z(8, -4)
    assert S.D == 64
    for poly in S.polygons:
        for x, y in poly:
            assert x.is_rational() and y.is_rational()
