"""Obstructions to exchanging Prym points: the HLK invariant of a
square-tiled surface and the fr classes of the re-scaled prototypes."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (NotPrimitive, NotSquareTiled, OutsideRestrictedCase, PrymError)
from .permgroup import MarkedPermutation, SubgroupClass, classify, setwise_stabilizer
from .prototypes import reduced_prototypes
from .qfield import (Matrix, OrderBasis, Vec, canonical_d, lattice_basis, mat_vec, qn,
                     square_root)
from .surface import LABELS, TranslationSurface, apply_matrix, vadd, vsub

HALF = Fraction(1, 2)
TYPE_OF = {(0, 0): "0", (HALF, 0): "h", (0, HALF): "v", (HALF, HALF): "c"}


# -- developing map and periods -------------------------------------------


def developing_offsets(S: TranslationSurface, root: int = 0) -> list[Vec]:
    """Offset of each polygon chart so that charts agree across a spanning
    tree of gluings."""
    zero = qn(0, S.D)
    off: list[Vec | None] = [None] * len(S.polygons)
    off[root] = (zero, zero)
    todo = deque([root])
    while todo:
        p = todo.popleft()
        for i in range(S.nsides(p)):
            q, _ = S.gluings[(p, i)]
            if off[q] is None:
                off[q] = vsub(off[p], S.translations[(p, i)])
                todo.append(q)
    if any(o is None for o in off):
        raise PrymError("surface is not connected")
    return off


def _singular_corners(S: TranslationSurface):
    return [(p, k) for p, k in sorted(c for cls in S.singular_classes
                                      for c in S.vertex_classes[cls])]


def period_vectors(S: TranslationSurface, root: int = 0) -> list[Vec]:
    """Generators of the group of periods: gluing mismatches of the charts
    and differences between developed copies of the singularity."""
    off = developing_offsets(S, root)
    out = []
    for (p, i), (q, _) in S.gluings.items():
        v = vsub(vsub(off[p], S.translations[(p, i)]), off[q])
        if v[0] or v[1]:
            out.append(v)
    corners = [vadd(S.polygons[p][k], off[p]) for p, k in _singular_corners(S)]
    out += [vsub(c, corners[0]) for c in corners[1:]]
    return out


def displacement(S: TranslationSurface, label: str, root: int = 0, corner: int = 0) -> Vec:
    """Developed vector from a copy of the singularity to a marked point."""
    off = developing_offsets(S, root)
    p, pt = S.marked[label]
    cp, ck = _singular_corners(S)[corner]
    return vsub(vadd(pt, off[p]), vadd(S.polygons[cp][ck], off[cp]))


def _rational(v: Vec) -> tuple[Fraction, Fraction]:
    if not (v[0].is_rational() and v[1].is_rational()):
        raise NotSquareTiled(f"period {v} is irrational")
    return v[0].value(), v[1].value()


def period_lattice(S: TranslationSurface) -> list[list[Fraction]]:
    """Echelon basis (rows) of the lattice of periods, for rational surfaces."""
    rows = [list(_rational(v)) for v in period_vectors(S)]
    B = lattice_basis(rows)
    if len(B) != 2:
        raise NotSquareTiled("periods do not span a lattice")
    return B


def primitive_normalization(S: TranslationSurface) -> tuple[TranslationSurface, Matrix]:
    """Map the period lattice of S onto Z^2 by an upper-triangular matrix."""
    (a, b), (_, c) = period_lattice(S)
    # columns (a, 0) and (b, c) span the lattice; invert that matrix
    M = ((1 / a, -b / (a * c)), (Fraction(0), 1 / c))
    M = tuple(tuple(qn(x, S.D) for x in row) for row in M)
    return apply_matrix(S, M), M


# -- HLK invariant -------------------------------------------------------------


@dataclass(frozen=True)
class HLKInvariant:
    n_integral: int
    types: tuple[str, ...]
    points: dict = field(default_factory=dict, compare=False)

    def counts(self) -> tuple[int, tuple[int, int, int]]:
        """The (integral, [#h, #v, #c]) form with the list sorted."""
        return self.n_integral, tuple(sorted((self.types.count(t) for t in "hvc"), reverse=True))

    def __str__(self) -> str:
        return f"({self.n_integral},[{','.join(self.types)}])"


def torsion_type(v: Vec) -> str:
    x, y = (c % 1 for c in _rational(v))
    t = TYPE_OF.get((x, y))
    if t is None:
        raise PrymError(f"{v} does not project to a 2-torsion point")
    return t


def hlk_invariant(S: TranslationSurface) -> HLKInvariant:
    B = period_lattice(S)
    for row in B:
        if any(x.denominator != 1 for x in row):
            raise NotSquareTiled("some period is not in Z[i]")
    index = B[0][0] * B[1][1]
    if index != 1:
        raise NotPrimitive(f"period lattice has index {index} in Z[i]")
    points = {label: torsion_type(displacement(S, label)) for label in LABELS}
    n = sum(t == "0" for t in points.values())
    types = tuple(sorted((t for t in points.values() if t != "0"), key="hvc".index))
    return HLKInvariant(n, types, points)


def hlk_blocks(inv: HLKInvariant) -> list[frozenset[int]]:
    """Partition of {1, 2, 3} by torsion type."""
    blocks: dict[str, set[int]] = {}
    for i, label in enumerate(LABELS, start=1):
        blocks.setdefault(inv.points[label], set()).add(i)
    return [frozenset(b) for _, b in sorted(blocks.items())]


# -- fr classes ------------------------------------------------------------------


def restricted_case(D: int) -> bool:
    """Even non-square D that is a square mod 16."""
    return D % 2 == 0 and D % 16 in (0, 4) and square_root(D) is None


def _half_basis(D: int, d: int | None) -> OrderBasis:
    return OrderBasis.rho_basis(D, half=True, d=d)


def fr_value(x, D: int, d: int | None = None) -> Fraction:
    """Fractional part of the rational part of x in the basis {1, rho/2}."""
    p, _ = _half_basis(D, d).coordinates(qn(x, D))
    return p % 1


def fr_vector(v: Vec, D: int, d: int | None = None) -> tuple[Fraction, Fraction]:
    return fr_value(v[0], D, d), fr_value(v[1], D, d)


def p_vector(v: Vec, D: int, d: int | None = None) -> tuple[int, int]:
    """(2 p1, p2) for v = (p1 + q1 rho/2, p2/2 + q2 rho/2) in O_{D/4} x O_D/2."""
    basis = _half_basis(D, d)
    p1, q1 = basis.coordinates(v[0])
    p2h, q2 = basis.coordinates(v[1])
    p2 = 2 * p2h
    if any(x.denominator != 1 for x in (p1, q1, p2, q2)):
        raise PrymError(f"{v} is not in O_(D/4) x O_D/2")
    return int(2 * p1), int(p2)


def fr_action(A: Matrix, v: Vec, D: int, d: int | None = None):
    """Both sides of fr(A v) = P_A p_v / 2 mod 1."""
    from .twists import pq_decompose

    d = canonical_d(D) if d is None else d
    P = pq_decompose(A, D, d).P
    pv = p_vector(v, D, d)
    rhs = tuple(Fraction(P[i][0] * pv[0] + P[i][1] * pv[1], 2) % 1 for i in range(2))
    lhs = fr_vector(mat_vec(A, v), D, d)
    return lhs, rhs


@dataclass(frozen=True)
class FrClassPartition:
    D: int
    e: int
    d: int
    fr: dict
    classes: tuple[frozenset[int], ...]
    zero_class: frozenset[int]
    upper: frozenset[MarkedPermutation]

    @property
    def upper_class(self) -> SubgroupClass:
        return classify(self.upper)


def fr_classes(D: int, e: int, d: int | None = None, root: int = 0,
               corner: int = 0) -> FrClassPartition:
    if not restricted_case(D):
        raise OutsideRestrictedCase(f"D={D} is not an even non-square residue mod 16")
    if e not in reduced_prototypes(D):
        raise OutsideRestrictedCase(f"e={e} is not in S_{D}")
    from .surface import z_surface

    d = canonical_d(D) if d is None else d
    S = z_surface(D, e)
    fr = {}
    for label in LABELS:
        v = displacement(S, label, root, corner)
        p_vector(v, D, d)  # membership check
        fr[label] = fr_vector(v, D, d)
    groups: dict = {}
    for i, label in enumerate(LABELS, start=1):
        groups.setdefault(fr[label], set()).add(i)
    classes = tuple(frozenset(g) for _, g in sorted(groups.items()))
    zero = frozenset(groups.get((Fraction(0), Fraction(0)), set()))
    return FrClassPartition(D, e, d, fr, classes, zero, setwise_stabilizer(zero))
