"""The exceptional surface B_8(0) and a period-lattice check of the
discriminant.

B_8(0) is built from three horizontal cylinders of modulus 1: a unit
square C0 fixed by the involution and two exchanged squares C1, C2 of
side r = 1/sqrt(2).  C1 hangs below C0 along [0, r]; the rest of the top
of C0 (length 1 - r) is glued to the bottom of C1, and the remaining
piece of that bottom (length 2r - 1) is glued to the top of C2 = i(C1).
This boundary pattern is neither A+ nor A-.
"""

from __future__ import annotations

from fractions import Fraction

from .qfield import QuadNum, lattice_basis, qn
from .surface import SurfaceSpec, TranslationSurface, _glue, _reflect_polygon


def b8_surface() -> TranslationSurface:
    D = 8
    z, one = qn(0, D), qn(1, D)
    half = Fraction(1, 2)
    r = QuadNum(0, Fraction(1, 4), D)  # sqrt(8)/4 = 1/sqrt(2)
    C0 = ((z, z), (r, z), (one, z), (one, one), (one - r, one), (z, one))
    C1 = ((z, -r), (1 - r, -r), (r, -r), (r, z), (z, z))
    centre = (one, one)
    C2 = _reflect_polygon(C1, centre)
    gl = _glue([
        ((0, 2), (0, 5)),
        ((0, 0), (1, 3)),
        ((0, 4), (1, 0)),
        ((1, 1), (2, 1)),
        ((1, 2), (1, 4)),
        ((2, 2), (2, 4)),
        ((2, 0), (0, 1)),
        ((2, 3), (0, 3)),
    ])
    marked = {
        "w1": (0, (one * half, one * half)),
        "w2": (0, (one, one * half)),
        "w3": (1, (one * half, -r)),
    }
    inv = ((0, centre), (2, centre), (1, centre))
    return TranslationSurface(D, (C0, C1, C2), gl, marked, inv, SurfaceSpec("B8", 8, 0),
                              {"r": r})


# -- multiplier order of the period lattice ----------------------------


def _solve(B: list[list[Fraction]], v: list[Fraction]) -> list[Fraction]:
    """Coordinates of v in the basis B (rows, square and invertible)."""
    n = len(B)
    A = [[B[j][i] for j in range(n)] + [v[i]] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c])
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [A[i][n] for i in range(n)]


def period_order_discriminant(S: TranslationSurface) -> int:
    """Discriminant of {x : x Per(w) in Per(w)}, the multiplier order of the
    absolute period lattice.  Requires a single vertex class so that every
    polygon edge is a closed period.

    On the prototype surfaces of E_D(4) this returns 4D, which separates
    B_8(0) (32) from anything in E_32(4) (128) even though both have
    coordinates in Q(sqrt 2).
    """
    from math import lcm

    if len(S.vertex_classes) != 1:
        raise ValueError("period lattice check needs a single vertex class")
    D = S.D
    rows = []
    for p, i in S.edges():
        v = S.edge_vector(p, i)
        rows.append([Fraction(c) for x in v for c in (x.p, x.q)])
    B = lattice_basis(rows)
    if len(B) != 4:
        raise ValueError("period lattice does not have rank 4")

    def times_sqrt(row):
        return [row[1] * D, row[0], row[3] * D, row[2]]

    C = [_solve(B, times_sqrt(b)) for b in B]
    # x = u + s sqrt(D) preserves the lattice iff s C + u I is integral
    den = lcm(*(x.denominator for r in C for x in r))
    for k in range(1, 4 * den + 1):
        s = Fraction(k, den)
        off = all((s * C[i][j]).denominator == 1 for i in range(4) for j in range(4) if i != j)
        if not off:
            continue
        fracs = {(s * C[i][i]) % 1 for i in range(4)}
        if len(fracs) == 1:
            disc = 4 * s * s * D
            if disc.denominator != 1:
                raise ValueError("non-integral discriminant")
            return int(disc)
    raise ValueError("no multiplier found")
