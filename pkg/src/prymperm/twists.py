"""Affine multitwists of parabolic directions and their action on the
regular Prym fixed points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .cylinders import CylinderDecomposition, moduli_ratios
from .errors import EntriesOutsideOrders, ImageNotMarked, PrymError
from .permgroup import MarkedPermutation
from .qfield import Matrix, OrderBasis, QuadNum, mat_inv, mat_mul, qn
from .surface import LABELS, TranslationSurface


@dataclass(frozen=True)
class Multitwist:
    t: QuadNum
    k: tuple[int, ...]
    matrix: Matrix
    direction: object

    def frame_twist(self, dec: CylinderDecomposition) -> QuadNum:
        c = dec.cylinders[0]
        return self.k[0] * c.frame_modulus


def multitwist(dec: CylinderDecomposition) -> Multitwist:
    """Smallest t > 0 with t/m_i a positive integer for every cylinder."""
    ratios = moduli_ratios(dec)
    L = Fraction(lcm(*(r.numerator for r in ratios)), gcd(*(r.denominator for r in ratios)))
    k = tuple(int(L / r) for r in ratios)
    if any(L / r != ki for r, ki in zip(ratios, k)) or gcd(*k) != 1:
        raise PrymError(f"failed to normalise twist multiplicities {k}")
    c0 = dec.cylinders[0]
    t = c0.modulus * k[0]
    D = t.d_param
    tf = c0.frame_modulus * k[0]
    one, zero = qn(1, D), qn(0, D)
    shear = ((one, tf), (zero, one))
    N = dec.frame
    A = mat_mul(mat_inv(N), mat_mul(shear, N))
    return Multitwist(t, k, A, dec.direction)


def _is_integer(x: QuadNum) -> bool:
    if not x.is_rational():
        return False
    return x.value().denominator == 1


def twist_permutation(S: TranslationSurface, dec: CylinderDecomposition,
                      mt: Multitwist | None = None) -> MarkedPermutation:
    """Image of w1, w2, w3 under the multitwist, computed pointwise."""
    if mt is None:
        mt = multitwist(dec)
    locs = dec.point_locations
    images = {}
    for i, label in enumerate(LABELS, start=1):
        loc = locs[label]
        if not loc.interior:
            images[i] = i
            continue
        cyl = dec.cylinders[loc.cylinder]
        k = mt.k[loc.cylinder]
        x = loc.position + k * cyl.frame_width * loc.height / cyl.frame_height
        match = None
        for j, other in enumerate(LABELS, start=1):
            o = locs[other]
            if (o.interior and o.cylinder == loc.cylinder and o.height == loc.height
                    and _is_integer((x - o.position) / cyl.frame_width)):
                match = j
                break
        if match is None:
            raise ImageNotMarked(f"image of {label} under the multitwist is not a Prym point")
        images[i] = match
    return MarkedPermutation.from_mapping(images)


@dataclass(frozen=True)
class PQDecomposition:
    P: tuple[tuple[int, int], tuple[int, int]]
    Q: tuple[tuple[int, int], tuple[int, int]]
    d: int
    det_identity: bool
    P_mod2: tuple[tuple[int, int], tuple[int, int]]

    @property
    def det_P(self) -> int:
        return self.P[0][0] * self.P[1][1] - self.P[0][1] * self.P[1][0]

    @property
    def det_Q(self) -> int:
        return self.Q[0][0] * self.Q[1][1] - self.Q[0][1] * self.Q[1][0]


def pq_decompose(A: Matrix, D: int, d: int) -> PQDecomposition:
    """Write A = P_A + Q_A * rho/2 with integer P_A, Q_A."""
    if (d * d - D) % 16:
        raise EntriesOutsideOrders(f"d={d} does not satisfy d^2 = D mod 16 for D={D}")
    full = OrderBasis.rho_basis(D, d=d)
    half = OrderBasis.rho_basis(D, half=True, d=d)
    (al, be), (ga, de) = A
    coords = []
    for x, basis, name in ((al, full, "alpha"), (be, full, "beta"),
                           (ga, half, "gamma"), (de, half, "delta")):
        p, q = basis.coordinates(x)
        if p.denominator != 1 or q.denominator != 1:
            raise EntriesOutsideOrders(f"{name} = {x} is outside its order")
        coords.append((int(p), int(q)))
    (pa, qa), (pb, qb), (pc, qc), (pd, qd) = coords
    P = ((pa, pb), (pc, pd))
    Q = ((2 * qa, 2 * qb), (qc, qd))
    r2 = full.generator / 2
    rebuilt = tuple(tuple(P[i][j] + Q[i][j] * r2 for j in range(2)) for i in range(2))
    if rebuilt != A:
        raise PrymError("P + Q rho/2 does not reconstruct the matrix")
    detP = pa * pd - pb * pc
    detQ = Q[0][0] * Q[1][1] - Q[0][1] * Q[1][0]
    ok = detP + (D - d * d) // 16 * detQ == 1
    return PQDecomposition(P, Q, d, ok, tuple(tuple(x % 2 for x in row) for row in P))
