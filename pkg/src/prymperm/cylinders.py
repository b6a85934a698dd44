"""Exact cylinder decompositions of translation surfaces.

The surface is first mapped by a unimodular matrix taking the requested
direction to the positive horizontal.  Horizontal lines through vertices
are then pushed through the gluings until every polygon is cut into
trapezoidal slabs whose left and right sides are glued slab-to-slab.
Following right neighbours gives closed horizontal bands; stacked bands
whose common boundary carries no singular vertex belong to one cylinder.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetExceeded, NotCommensurable, PrymError
from .qfield import Matrix, QuadNum, Vec, mat_inv, mat_vec, qn
from .surface import TranslationSurface, apply_matrix, vadd, vsub

DEFAULT_BUDGET = 100_000


@dataclass(frozen=True)
class Direction:
    x: QuadNum
    y: QuadNum

    @classmethod
    def of(cls, x, y, D: int) -> Direction:
        x, y = qn(x, D), qn(y, D)
        if not x and not y:
            raise PrymError("direction must be nonzero")
        if x.sign() < 0 or (not x and y.sign() < 0):
            x, y = -x, -y
        return cls(x, y)

    def frame(self) -> Matrix:
        """Unimodular map taking this direction to the positive horizontal."""
        D = self.x.d_param
        one, zero = qn(1, D), qn(0, D)
        if self.x:
            return ((one, zero), (-self.y / self.x, one))
        return ((zero, one), (-one, zero))

    def oblique_factor(self) -> QuadNum:
        """|y/x| for oblique directions, 1 otherwise (see Cylinder)."""
        if self.x and self.y:
            return abs(self.y / self.x)
        return qn(1, self.x.d_param)

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


@dataclass
class Cylinder:
    """One maximal cylinder.

    ``frame_width`` and ``frame_height`` are measured after the direction
    has been made horizontal by :meth:`Direction.frame`.  For horizontal
    and vertical directions they are the usual circumference and height.
    For an oblique direction ``(x, y)`` the reported ``width`` is the
    horizontal extent of the circumference and ``height`` the length of
    a horizontal segment crossing the cylinder, so ``modulus`` equals the
    frame modulus times ``|y/x|``.
    """

    width: QuadNum
    height: QuadNum
    modulus: QuadNum
    frame_width: QuadNum
    frame_height: QuadNum
    core_curve: list[tuple[int, Vec, Vec]]
    bottom_saddles: list[QuadNum]
    top_saddles: list[QuadNum]
    twist: QuadNum  # offset of the top singular points over the bottom ones
    bands: int = 1

    @property
    def frame_modulus(self) -> QuadNum:
        return self.frame_width / self.frame_height

    @property
    def area(self) -> QuadNum:
        return self.frame_width * self.frame_height


@dataclass(frozen=True)
class PointLocation:
    cylinder: int
    interior: bool
    on_core: bool
    position: QuadNum  # along the core, modulo the frame width
    height: QuadNum  # above the bottom boundary, in the frame


@dataclass
class CylinderDecomposition:
    direction: Direction
    cylinders: list[Cylinder]
    point_locations: dict[str, PointLocation]
    frame: Matrix
    area: QuadNum
    steps: int = 0
    extra: dict = field(default_factory=dict)

    def moduli(self) -> list[QuadNum]:
        return [c.modulus for c in self.cylinders]

    def cylinder_of(self, label: str) -> int | None:
        loc = self.point_locations[label]
        return loc.cylinder if loc.interior else None


@dataclass
class _Slab:
    poly: int
    y0: QuadNum
    y1: QuadNum
    xl0: QuadNum
    xr0: QuadNum
    xl1: QuadNum
    xr1: QuadNum
    left: int
    right: int


def _x_at(a: Vec, b: Vec, y: QuadNum) -> QuadNum:
    return a[0] + (y - a[1]) * (b[0] - a[0]) / (b[1] - a[1])


def _levels(T: TranslationSurface, budget: int):
    levels = [set(v[1] for v in poly) for poly in T.polygons]
    slanted = []
    for p, poly in enumerate(T.polygons):
        out = []
        n = len(poly)
        for i in range(n):
            a, b = poly[i], poly[(i + 1) % n]
            if a[1] != b[1]:
                lo, hi = (a[1], b[1]) if a[1] < b[1] else (b[1], a[1])
                q, _ = T.gluings[(p, i)]
                out.append((lo, hi, q, T.translations[(p, i)][1]))
        slanted.append(out)
    work = [(p, y) for p in range(len(levels)) for y in levels[p]]
    steps = 0
    while work:
        p, y = work.pop()
        for lo, hi, q, ty in slanted[p]:
            if lo < y < hi:
                y2 = y + ty
                if y2 not in levels[q]:
                    levels[q].add(y2)
                    work.append((q, y2))
                    steps += 1
                    if steps > budget:
                        raise BudgetExceeded(f"more than {budget} level crossings")
    return [sorted(ls) for ls in levels], steps


def _slabs(T: TranslationSurface, levels):
    slabs: list[_Slab] = []
    index: dict[tuple[int, QuadNum], int] = {}
    for p, poly in enumerate(T.polygons):
        n = len(poly)
        ups, downs = [], []
        for i in range(n):
            a, b = poly[i], poly[(i + 1) % n]
            if a[1] < b[1]:
                ups.append(i)
            elif a[1] > b[1]:
                downs.append(i)
        L = levels[p]
        for y0, y1 in zip(L, L[1:]):
            right = next(i for i in ups if poly[i][1] <= y0 and y1 <= poly[(i + 1) % n][1])
            left = next(i for i in downs if poly[(i + 1) % n][1] <= y0 and y1 <= poly[i][1])
            ra, rb = poly[right], poly[(right + 1) % n]
            la, lb = poly[left], poly[(left + 1) % n]
            index[(p, y0)] = len(slabs)
            slabs.append(_Slab(p, y0, y1, _x_at(la, lb, y0), _x_at(ra, rb, y0),
                               _x_at(la, lb, y1), _x_at(ra, rb, y1), left, right))
    return slabs, index


def _boundary_vertices(T: TranslationSurface, s: _Slab, top: bool):
    """Polygon vertices lying on the top or bottom side of a slab."""
    y = s.y1 if top else s.y0
    lo, hi = (s.xl1, s.xr1) if top else (s.xl0, s.xr0)
    out = []
    for k, v in enumerate(T.polygons[s.poly]):
        if v[1] == y and lo <= v[0] <= hi:
            out.append((k, v))
    return out


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def _mod(x: QuadNum, w: QuadNum) -> QuadNum:
    return x - (x / w).floor() * w


def cylinder_decomposition(S: TranslationSurface, direction: Direction | tuple = (1, 0),
                           step_budget: int = DEFAULT_BUDGET) -> CylinderDecomposition:
    if not isinstance(direction, Direction):
        direction = Direction.of(*direction, S.D)
    N = direction.frame()
    T = apply_matrix(S, N)
    levels, steps = _levels(T, step_budget)
    slabs, index = _slabs(T, levels)
    nslab = len(slabs)

    # right neighbours and above neighbours
    right = [0] * nslab
    for k, s in enumerate(slabs):
        q, _ = T.gluings[(s.poly, s.right)]
        ty = T.translations[(s.poly, s.right)][1]
        right[k] = index[(q, s.y0 + ty)]
    above: list[list[tuple[int, Vec]]] = [[] for _ in range(nslab)]
    for k, s in enumerate(slabs):
        key = (s.poly, s.y1)
        if key in index:
            above[k].append((index[key], (qn(0, S.D), qn(0, S.D))))
            continue
        poly = T.polygons[s.poly]
        n = len(poly)
        for i in range(n):
            a, b = poly[i], poly[(i + 1) % n]
            if a[1] == s.y1 and b[1] == s.y1 and b[0] < a[0]:
                q, _ = T.gluings[(s.poly, i)]
                tau = T.translations[(s.poly, i)]
                above[k].append((index[(q, s.y1 + tau[1])], tau))

    # bands: cycles of the right-neighbour permutation
    band_of = [-1] * nslab
    bands: list[list[int]] = []
    for k in range(nslab):
        if band_of[k] >= 0:
            continue
        cyc = []
        j = k
        while band_of[j] < 0:
            band_of[j] = len(bands)
            cyc.append(j)
            j = right[j]
        if j != k:
            raise PrymError("right-neighbour map is not a permutation")
        bands.append(cyc)

    def singular_side(band: list[int], top: bool) -> bool:
        for k in band:
            for vk, _ in _boundary_vertices(T, slabs[k], top):
                if T.is_singular_corner(slabs[k].poly, vk):
                    return True
        return False

    top_singular = [singular_side(b, True) for b in bands]
    bottom_singular = [singular_side(b, False) for b in bands]
    uf = _UnionFind(len(bands))
    band_above: dict[int, int] = {}
    for bi, band in enumerate(bands):
        if top_singular[bi]:
            continue
        for k in band:
            for j, _ in above[k]:
                uf.union(bi, band_of[j])
                band_above[bi] = band_of[j]

    groups: dict[int, list[int]] = {}
    for bi in range(len(bands)):
        groups.setdefault(uf.find(bi), []).append(bi)

    # order: by the smallest slab of the bottom band
    chains = []
    for members in groups.values():
        bottoms = [b for b in members if bottom_singular[b]]
        if len(bottoms) != 1:
            raise PrymError("cylinder without a unique bottom band")
        chain = [bottoms[0]]
        while chain[-1] in band_above and band_above[chain[-1]] != chain[0]:
            chain.append(band_above[chain[-1]])
            if len(chain) > len(members):
                raise PrymError("band stacking does not terminate")
        if sorted(chain) != sorted(members):
            raise PrymError("bands of a cylinder do not stack")
        chains.append(chain)
    chains.sort(key=lambda ch: min(bands[ch[0]]))

    Ninv = mat_inv(N)
    factor = direction.oblique_factor()
    zero = qn(0, S.D)
    shift: dict[int, Vec] = {}
    cylinders: list[Cylinder] = []
    cyl_of_band = {}
    for ci, chain in enumerate(chains):
        for b in chain:
            cyl_of_band[b] = ci
        base = min(bands[chain[0]])
        s0 = slabs[base]
        shift[base] = (-s0.xl0, -s0.y0)
        heights = []
        widths = []
        for pos, b in enumerate(chain):
            band = bands[b]
            start = next(k for k in band if k in shift)
            k = start
            while True:
                nxt = right[k]
                s = slabs[k]
                tau = T.translations[(s.poly, s.right)]
                if nxt not in shift:
                    shift[nxt] = vsub(shift[k], tau)
                k = nxt
                if k == start:
                    break
            w0 = sum((slabs[k].xr0 - slabs[k].xl0 for k in band), zero)
            w1 = sum((slabs[k].xr1 - slabs[k].xl1 for k in band), zero)
            if w0 != w1:
                raise PrymError("band widths disagree at bottom and top")
            widths.append(w0)
            heights.append(slabs[band[0]].y1 - slabs[band[0]].y0)
            if pos + 1 < len(chain):
                up = bands[chain[pos + 1]]
                for k in band:
                    hit = [(j, tau) for j, tau in above[k] if j in up]
                    if hit:
                        j, tau = hit[0]
                        shift[j] = vsub(shift[k], tau)
                        break
        if len(set(widths)) != 1:
            raise PrymError("bands of one cylinder have different widths")
        w = widths[0]
        h = sum(heights, zero)

        def dev_x(k, x):
            return x + shift[k][0]

        def singular_positions(band, top):
            out = []
            for k in band:
                s = slabs[k]
                for vk, v in _boundary_vertices(T, s, top):
                    if T.is_singular_corner(s.poly, vk):
                        out.append(_mod(dev_x(k, v[0]), w))
            return sorted(set(out))

        bottom = singular_positions(bands[chain[0]], False)
        topp = singular_positions(bands[chain[-1]], True)

        def gaps(pts):
            if not pts:
                return []
            return [b - a for a, b in zip(pts, pts[1:])] + [pts[0] + w - pts[-1]]

        twist = _mod(topp[0] - bottom[0], w) if bottom and topp else zero
        # core curve at half height, mapped back to the original coordinates
        half = h / 2
        core = []
        acc = zero
        for b in chain:
            band = bands[b]
            hb = slabs[band[0]].y1 - slabs[band[0]].y0
            if acc <= half <= acc + hb:
                for k in band:
                    s = slabs[k]
                    y = half - shift[k][1]
                    a = (_x_at(T.polygons[s.poly][s.left],
                               T.polygons[s.poly][(s.left + 1) % len(T.polygons[s.poly])], y), y)
                    c = (_x_at(T.polygons[s.poly][s.right],
                               T.polygons[s.poly][(s.right + 1) % len(T.polygons[s.poly])], y), y)
                    core.append((s.poly, mat_vec(Ninv, a), mat_vec(Ninv, c)))
                break
            acc = acc + hb
        cylinders.append(Cylinder(
            width=w, height=h / factor, modulus=w * factor / h,
            frame_width=w, frame_height=h, core_curve=core,
            bottom_saddles=gaps(bottom), top_saddles=gaps(topp), twist=twist,
            bands=len(chain)))

    total = sum((c.area for c in cylinders), zero)
    if total != T.area:
        raise PrymError(f"cylinder areas sum to {total}, surface area is {T.area}")

    locations = {}
    for label, (p, pt) in T.marked.items():
        locations[label] = _locate(T, slabs, band_of, cyl_of_band, shift, cylinders, p, pt)
    return CylinderDecomposition(direction, cylinders, locations, N, S.area, steps)


def _locate(T, slabs, band_of, cyl_of_band, shift, cylinders, p, pt) -> PointLocation:
    x, y = pt
    for k, s in enumerate(slabs):
        if s.poly != p or not (s.y0 <= y <= s.y1):
            continue
        poly = T.polygons[p]
        n = len(poly)
        xl = _x_at(poly[s.left], poly[(s.left + 1) % n], y)
        xr = _x_at(poly[s.right], poly[(s.right + 1) % n], y)
        if not (xl <= x <= xr):
            continue
        ci = cyl_of_band[band_of[k]]
        cyl = cylinders[ci]
        X, Y = vadd(pt, shift[k])
        interior = Y.sign() > 0 and Y < cyl.frame_height
        return PointLocation(ci, interior, interior and 2 * Y == cyl.frame_height,
                             _mod(X, cyl.frame_width), Y)
    raise PrymError(f"point {pt} of polygon {p} is not covered by any slab")


def moduli_ratios(dec: CylinderDecomposition) -> list[Fraction]:
    """Each modulus divided by the first one, as exact rationals."""
    m0 = dec.cylinders[0].modulus
    out = []
    for i, c in enumerate(dec.cylinders):
        r = c.modulus / m0
        if not r.is_rational():
            raise NotCommensurable(f"m_{i + 1}/m_1 = {r} is irrational", (i, 0))
        out.append(r.value())
    return out


# -- cross-checks against the cylinder data of the prototype templates ---


def _multiset(xs) -> list:
    return sorted(xs, key=float)


def lemma41_failures(S: TranslationSurface) -> list[str]:
    """Compare the horizontal and vertical decompositions of an A+/A-/Z
    template with the moduli and point positions they are built to have."""
    spec = S.spec
    if spec is None or spec.model not in ("A+", "A-", "Z", "SQZ") or "matrix" in S.meta:
        return []
    from .prototypes import Prototype
    from .qfield import lam

    proto = spec.proto or Prototype.reduced(spec.D, spec.e)
    D = S.D
    L = lam(D, proto.e)
    b, c = qn(proto.b, D), qn(proto.c, D)
    bad = []
    try:
        hor = cylinder_decomposition(S, (1, 0))
    except PrymError as exc:
        return [f"horizontal decomposition failed: {exc}"]
    scale = 2 / L if spec.model in ("Z", "SQZ") else qn(1, D)
    if spec.model == "A+":
        want = [b / c, b / c, qn(1, D)]
        core = 2  # index in the ascending list of the cylinder holding w1, w2
    else:
        want = [b / c * scale, scale, scale]
        core = 0
    got = [cy.modulus for cy in hor.cylinders]
    if _multiset(got) != _multiset(want):
        bad.append(f"horizontal moduli {list(map(str, got))} differ from {list(map(str, want))}")
        return bad
    target = want[core]
    for label in ("w1", "w2"):
        loc = hor.point_locations[label]
        if not loc.on_core or hor.cylinders[loc.cylinder].modulus != target:
            bad.append(f"{label} is not on the core of the horizontal cylinder of modulus {target}")
    if hor.point_locations["w3"].interior:
        bad.append("w3 is interior to a horizontal cylinder")
    if proto.a != 0 or proto.c != 1:
        return bad
    try:
        ver = cylinder_decomposition(S, (0, 1))
    except PrymError as exc:
        return bad + [f"vertical decomposition failed: {exc}"]
    if spec.model == "A+":
        long_m = (L + 2) / L
        short_m = 1 / (b - L)
        want = [long_m, short_m, short_m]
        target = long_m
    else:
        long_m = (L / 2 + 1) / (L / 2) / scale
        short_m = 1 / ((b - L) * scale)
        want = [long_m, long_m, short_m]
        target = short_m
    got = [cy.modulus for cy in ver.cylinders]
    if _multiset(got) != _multiset(want):
        bad.append(f"vertical moduli {list(map(str, got))} differ from {list(map(str, want))}")
        return bad
    pair, off = (("w1", "w3"), "w2") if spec.model == "A+" else (("w2", "w3"), "w1")
    for label in pair:
        loc = ver.point_locations[label]
        if not loc.on_core or ver.cylinders[loc.cylinder].modulus != target:
            bad.append(f"{label} is not on the core of the vertical cylinder of modulus {target}")
    if ver.point_locations[off].interior:
        bad.append(f"{off} is interior to a vertical cylinder")
    return bad
