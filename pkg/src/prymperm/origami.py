"""Square-tiled surfaces as pairs of permutations, their SL(2, Z) orbits,
and the one- and two-cylinder model surfaces.

Square i has right neighbour r[i] and upper neighbour u[i].  The bottom
left corners of squares j and k coincide when k = r u r^-1 u^-1 (j), so
vertex classes are the cycles of that commutator.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import InadmissibleSpec, InvalidSurface, PrymError
from .qfield import QuadNum, qn
from .surface import LABELS, SurfaceSpec, TranslationSurface, flow, _glue

EPS = Fraction(1, 10007)


def _inv(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _cycles(p: tuple[int, ...]) -> list[list[int]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(cyc)
    return out


@dataclass(frozen=True)
class Origami:
    r: tuple[int, ...]
    u: tuple[int, ...]

    def __post_init__(self):
        n = len(self.r)
        if sorted(self.r) != list(range(n)) or sorted(self.u) != list(range(n)):
            raise InvalidSurface("r and u must be permutations of the same set")

    @property
    def n(self) -> int:
        return len(self.r)

    # -- combinatorics -----------------------------------------------------

    def commutator(self) -> tuple[int, ...]:
        r, u = self.r, self.u
        ri, ui = _inv(r), _inv(u)
        return tuple(r[u[ri[ui[j]]]] for j in range(self.n))

    def vertex_classes(self) -> list[list[int]]:
        """Squares grouped by the vertex at their bottom left corner."""
        return _cycles(self.commutator())

    def cone_angles(self) -> list[int]:
        """Cone angles in multiples of 2 pi, largest first."""
        return sorted((len(c) for c in self.vertex_classes()), reverse=True)

    def _singular_squares(self) -> set[int]:
        return {i for c in self.vertex_classes() if len(c) > 1 for i in c}

    def horizontal_cylinders(self) -> int:
        sing = self._singular_squares()
        return sum(any(self.u[i] in sing for i in cyc) for cyc in _cycles(self.r))

    def vertical_cylinders(self) -> int:
        sing = self._singular_squares()
        return sum(any(self.r[i] in sing for i in cyc) for cyc in _cycles(self.u))

    def is_connected(self) -> bool:
        seen = {0}
        todo = [0]
        while todo:
            i = todo.pop()
            for j in (self.r[i], self.u[i]):
                if j not in seen:
                    seen.add(j)
                    todo.append(j)
        return len(seen) == self.n

    # -- SL(2, Z) action ---------------------------------------------------

    def shear_h(self) -> Origami:
        """Image under [[1, 1], [0, 1]]."""
        ri = _inv(self.r)
        return Origami(self.r, tuple(self.u[ri[i]] for i in range(self.n)))

    def shear_v(self) -> Origami:
        """Image under [[1, 0], [1, 1]]."""
        ui = _inv(self.u)
        return Origami(tuple(self.r[ui[i]] for i in range(self.n)), self.u)

    def relabel(self, start: int) -> Origami:
        order = [start]
        pos = {start: 0}
        k = 0
        while k < len(order):
            i = order[k]
            for j in (self.r[i], self.u[i]):
                if j not in pos:
                    pos[j] = len(order)
                    order.append(j)
            k += 1
        if len(order) != self.n:
            raise InvalidSurface("origami is not connected")
        return Origami(tuple(pos[self.r[i]] for i in order), tuple(pos[self.u[i]] for i in order))

    def isomorphisms(self, other: Origami) -> list[tuple[int, ...]]:
        """Bijections phi with phi r = r' phi and phi u = u' phi."""
        out = []
        if self.n != other.n:
            return out
        for j0 in range(self.n):
            phi = {0: j0}
            todo = [0]
            ok = True
            while todo and ok:
                i = todo.pop()
                for a, b in ((self.r[i], other.r[phi[i]]), (self.u[i], other.u[phi[i]])):
                    if a in phi:
                        ok = phi[a] == b
                        if not ok:
                            break
                    else:
                        phi[a] = b
                        todo.append(a)
            if ok and len(phi) == self.n and len(set(phi.values())) == self.n:
                out.append(tuple(phi[i] for i in range(self.n)))
        return out

    def canonical(self) -> Origami:
        return min((self.relabel(s) for s in range(self.n)), key=lambda o: (o.r, o.u))

    # -- Prym involution ---------------------------------------------------

    def _involutions(self):
        n = self.n
        r, u = self.r, self.u
        ri, ui = _inv(r), _inv(u)
        for j0 in range(n):
            sigma = {0: j0}
            todo = [0]
            ok = True
            while todo and ok:
                i = todo.pop()
                s = sigma[i]
                # sigma r = r^-1 sigma and sigma u = u^-1 sigma
                for a, b in ((r[i], ri[s]), (ri[i], r[s]), (u[i], ui[s]), (ui[i], u[s])):
                    if a in sigma:
                        if sigma[a] != b:
                            ok = False
                            break
                    else:
                        sigma[a] = b
                        todo.append(a)
            if ok and len(sigma) == n and sorted(sigma.values()) == list(range(n)):
                yield tuple(sigma[i] for i in range(n))

    def fixed_points(self, sigma: tuple[int, ...]) -> list[tuple[str, int]]:
        """Fixed points of the rotation given by sigma, as (kind, square)
        with kind one of 'vertex', 'centre', 'right', 'top'."""
        cls = {}
        for k, c in enumerate(self.vertex_classes()):
            for i in c:
                cls[i] = k
        out = []
        seen_vertex = set()
        for i in range(self.n):
            if sigma[i] == i:
                out.append(("centre", i))
            if sigma[i] == self.r[i]:
                out.append(("right", i))
            if sigma[i] == self.u[i]:
                out.append(("top", i))
            # the bottom left corner of i goes to the top right corner of sigma(i)
            if cls[self.u[self.r[sigma[i]]]] == cls[i] and cls[i] not in seen_vertex:
                seen_vertex.add(cls[i])
                out.append(("vertex", i))
        return out

    def prym_involution(self) -> tuple[int, ...]:
        for sigma in self._involutions():
            if len(self.fixed_points(sigma)) == 4:
                return sigma
        raise InvalidSurface("no rotation by pi with four fixed points")

    # -- surfaces ----------------------------------------------------------

    def to_surface(self, D: int = 1, spec: SurfaceSpec | None = None) -> TranslationSurface:
        z, one = qn(0, D), qn(1, D)
        half = qn(Fraction(1, 2), D)
        square = ((z, z), (one, z), (one, one), (z, one))
        polys = tuple(square for _ in range(self.n))
        pairs = []
        for i in range(self.n):
            pairs.append(((i, 1), (self.r[i], 3)))
            pairs.append(((i, 2), (self.u[i], 0)))
        gl = _glue(pairs)
        sigma = self.prym_involution()
        inv = tuple((sigma[i], (one, one)) for i in range(self.n))
        where = {"centre": (half, half), "right": (one, half), "top": (half, one),
                 "vertex": (z, z)}
        order = {"vertex": 0, "top": 1, "right": 2, "centre": 3}
        sing = self._singular_squares()
        regular = [(k, i) for k, i in self.fixed_points(sigma) if not (k == "vertex" and i in sing)]
        regular.sort(key=lambda t: (order[t[0]], t[1]))
        if len(regular) != 3:
            raise InvalidSurface(f"expected three regular fixed points, got {len(regular)}")
        marked = {label: (i, where[k]) for label, (k, i) in zip(LABELS, regular)}
        return TranslationSurface(D, polys, gl, marked, inv, spec, {"n": self.n, "origami": self})

    @classmethod
    def from_surface(cls, S: TranslationSurface) -> Origami:
        """Unit squares of a primitive square-tiled surface, found by
        flowing between the points lying over the centre of the torus."""
        return cls._extract(S)[0]

    @classmethod
    def with_marked_points(cls, S: TranslationSurface):
        """The origami of S and, for each marked point, its (kind, square)
        in the notation of :meth:`fixed_points`."""
        O, centres = cls._extract(S)
        D = S.D
        h, z = qn(Fraction(1, 2), D), qn(0, D)
        offsets = (("centre", (z, z)), ("right", (h, z)), ("top", (z, h)), ("vertex", (-h, -h)))
        where: dict = {}
        for i, (p, c) in enumerate(centres):
            for kind, delta in offsets:
                q, x = flow(S, p, c, delta)
                where.setdefault(S.canonical(q, x), (kind, i))
        return O, {label: where[S.canonical(*S.marked[label])] for label in LABELS}

    @classmethod
    def _extract(cls, S: TranslationSurface):
        from .invariants import developing_offsets, period_lattice, _singular_corners
        from .surface import vadd, vsub

        B = period_lattice(S)
        if any(x.denominator != 1 for row in B for x in row) or B[0][0] * B[1][1] != 1:
            raise PrymError(f"period lattice {B} is not Z^2")
        off = developing_offsets(S)
        sp, sk = _singular_corners(S)[0]
        s = vadd(S.polygons[sp][sk], off[sp])
        D = S.D
        keys: dict = {}
        centres = []
        for p, poly in enumerate(S.polygons):
            xs = [v[0].value() for v in poly]
            ys = [v[1].value() for v in poly]
            ox = (Fraction(1, 2) + s[0].value() - off[p][0].value()) % 1
            oy = (Fraction(1, 2) + s[1].value() - off[p][1].value()) % 1
            x = int(min(xs) - ox) - 1 + ox
            while x <= max(xs):
                y = int(min(ys) - oy) - 1 + oy
                while y <= max(ys):
                    pt = (qn(x, D), qn(y, D))
                    if S.locate(p, pt) is not None:
                        key = S.canonical(p, pt)
                        if key not in keys:
                            keys[key] = len(centres)
                            centres.append((p, pt))
                    y += 1
                x += 1
        if len(centres) != S.area.value():
            raise PrymError(f"found {len(centres)} squares for area {S.area}")

        def step(p, pt, first, back):
            q, x = flow(S, p, pt, first)
            q, x = flow(S, q, x, back)
            return keys[S.canonical(q, x)]

        one, zero, eps = qn(1, D), qn(0, D), qn(EPS, D)
        r, u = [], []
        for p, pt in centres:
            r.append(step(p, vadd(pt, (zero, eps)), (one, zero), (zero, -eps)))
            u.append(step(p, vadd(pt, (eps, zero)), (zero, one), (-eps, zero)))
        return cls(tuple(r), tuple(u)), centres


def orbit(O: Origami, limit: int = 100_000) -> list[Origami]:
    """Canonical representatives of the SL(2, Z) orbit, in breadth-first order."""
    start = O.canonical()
    seen = {start}
    out = [start]
    todo = deque([start])
    while todo:
        o = todo.popleft()
        for nxt in (o.shear_h(), o.shear_v()):
            c = nxt.canonical()
            if c not in seen:
                seen.add(c)
                out.append(c)
                todo.append(c)
                if len(out) > limit:
                    raise PrymError("orbit exceeds the size limit")
    return out


# -- model C and D surfaces --------------------------------------------------------


def _seed(d: int, hlk: str | None) -> Origami:
    from .invariants import hlk_invariant, primitive_normalization
    from .prototypes import reduced_prototypes
    from .surface import a_plus, sq_z

    D = d * d
    if d % 2 == 0:
        S = sq_z(d, reduced_prototypes(D)[0])
        return Origami.from_surface(S)
    for e in reduced_prototypes(D):
        S, _ = primitive_normalization(a_plus(D, e))
        if str(hlk_invariant(S)) == hlk:
            return Origami.from_surface(S)
    raise PrymError(f"no prototype with HLK invariant {hlk} for d={d}")


SEED_HLK = {"C": "(3,[])", "D": "(0,[h,v,c])"}
MODEL_CYLINDERS = {"C": 2, "D": 1}


def component_orbit(d: int, model: str) -> list[Origami]:
    """The orbit that should carry model C (or D) surfaces for D = d^2."""
    hlk = None if d % 2 == 0 else SEED_HLK[model]
    return orbit(_seed(d, hlk))


def find_model(orb: list[Origami], model: str) -> Origami | None:
    """First orbit member with the model's horizontal and vertical cylinder
    counts.  SL(2, Z) permutes the h, v, c types, so for even d a member
    of type (1,[h,h]) is preferred when one exists."""
    from .invariants import hlk_invariant

    want = MODEL_CYLINDERS[model]
    hits = [o for o in orb if o.horizontal_cylinders() == want and o.vertical_cylinders() == 3]
    for o in hits:
        if hlk_invariant(o.to_surface()).types in ((), ("h", "h")):
            return o
    return hits[0] if hits else None


def model_surface(model: str, d: int) -> TranslationSurface:
    if model not in MODEL_CYLINDERS:
        raise InadmissibleSpec(f"unknown model {model!r}")
    if d <= 4:
        raise InadmissibleSpec("models C and D need d > 4")
    o = find_model(component_orbit(d, model), model)
    if o is None:
        raise PrymError(f"no model {model} surface in the orbit for d={d}")
    return o.to_surface(d * d, SurfaceSpec(model, d * d, None, None, d))


@dataclass
class VerticalShape:
    central: int
    laterals: tuple[int, int]
    lateral_moduli_equal: bool
    circumference_ratio: QuadNum  # lateral over central
    moduli_ratio: QuadNum  # lateral over central
    width_ratio: QuadNum  # lateral over central thickness

    def laws_hold(self) -> bool:
        return (self.lateral_moduli_equal and self.moduli_ratio.is_rational()
                and self.width_ratio.is_rational())


def vertical_shape(S: TranslationSurface) -> VerticalShape:
    """Central and lateral vertical cylinders of a model C or D surface.
    The central cylinder is the one carrying interior Prym fixed points."""
    from .cylinders import cylinder_decomposition

    dec = cylinder_decomposition(S, (0, 1))
    cyl = dec.cylinders
    if len(cyl) != 3:
        raise PrymError(f"expected 3 vertical cylinders, got {len(cyl)}")
    inside = {dec.cylinder_of(label) for label in LABELS} - {None}
    if len(inside) != 1:
        raise PrymError(f"fixed points lie in cylinders {sorted(inside)}")
    c = inside.pop()
    a, b = (i for i in range(3) if i != c)
    return VerticalShape(
        c, (a, b), cyl[a].modulus == cyl[b].modulus,
        cyl[a].frame_width / cyl[c].frame_width,
        cyl[a].modulus / cyl[c].modulus,
        cyl[a].frame_height / cyl[c].frame_height,
    )


def nonexistence_failures(d: int) -> list[str]:
    """Orbit-wide check that, for odd d, the (3,[]) component has no
    one-cylinder direction and the (0,[h,v,c]) component no two-cylinder
    direction.  Every rational direction is horizontal for some orbit
    member, so scanning horizontal counts is exhaustive."""
    if d % 2 == 0:
        return []
    out = []
    for model, other in (("C", 1), ("D", 2)):
        for o in component_orbit(d, model):
            if o.horizontal_cylinders() == other:
                out.append(f"d={d}: {SEED_HLK[model]} orbit has a {other}-cylinder direction")
                break
    return out
