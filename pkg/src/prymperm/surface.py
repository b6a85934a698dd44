"""Translation surfaces glued from convex polygons with exact coordinates.

Every polygon is stored counter-clockwise.  Edge ``i`` of polygon ``p``
runs from vertex ``i`` to vertex ``i+1``; an edge is glued to a parallel
edge of the same length and opposite orientation.  The Prym involution is
given per polygon as ``x -> c_p - x`` landing in polygon ``sigma(p)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import (
    InadmissibleSpec,
    InvalidSurface,
    PrymError,
    SingularMatrix,
)
from .prototypes import Prototype, reduced_prototypes
from .qfield import Matrix, QuadNum, Vec, lam, mat_det, mat_mul, mat_vec, qn, square_root

Corner = tuple[int, int]
Edge = tuple[int, int]

LABELS = ("w1", "w2", "w3")
MODELS = ("A+", "A-", "Z", "B8", "SQZ", "C", "D")


def vadd(u: Vec, v: Vec) -> Vec:
    return (u[0] + v[0], u[1] + v[1])


def vsub(u: Vec, v: Vec) -> Vec:
    return (u[0] - v[0], u[1] - v[1])


def vneg(u: Vec) -> Vec:
    return (-u[0], -u[1])


def vscale(s, u: Vec) -> Vec:
    return (s * u[0], s * u[1])


def cross(u: Vec, v: Vec) -> QuadNum:
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Vec, v: Vec) -> QuadNum:
    return u[0] * v[0] + u[1] * v[1]


def vec(x, y, D: int) -> Vec:
    return (qn(x, D), qn(y, D))


@dataclass(frozen=True)
class SurfaceSpec:
    model: str
    D: int | None = None
    e: int | None = None
    proto: Prototype | None = None
    d: int | None = None

    def label(self) -> str:
        if self.model in ("C", "D"):
            return f"{self.model}(d={self.d})"
        if self.model == "B8":
            return "B_8(0)"
        if self.proto is not None and self.proto.c != 1:
            p = self.proto
            return f"{self.model}({p.a},{p.b},{p.c},{p.e})"
        return f"{self.model}_{self.D}({self.e})"


@dataclass(frozen=True, eq=False)
class TranslationSurface:
    D: int
    polygons: tuple[tuple[Vec, ...], ...]
    gluings: dict[Edge, Edge]
    marked: dict[str, tuple[int, Vec]]
    involution: tuple[tuple[int, Vec], ...]
    spec: SurfaceSpec | None = None
    meta: dict = field(default_factory=dict)

    # -- combinatorics -------------------------------------------------

    def nsides(self, p: int) -> int:
        return len(self.polygons[p])

    def edges(self):
        for p, poly in enumerate(self.polygons):
            for i in range(len(poly)):
                yield p, i

    def edge(self, p: int, i: int) -> tuple[Vec, Vec]:
        poly = self.polygons[p]
        return poly[i], poly[(i + 1) % len(poly)]

    def edge_vector(self, p: int, i: int) -> Vec:
        a, b = self.edge(p, i)
        return vsub(b, a)

    @cached_property
    def translations(self) -> dict[Edge, Vec]:
        """Vector carrying edge (p, i) onto its partner."""
        out = {}
        for (p, i), (q, j) in self.gluings.items():
            out[(p, i)] = vsub(self.edge(q, j)[1], self.edge(p, i)[0])
        return out

    def next_corner(self, p: int, k: int) -> Corner:
        """The corner met next when turning counter-clockwise around vertex k of p."""
        q, j = self.gluings[(p, (k - 1) % self.nsides(p))]
        return q, j

    @cached_property
    def _vertex_data(self):
        classes: list[list[Corner]] = []
        index: dict[Corner, int] = {}
        for p, poly in enumerate(self.polygons):
            for k in range(len(poly)):
                if (p, k) in index:
                    continue
                cid = len(classes)
                orbit = []
                c = (p, k)
                while c not in index:
                    index[c] = cid
                    orbit.append(c)
                    c = self.next_corner(*c)
                if c != (p, k):
                    raise InvalidSurface("corner cycle does not close")
                classes.append(orbit)
        return classes, index

    @property
    def vertex_classes(self) -> list[list[Corner]]:
        return self._vertex_data[0]

    def vertex_class(self, p: int, k: int) -> int:
        return self._vertex_data[1][(p, k)]

    def _corner_turns(self, p: int, k: int) -> int:
        # 1 when the half-open sector [out, in) contains the direction (1, 0)
        poly = self.polygons[p]
        n = len(poly)
        v = poly[k]
        u = vsub(poly[(k + 1) % n], v)
        w = vsub(poly[(k - 1) % n], v)
        one = qn(1, self.D)
        zero = qn(0, self.D)
        r = (one, zero)
        c_uw = cross(u, w).sign()
        c_ur = cross(u, r).sign()
        if c_uw > 0:
            return int(c_ur >= 0 and cross(r, w).sign() > 0 and
                       not (c_ur == 0 and dot(u, r).sign() < 0))
        if c_uw == 0 and dot(u, w).sign() < 0:
            return int(c_ur > 0 or (c_ur == 0 and dot(u, r).sign() > 0))
        raise InvalidSurface(f"reflex or degenerate corner {k} in polygon {p}")

    @cached_property
    def cone_angles(self) -> list[int]:
        """Cone angle of each vertex class, in multiples of 2*pi."""
        return [sum(self._corner_turns(p, k) for p, k in cls)
                for cls in self.vertex_classes]

    @cached_property
    def singular_classes(self) -> frozenset[int]:
        return frozenset(i for i, a in enumerate(self.cone_angles) if a != 1)

    def is_singular_corner(self, p: int, k: int) -> bool:
        return self.vertex_class(p, k) in self.singular_classes

    @cached_property
    def genus(self) -> int:
        V = len(self.vertex_classes)
        E = sum(len(poly) for poly in self.polygons) // 2
        F = len(self.polygons)
        chi = V - E + F
        return (2 - chi) // 2

    @cached_property
    def area(self) -> QuadNum:
        total = qn(0, self.D)
        for poly in self.polygons:
            n = len(poly)
            for i in range(n):
                total = total + cross(poly[i], poly[(i + 1) % n])
        return total / 2

    # -- points --------------------------------------------------------

    def locate(self, p: int, pt: Vec):
        """('vertex', k), ('edge', i), ('face', None), or None when outside."""
        poly = self.polygons[p]
        n = len(poly)
        on = None
        for i in range(n):
            a = poly[i]
            s = cross(vsub(poly[(i + 1) % n], a), vsub(pt, a)).sign()
            if s < 0:
                return None
            if s == 0:
                if pt == a:
                    return ("vertex", i)
                b = poly[(i + 1) % n]
                # collinear neighbours share the line, so check the segment range
                if dot(vsub(pt, a), vsub(b, a)).sign() > 0 and dot(vsub(pt, b), vsub(a, b)).sign() > 0:
                    on = i
        if on is not None:
            return ("edge", on)
        return ("face", None)

    def canonical(self, p: int, pt: Vec):
        loc = self.locate(p, pt)
        if loc is None:
            raise PrymError(f"point {pt} is not in polygon {p}")
        kind, i = loc
        if kind == "vertex":
            return ("v", self.vertex_class(p, i))
        if kind == "edge":
            q, j = self.gluings[(p, i)]
            if (q, j) < (p, i):
                return ("e", q, j, vadd(pt, self.translations[(p, i)]))
            return ("e", p, i, pt)
        return ("f", p, pt)

    def same_point(self, a: tuple[int, Vec], b: tuple[int, Vec]) -> bool:
        return self.canonical(*a) == self.canonical(*b)

    def involute(self, p: int, pt: Vec) -> tuple[int, Vec]:
        q, c = self.involution[p]
        return q, vsub(c, pt)

    def vertex_map(self, p: int) -> list[int] | None:
        """Index map of vertices of p onto vertices of sigma(p), if consistent."""
        q, c = self.involution[p]
        target = self.polygons[q]
        if len(target) != len(self.polygons[p]):
            return None
        where = {v: k for k, v in enumerate(target)}
        out = []
        for v in self.polygons[p]:
            k = where.get(vsub(c, v))
            if k is None:
                return None
            out.append(k)
        return out

    @cached_property
    def fixed_points(self) -> dict:
        """Canonical keys of all fixed points of the involution, mapped to a
        representative (polygon, point)."""
        found = {}
        for p, poly in enumerate(self.polygons):
            q, c = self.involution[p]
            vm = self.vertex_map(p)
            if vm is None:
                raise InvalidSurface(f"involution does not map polygon {p} onto {q}")
            if q == p:
                mid = vscale(Fraction(1, 2), c)
                found.setdefault(self.canonical(p, mid), (p, mid))
            for i in range(len(poly)):
                j = vm[i]
                if self.gluings[(p, i)] == (q, j):
                    tau = self.translations[(q, j)]
                    x = vscale(Fraction(1, 2), vadd(c, tau))
                    found.setdefault(self.canonical(p, x), (p, x))
                k = self.vertex_class(p, i)
                if self.vertex_class(q, j) == k:
                    found.setdefault(("v", k), (p, poly[i]))
        return found

    def singularity(self) -> tuple[int, Vec]:
        s = sorted(self.singular_classes)
        if len(s) != 1:
            raise InvalidSurface(f"expected one singularity, found {len(s)}")
        p, k = self.vertex_classes[s[0]][0]
        return p, self.polygons[p][k]

    def marked_points(self) -> dict[str, tuple[int, Vec]]:
        out = {"s": self.singularity()}
        out.update(self.marked)
        return out

    def __repr__(self) -> str:
        name = self.spec.label() if self.spec else "surface"
        return f"<TranslationSurface {name}: {len(self.polygons)} polygons, D={self.D}>"


# -- validation ---------------------------------------------------------


@dataclass
class ValidationReport:
    ok: bool
    failures: list[str]
    stats: dict

    def __bool__(self) -> bool:
        return self.ok


def _structure_failures(S: TranslationSurface) -> list[str]:
    bad = []
    for p, poly in enumerate(S.polygons):
        if len(poly) < 3:
            bad.append(f"polygon {p} has fewer than 3 vertices")
        for v in poly:
            for x in v:
                if x.d_param != S.D:
                    bad.append(f"polygon {p} mixes radicands")
    for e in S.edges():
        partner = S.gluings.get(e)
        if partner is None:
            bad.append(f"edge {e} is not glued")
            continue
        if partner == e:
            bad.append(f"edge {e} is glued to itself")
        elif S.gluings.get(partner) != e:
            bad.append(f"gluing of {e} is not an involution")
        elif vadd(S.edge_vector(*e), S.edge_vector(*partner)) != (0, 0):
            bad.append(f"edges {e} and {partner} are not opposite translates")
    return bad


def validate_surface(S: TranslationSurface, deep: bool = True) -> ValidationReport:
    """Check the gluing, cone angle, involution and marked-point invariants.

    With ``deep`` set, surfaces built from A+/A-/Z templates are also
    checked against their horizontal and vertical cylinder data.
    """
    failures = _structure_failures(S)
    stats: dict = {}
    if failures:
        return ValidationReport(False, failures, stats)
    try:
        angles = S.cone_angles
    except PrymError as exc:
        return ValidationReport(False, [f"cone angle: {exc}"], stats)
    stats["cone_angles"] = sorted(angles, reverse=True)
    stats["genus"] = S.genus
    singular = [a for a in angles if a != 1]
    if singular != [5]:
        failures.append(f"cone angle: expected a single 10pi vertex, got "
                        f"{[2 * a for a in angles]} (multiples of pi)")
    if S.genus != 3:
        failures.append(f"euler characteristic gives genus {S.genus}")
    if S.area.sign() <= 0:
        failures.append("area is not positive")
    stats["area"] = S.area
    failures += _involution_failures(S)
    if not failures and deep and S.spec is not None:
        from .cylinders import lemma41_failures
        failures += lemma41_failures(S)
    return ValidationReport(not failures, failures, stats)


def _involution_failures(S: TranslationSurface) -> list[str]:
    bad = []
    if len(S.involution) != len(S.polygons):
        return ["involution data does not cover every polygon"]
    for p in range(len(S.polygons)):
        q, c = S.involution[p]
        if S.involution[q][0] != p or S.involution[q][1] != c:
            bad.append(f"involution is not an involution on polygon {p}")
        if S.vertex_map(p) is None:
            bad.append(f"involution does not map polygon {p} onto polygon {q}")
    if bad:
        return bad
    for p, i in S.edges():
        q, c = S.involution[p]
        j = S.vertex_map(p)[i]
        p2, i2 = S.gluings[(p, i)]
        q2, c2 = S.involution[p2]
        j2 = S.vertex_map(p2)[i2]
        if S.gluings[(q, j)] != (q2, j2):
            bad.append(f"involution does not respect the gluing of edge {(p, i)}")
            continue
        # x + tau on the partner maps to c2 - x - tau, which must be (c - x) + tau'
        if vsub(vsub(c2, c), S.translations[(p, i)]) != S.translations[(q, j)]:
            bad.append(f"involution translation mismatch on edge {(p, i)}")
    if bad:
        return bad
    try:
        fixed = S.fixed_points
    except PrymError as exc:
        return [f"involution: {exc}"]
    if len(fixed) != 4:
        bad.append(f"involution fixes {len(fixed)} points, expected 4")
    try:
        s = S.singularity()
    except PrymError as exc:
        return bad + [str(exc)]
    if S.canonical(*s) not in fixed:
        bad.append("singularity is not fixed by the involution")
    keys = set()
    for label in LABELS:
        if label not in S.marked:
            bad.append(f"marked point {label} missing")
            continue
        p, pt = S.marked[label]
        try:
            key = S.canonical(p, pt)
        except PrymError as exc:
            bad.append(f"{label}: {exc}")
            continue
        keys.add(key)
        if key not in fixed:
            bad.append(f"{label} is not fixed by the involution")
        if key[0] == "v" and key[1] in S.singular_classes:
            bad.append(f"{label} sits at the singularity")
    if len(keys) != 3:
        bad.append("marked points are not distinct")
    return bad


# -- linear action ------------------------------------------------------


def apply_matrix(S: TranslationSurface, M: Matrix) -> TranslationSurface:
    """Image of S under M in GL+(2, R); the gluing pattern is unchanged."""
    M = tuple(tuple(qn(x, S.D) for x in row) for row in M)
    det = mat_det(M)
    if det.sign() == 0:
        raise SingularMatrix("matrix is singular")
    if det.sign() < 0:
        raise SingularMatrix("matrix reverses orientation")
    polygons = tuple(tuple(mat_vec(M, v) for v in poly) for poly in S.polygons)
    marked = {k: (p, mat_vec(M, v)) for k, (p, v) in S.marked.items()}
    involution = tuple((q, mat_vec(M, c)) for q, c in S.involution)
    meta = dict(S.meta)
    # the template checks of validate_surface only apply to untransformed surfaces
    meta["matrix"] = mat_mul(M, meta["matrix"]) if "matrix" in meta else M
    return TranslationSurface(S.D, polygons, dict(S.gluings), marked, involution,
                              S.spec, meta)


def same_surface(S: TranslationSurface, T: TranslationSurface) -> bool:
    """Literal equality of the polygon data (same labelling)."""
    return (S.D == T.D and S.polygons == T.polygons and S.gluings == T.gluings
            and S.marked == T.marked and S.involution == T.involution)


def _on_segment(x: Vec, a: Vec, b: Vec) -> bool:
    e = vsub(b, a)
    t = dot(vsub(x, a), e) / dot(e, e)
    return t.sign() >= 0 and (t - 1).sign() <= 0


def flow(S: TranslationSurface, p: int, pt: Vec, v: Vec, max_steps: int = 10_000):
    """Move a point in straight line by the vector v; fails on hitting a vertex."""
    rest = v
    for _ in range(max_steps):
        poly = S.polygons[p]
        n = len(poly)
        ties: list[int] = []
        best = None
        for i in range(n):
            a = poly[i]
            e = vsub(poly[(i + 1) % n], a)
            rate = cross(e, rest)
            if rate.sign() >= 0:
                continue
            s = cross(e, vsub(pt, a)) / (-rate)
            if best is None or s < best:
                best, ties = s, [i]
            elif s == best:
                ties.append(i)
        if best is None or best >= 1:
            return p, vadd(pt, rest)
        s = best
        x = vadd(pt, vscale(s, rest))
        if x in poly:
            raise PrymError("straight-line flow ran into a vertex")
        # collinear edges share the exit time; keep the one containing x
        i = next(j for j in ties if _on_segment(x, poly[j], poly[(j + 1) % n]))
        rest = vscale(1 - s, rest)
        tau = S.translations[(p, i)]
        p = S.gluings[(p, i)][0]
        pt = vadd(x, tau)
    raise PrymError("flow did not terminate")


# -- builders -----------------------------------------------------------


def _glue(pairs) -> dict[Edge, Edge]:
    g = {}
    for a, b in pairs:
        g[a] = b
        g[b] = a
    return g


def _reflect_polygon(poly, c):
    return tuple(vsub(c, v) for v in poly)


def _prototype(D: int | None, e: int | None, proto: Prototype | None) -> Prototype:
    if proto is not None:
        if D is not None and proto.d_param != D:
            raise InadmissibleSpec(f"prototype has discriminant {proto.d_param}, not {D}")
        return proto
    if D is None or e is None:
        raise InadmissibleSpec("need (D, e) or a prototype")
    if e not in reduced_prototypes(D):
        raise InadmissibleSpec(f"e={e} is not in S_{D}")
    return Prototype.reduced(D, e)


def a_plus(D: int | None = None, e: int | None = None,
           proto: Prototype | None = None) -> TranslationSurface:
    """A+(a, b, c, e): a lambda-square between two exchanged b x c cylinders."""
    pr = _prototype(D, e, proto)
    D = pr.d_param
    L = lam(D, pr.e)
    a, b, c = qn(pr.a, D), qn(pr.b, D), qn(pr.c, D)
    z = qn(0, D)
    R1 = ((z, z), (L, z), (b, z), (b + a, c), (a + L, c), (a, c))
    Q = ((a, c), (a + L, c), (a + L, c + L), (a, c + L))
    centre = (2 * a + L, 2 * c + L)
    R2 = _reflect_polygon(R1, centre)
    gl = _glue([
        ((0, 2), (0, 5)),
        ((0, 4), (1, 0)),
        ((0, 3), (0, 1)),
        ((0, 0), (2, 0)),
        ((1, 1), (1, 3)),
        ((1, 2), (2, 4)),
        ((2, 1), (2, 3)),
        ((2, 2), (2, 5)),
    ])
    half = Fraction(1, 2)
    marked = {
        "w1": (1, (a + L * half, c + L * half)),
        "w2": (1, (a, c + L * half)),
        "w3": (0, (L * half, z)),
    }
    inv = ((2, centre), (1, centre), (0, centre))
    spec = SurfaceSpec("A+", D, pr.e, pr)
    return TranslationSurface(D, (R1, Q, R2), gl, marked, inv, spec,
                              {"b": pr.b, "e": pr.e, "lambda": L})


def a_minus(D: int | None = None, e: int | None = None,
            proto: Prototype | None = None) -> TranslationSurface:
    """A-(a, b, c, e): a b x c cylinder carrying two exchanged lambda/2-squares."""
    pr = _prototype(D, e, proto)
    D = pr.d_param
    L = lam(D, pr.e)
    h = L / 2
    a, b, c = qn(pr.a, D), qn(pr.b, D), qn(pr.c, D)
    z = qn(0, D)
    R = ((z, z), (h, z), (b - h, z), (b, z),
         (b + a, c), (b + a - h, c), (a + h, c), (a, c))
    Q1 = ((a, c), (a + h, c), (a + h, c + h), (a, c + h))
    centre = (b + a, c)
    Q2 = _reflect_polygon(Q1, centre)
    gl = _glue([
        ((0, 3), (0, 7)),
        ((0, 6), (1, 0)),
        ((1, 2), (0, 0)),
        ((0, 5), (0, 1)),
        ((0, 2), (2, 0)),
        ((2, 2), (0, 4)),
        ((1, 1), (1, 3)),
        ((2, 1), (2, 3)),
    ])
    half = Fraction(1, 2)
    # w1 on the glued vertical side, w2 at the centre of the long cylinder
    marked = {
        "w1": (0, (a * half, c * half)),
        "w2": (0, ((b + a) * half, c * half)),
        "w3": (0, (b * half, z)),
    }
    inv = ((0, centre), (2, centre), (1, centre))
    spec = SurfaceSpec("A-", D, pr.e, pr)
    return TranslationSurface(D, (R, Q1, Q2), gl, marked, inv, spec,
                              {"b": pr.b, "e": pr.e, "lambda": L})


def z_matrix(D: int, e: int) -> Matrix:
    L = lam(D, e)
    return ((2 / L, qn(0, D)), (qn(0, D), qn(1, D)))


def z_surface(D: int, e: int, model: str = "Z") -> TranslationSurface:
    """Z_D(e) = diag(2/lambda, 1) . A-_D(e)."""
    S = apply_matrix(a_minus(D, e), z_matrix(D, e))
    meta = {k: v for k, v in S.meta.items() if k != "matrix"}
    return TranslationSurface(S.D, S.polygons, S.gluings, S.marked, S.involution,
                              SurfaceSpec(model, D, e), meta)


def sq_z(d: int, e: int) -> TranslationSurface:
    """The square-tiled surface Z_{d^2}(e) for even d > 4."""
    if d <= 4 or d % 2:
        raise InadmissibleSpec(f"SQZ needs an even d > 4, got {d}")
    return z_surface(d * d, e, model="SQZ")


def b8() -> TranslationSurface:
    from .special import b8_surface
    return b8_surface()


def build_surface(spec: SurfaceSpec) -> TranslationSurface:
    m = spec.model
    if m == "A+":
        return a_plus(spec.D, spec.e, spec.proto)
    if m == "A-":
        return a_minus(spec.D, spec.e, spec.proto)
    if m == "Z":
        if spec.D is None or spec.e is None:
            raise InadmissibleSpec("Z needs (D, e)")
        return z_surface(spec.D, spec.e)
    if m == "SQZ":
        d = spec.d
        if d is None and spec.D is not None:
            d = square_root(spec.D)
        if d is None or spec.e is None:
            raise InadmissibleSpec("SQZ needs a square discriminant and e")
        return sq_z(d, spec.e)
    if m == "B8":
        if spec.D not in (None, 8) or spec.e not in (None, 0):
            raise InadmissibleSpec("B8 only exists for D = 8, e = 0")
        return b8()
    if m in ("C", "D"):
        if spec.d is None or spec.d <= 4:
            raise InadmissibleSpec("models C and D need d > 4")
        from .origami import model_surface
        return model_surface(m, spec.d)
    raise InadmissibleSpec(f"unknown model {m!r}")


# -- JSON format --------------------------------------------------------


def _enc(x: QuadNum) -> dict:
    return {"p_num": x.p.numerator, "p_den": x.p.denominator,
            "q_num": x.q.numerator, "q_den": x.q.denominator, "D": x.d_param}


def _dec(obj: dict, D: int) -> QuadNum:
    if obj["D"] != D:
        raise InvalidSurface(f"coordinate radicand {obj['D']} differs from {D}")
    return QuadNum(Fraction(obj["p_num"], obj["p_den"]),
                   Fraction(obj["q_num"], obj["q_den"]), D)


def to_dict(S: TranslationSurface) -> dict:
    out = {
        "D": S.D,
        "polygons": [[[_enc(x), _enc(y)] for x, y in poly] for poly in S.polygons],
        "gluings": sorted([list(a), list(b)] for a, b in S.gluings.items() if a < b),
        "marked_points": {k: {"polygon": p, "point": [_enc(v[0]), _enc(v[1])]}
                          for k, (p, v) in sorted(S.marked.items())},
        "involution": [{"target": q, "centre": [_enc(c[0]), _enc(c[1])]}
                       for q, c in S.involution],
    }
    if S.spec is not None:
        sp = S.spec
        out["spec"] = {"model": sp.model, "D": sp.D, "e": sp.e, "d": sp.d,
                       "proto": None if sp.proto is None else
                       [sp.proto.a, sp.proto.b, sp.proto.c, sp.proto.e]}
    if "matrix" in S.meta:
        out["matrix"] = [[_enc(x) for x in row] for row in S.meta["matrix"]]
    return out


def from_dict(obj: dict) -> TranslationSurface:
    D = obj["D"]
    polygons = tuple(tuple((_dec(x, D), _dec(y, D)) for x, y in poly)
                     for poly in obj["polygons"])
    gl = _glue((tuple(a), tuple(b)) for a, b in obj["gluings"])
    marked = {k: (v["polygon"], (_dec(v["point"][0], D), _dec(v["point"][1], D)))
              for k, v in obj["marked_points"].items()}
    inv = tuple((r["target"], (_dec(r["centre"][0], D), _dec(r["centre"][1], D)))
                for r in obj["involution"])
    spec = None
    if obj.get("spec"):
        s = obj["spec"]
        proto = Prototype(*s["proto"]) if s.get("proto") else None
        spec = SurfaceSpec(s["model"], s.get("D"), s.get("e"), proto, s.get("d"))
    meta = {}
    if "matrix" in obj:
        meta["matrix"] = tuple(tuple(_dec(x, D) for x in row) for row in obj["matrix"])
    return TranslationSurface(D, polygons, gl, marked, inv, spec, meta)


def dumps(S: TranslationSurface) -> str:
    return json.dumps(to_dict(S), indent=1, sort_keys=True)


def loads(text: str) -> TranslationSurface:
    return from_dict(json.loads(text))
