"""Compute the permutation group of the regular Prym points on each
component of E_D(4) and compare it with the predicted answer.

Lower bounds are generated by multitwist permutations computed on chosen
prototype surfaces.  Upper bounds come from the fr classes (even non-square
D that is a square mod 16), the HLK invariant (even squares), or are the
full symmetric group.  ``predicted_group`` is only read when the verdict is
formed.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .cylinders import cylinder_decomposition
from .errors import PrymError
from .invariants import fr_action, fr_classes, hlk_invariant, restricted_case
from .permgroup import MarkedPermutation, SubgroupClass, classify, closure, setwise_stabilizer
from .prototypes import (Prototype, admissible_range, component_tag, components,
                         predicted_group, reduced_prototypes)
from .qfield import canonical_d, square_root
from .surface import LABELS, TranslationSurface, a_minus, a_plus, b8, z_surface
from .twists import multitwist, pq_decompose, twist_permutation

SYM3 = closure([MarkedPermutation.from_cycles([(1, 2)]), MarkedPermutation.from_cycles([(1, 3)])])
HORIZONTAL, VERTICAL = (1, 0), (0, 1)


@dataclass(frozen=True)
class Generator:
    surface: str
    direction: tuple[int, int]
    perm: MarkedPermutation

    def to_dict(self) -> dict:
        return {"surface": self.surface, "direction": f"({self.direction[0]},{self.direction[1]})",
                "cycles": str(self.perm)}


@dataclass
class ComponentResult:
    D: int
    tag: str
    surfaces: list[str] = field(default_factory=list)
    generators: list[Generator] = field(default_factory=list)
    lower: SubgroupClass | None = None
    upper: SubgroupClass | None = None
    upper_source: str = "none"
    predicted: str | None = None
    verdict: bool = False
    errors: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "tag": self.tag,
            "surface": ", ".join(self.surfaces),
            "generators": [g.to_dict() for g in self.generators],
            "lower": str(self.lower) if self.lower else None,
            "upper": str(self.upper) if self.upper else None,
            "upper_source": self.upper_source,
            "predicted": self.predicted,
            "verdict": "pass" if self.verdict else "fail",
            "errors": list(self.errors),
        }


# -- generator selection ----------------------------------------------------------


def _twist(S: TranslationSurface, direction) -> Generator:
    dec = cylinder_decomposition(S, direction)
    return Generator(S.spec.label(), tuple(direction), twist_permutation(S, dec))


def _odd_choices(D: int) -> list[int]:
    return [-5, -3] if D % 16 == 1 else [-1, 1]


def _plan(D: int) -> dict[str, list[tuple[TranslationSurface, list]]]:
    """Surfaces and directions used for the lower bound on each component."""
    if D == 8:
        return {"whole": [(b8(), [HORIZONTAL, VERTICAL])]}
    if D == 17:
        S = a_plus(17, -3)
        tag = component_tag("A+", -3, 17)
        other = "minus" if tag == "plus" else "plus"
        return {tag: [(S, [HORIZONTAL, VERTICAL])],
                other: [(z_surface(17, -3), [HORIZONTAL, (2, 1)])]}
    if D == 25:
        return {component_tag("A-", -3, 25): [(a_minus(25, -3), [HORIZONTAL, VERTICAL])],
                component_tag("A-", -1, 25): [(a_minus(25, -1), [HORIZONTAL, (1, 1)])]}
    if D % 2:
        out = {}
        for e in _odd_choices(D):
            out[component_tag("A+", e, D)] = [(a_plus(D, e), [HORIZONTAL, VERTICAL])]
        return out
    if D % 16 in (8, 12):
        e0 = 0 if D % 16 == 8 else -2
        return {"whole": [(a_plus(D, e0), [HORIZONTAL, VERTICAL])]}
    # even D that is a square mod 16: horizontal twists on Z_D(e), tried in order
    return {"whole": [(z_surface(D, e), [HORIZONTAL]) for e in reduced_prototypes(D)]}


def _upper_bound(D: int) -> tuple[frozenset, str, list[str]]:
    """Upper bound on the group and where it comes from.  For the obstructed
    cases every e in S_D is checked and the first one is reported."""
    notes = []
    if D % 2 == 0 and D % 16 in (0, 4):
        bounds = []
        if square_root(D) is None:
            for e in reduced_prototypes(D):
                bounds.append((e, fr_classes(D, e).upper))
            source = "fr"
        else:
            for e in reduced_prototypes(D):
                inv = hlk_invariant(z_surface(D, e))
                integral = [i for i, lb in enumerate(LABELS, 1) if inv.points[lb] == "0"]
                bounds.append((e, setwise_stabilizer(integral)))
            source = "hlk"
        first = bounds[0][1]
        for e, b in bounds[1:]:
            if b != first:
                notes.append(f"D={D}: upper bound for e={e} differs from e={bounds[0][0]}")
        return first, f"{source}(e={bounds[0][0]})", notes
    return SYM3, "none", notes


def compute_group(D: int, component: str = "whole") -> ComponentResult:
    res = ComponentResult(D, component)
    try:
        plan = _plan(D)
        if component not in plan:
            raise PrymError(f"D={D} has no component {component!r}; expected one of {sorted(plan)}")
        upper, res.upper_source, notes = _upper_bound(D)
        res.errors += notes
        res.upper = classify(upper)
        gens: list[Generator] = []
        for S, dirs in plan[component]:
            res.surfaces.append(S.spec.label())
            gens += [_twist(S, v) for v in dirs]
            if not all(g.perm.is_identity() for g in gens):
                break  # more surfaces are only tried while the twists are trivial
        res.generators = gens
        lower = closure([g.perm for g in gens])
        res.lower = classify(lower)
        outside = [str(g.perm) for g in gens if g.perm not in upper]
        if outside:
            res.errors.append(f"generators {outside} escape the upper bound")
        res.predicted = predicted_group(D)
        res.verdict = (not outside and lower == upper
                       and res.lower.conjugacy() == res.predicted)
    except PrymError as exc:
        res.errors.append(f"{type(exc).__name__}: {exc}")
        res.verdict = False
    return res


# -- property suites -------------------------------------------------------------------


def lemma41_expected(model: str, direction: str, b: int, e: int) -> MarkedPermutation:
    """Parity predictions for the twist permutations of A+/A-_D(e)."""
    ident = MarkedPermutation.identity()
    if model == "A+":
        if direction == "h":
            return MarkedPermutation.from_cycles([(1, 2)]) if b % 2 else ident
        return MarkedPermutation.from_cycles([(1, 3)])
    if direction == "h":
        return MarkedPermutation.from_cycles([(1, 2)])
    return MarkedPermutation.from_cycles([(2, 3)]) if (b - e - 2) % 2 else ident


def lemma41_rows(D: int) -> list[dict]:
    rows = []
    for e in reduced_prototypes(D):
        b = Prototype.reduced(D, e).b
        for model, build in (("A+", a_plus), ("A-", a_minus)):
            S = build(D, e)
            for name, v in (("h", HORIZONTAL), ("v", VERTICAL)):
                want = lemma41_expected(model, name, b, e)
                try:
                    got = str(_twist(S, v).perm)
                except PrymError as exc:
                    got = f"error: {exc}"
                rows.append({"D": D, "e": e, "b": b, "model": model, "direction": name,
                             "computed": got, "expected": str(want), "ok": got == str(want)})
    return rows


FR_EXPECTED = {"w1": (Fraction(0), Fraction(1, 2)), "w2": (Fraction(0), Fraction(1, 2)),
               "w3": (Fraction(0), Fraction(0))}


def fr_law_rows(D: int) -> list[dict]:
    """fr values of Z_D(e) and the action law for its twist matrices."""
    from .invariants import displacement

    if not restricted_case(D):
        return []
    d = canonical_d(D)
    rows = []
    for e in reduced_prototypes(D):
        part = fr_classes(D, e, d)
        rows.append({"D": D, "e": e, "check": "fr values",
                     "ok": part.fr == FR_EXPECTED})
        S = z_surface(D, e)
        for name, v in (("h", HORIZONTAL), ("v", VERTICAL)):
            try:
                A = multitwist(cylinder_decomposition(S, v)).matrix
                pq = pq_decompose(A, D, d)
                ok = pq.det_P % 2 == 1
                for label in LABELS:
                    lhs, rhs = fr_action(A, displacement(S, label), D, d)
                    ok = ok and lhs == rhs
                rows.append({"D": D, "e": e, "check": f"action {name}", "ok": ok})
            except PrymError as exc:
                rows.append({"D": D, "e": e, "check": f"action {name}", "ok": False,
                             "error": str(exc)})
    return rows


# -- range runs -------------------------------------------------------------------------


def _verify_one(D: int) -> dict:
    comps = [compute_group(D, tag) for tag in components(D)]
    return {"D": D, "components": comps, "lemma41": lemma41_rows(D), "fr_law": fr_law_rows(D)}


@dataclass
class Report:
    dmin: int
    dmax: int
    results: list[dict]
    lemma41: dict
    fr_law: dict
    failures: list[str]
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "range": {"dmin": self.dmin, "dmax": self.dmax,
                      "admissible": [r["D"] for r in self.results]},
            "results": [{"D": r["D"], "components": [c.to_dict() for c in r["components"]]}
                        for r in self.results],
            "properties": {
                "multitwists_only": True,
                "lemma41_table": self.lemma41,
                "fr_law": self.fr_law,
            },
            "failures": list(self.failures),
            "overall": "pass" if self.ok else "fail",
        }
        if timing:
            out["timing"] = {"seconds": round(self.elapsed, 3)}
        return out


def _tally(rows: list[dict]) -> dict:
    good = sum(r["ok"] for r in rows)
    return {"pass": good, "fail": len(rows) - good}


def verify_range(dmin: int, dmax: int, jobs: int = 1) -> Report:
    if dmin > dmax:
        raise ValueError("dmin must not exceed dmax")
    start = time.perf_counter()
    Ds = admissible_range(dmin, dmax)
    if jobs > 1 and len(Ds) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_D = list(pool.map(_verify_one, Ds, chunksize=4))
    else:
        per_D = [_verify_one(D) for D in Ds]
    failures = []
    l41, frl = [], []
    for r in per_D:
        for c in r["components"]:
            if not c.verdict:
                failures.append(f"D={c.D} {c.tag}: lower {c.lower}, upper {c.upper}, "
                                f"predicted {c.predicted}; {'; '.join(c.errors)}")
        l41 += r["lemma41"]
        frl += r["fr_law"]
    failures += [f"parity table D={x['D']} e={x['e']} {x['model']} {x['direction']}: "
                 f"{x['computed']} != {x['expected']}" for x in l41 if not x["ok"]]
    failures += [f"fr law D={x['D']} e={x['e']} {x['check']}" for x in frl if not x["ok"]]
    return Report(dmin, dmax, per_D, _tally(l41), _tally(frl), failures,
                  time.perf_counter() - start)


# -- models C and D -----------------------------------------------------------------------


APPENDIX_HLK = {"C": "(3,[])", "D": "(0,[h,v,c])"}


def appendixA_check(d: int) -> dict:
    """Build the model C and D surfaces for D = d^2 and check square counts,
    vertical cylinder shape, moduli laws and HLK values."""
    from .origami import nonexistence_failures, vertical_shape, model_surface
    from .surface import validate_surface

    section = {"d": d, "models": {}, "failures": []}
    for model in ("C", "D"):
        entry: dict = {}
        try:
            S = model_surface(model, d)
            rep = validate_surface(S)
            n = S.meta["n"]
            inv = hlk_invariant(S)
            shape = vertical_shape(S)
            entry = {
                "valid": rep.ok,
                "n": n,
                "hlk": str(inv),
                "vertical_cylinders": 3,
                "lateral_moduli_equal": shape.lateral_moduli_equal,
                "moduli_ratio": str(shape.moduli_ratio),
                "width_ratio": str(shape.width_ratio),
                "circumference_ratio": str(shape.circumference_ratio),
                "horizontal_cylinders": len(cylinder_decomposition(S, HORIZONTAL).cylinders),
            }
            bad = [] if rep.ok else list(rep.failures)
            if d % 2:
                want_n = 2 * d if model == "C" else d
                if n != want_n:
                    bad.append(f"model {model}: {n} squares, expected {want_n}")
                if str(inv) != APPENDIX_HLK[model]:
                    bad.append(f"model {model}: HLK {inv}, expected {APPENDIX_HLK[model]}")
            elif inv.counts() != (1, (2, 0, 0)):
                bad.append(f"model {model}: HLK {inv} does not have counts (1,[2,0,0])")
            if not shape.laws_hold():
                bad.append(f"model {model}: moduli laws fail")
            if model == "D":
                widths = [c.frame_height for c in cylinder_decomposition(S, VERTICAL).cylinders]
                if not all((w / widths[0]).is_rational() for w in widths):
                    bad.append("model D: vertical widths are not commensurable")
            entry["failures"] = bad
            section["failures"] += bad
        except PrymError as exc:
            entry = {"failures": [f"{type(exc).__name__}: {exc}"]}
            section["failures"] += entry["failures"]
        section["models"][model] = entry
    section["failures"] += nonexistence_failures(d)
    section["ok"] = not section["failures"]
    return section


# -- output ------------------------------------------------------------------------------------


def report_json(rep: Report, timing: bool = False) -> str:
    return json.dumps(rep.to_dict(timing), indent=2, sort_keys=False) + "\n"


def report_csv(rep: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["D", "tag", "surface", "generators", "lower", "upper", "predicted", "verdict"])
    for r in rep.results:
        for c in r["components"]:
            gens = " ".join(f"{g.direction}:{g.perm}" for g in c.generators)
            w.writerow([c.D, c.tag, ", ".join(c.surfaces), gens, c.lower, c.upper,
                        c.predicted, "pass" if c.verdict else "fail"])
    return buf.getvalue()


def report_text(rep: Report) -> str:
    lines = [f"D in [{rep.dmin}, {rep.dmax}]: {len(rep.results)} admissible discriminants"]
    for r in rep.results:
        for c in r["components"]:
            gens = ", ".join(f"{g.direction} {g.perm}" for g in c.generators)
            lines.append(f"  D={c.D:<4} {c.tag:<6} {c.lower!s:<14} upper {c.upper!s:<14} "
                         f"{'pass' if c.verdict else 'FAIL'}  [{gens}]")
    lines.append(f"parity table: {rep.lemma41['pass']} pass, {rep.lemma41['fail']} fail")
    lines.append(f"fr law: {rep.fr_law['pass']} pass, {rep.fr_law['fail']} fail")
    lines += [f"FAIL {f}" for f in rep.failures]
    lines.append("overall: " + ("pass" if rep.ok else "fail"))
    return "\n".join(lines) + "\n"
