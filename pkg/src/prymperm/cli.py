"""Command line entry point: ``prymperm <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from .errors import PrymError
from .qfield import square_root
from .surface import MODELS, SurfaceSpec, build_surface, dumps, loads, validate_surface


def _spec(args) -> SurfaceSpec:
    d = getattr(args, "d", None)
    if d is None and args.model in ("C", "D", "SQZ") and args.D is not None:
        d = square_root(args.D)
    D = args.D if args.D is not None else (d * d if d else None)
    e = args.e
    if args.model == "B8":
        D, e = 8, 0
    return SurfaceSpec(args.model, D, e, None, d)


def _surface(args):
    if args.load:
        with open(args.load) as fh:
            return loads(fh.read())
    if args.model is None:
        raise PrymError("need --model or --load")
    return build_surface(_spec(args))


def _direction(text: str) -> tuple[int, int]:
    x, y = text.split(",")
    return int(x), int(y)


def _write(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    from .verify import report_csv, report_json, report_text, verify_range

    rep = verify_range(args.dmin, args.dmax, args.jobs)
    if args.format == "json":
        out = report_json(rep, timing=args.timing)
    elif args.format == "csv":
        out = report_csv(rep)
    else:
        out = report_text(rep)
    _write(out, args.out)
    print(f"{len(rep.results)} discriminants in {rep.elapsed:.1f}s, "
          f"{'all pass' if rep.ok else f'{len(rep.failures)} failures'}", file=sys.stderr)
    return 0 if rep.ok else 1


def cmd_surface(args) -> int:
    S = _surface(args)
    rep = validate_surface(S)
    name = S.spec.label() if S.spec else "surface"
    print(f"{name}: D={S.D}, {len(S.polygons)} polygons, area {S.area}, genus {S.genus}")
    print(f"cone angles (multiples of 2pi): {S.cone_angles}")
    for label, (p, pt) in S.marked.items():
        print(f"  {label}: polygon {p} at ({pt[0]}, {pt[1]})")
    print("valid" if rep.ok else "INVALID: " + "; ".join(rep.failures))
    if args.emit:
        _write(dumps(S) + "\n", args.emit)
    return 0 if rep.ok else 1


def cmd_decompose(args) -> int:
    from .cylinders import cylinder_decomposition
    from .twists import multitwist, twist_permutation

    S = _surface(args)
    dec = cylinder_decomposition(S, _direction(args.dir))
    name = S.spec.label() if S.spec else "surface"
    print(f"{name} in direction {args.dir}: {len(dec.cylinders)} cylinders")
    for i, c in enumerate(dec.cylinders, 1):
        print(f"  C{i}: width {c.width}, height {c.height}, modulus {c.modulus}")
    for label in sorted(dec.point_locations):
        loc = dec.point_locations[label]
        where = f"cylinder C{loc.cylinder + 1}" if loc.interior else "boundary"
        print(f"  {label}: {where}{' (core)' if loc.on_core else ''}")
    mt = multitwist(dec)
    print(f"multitwist t = {mt.t}, k = {list(mt.k)}")
    print(f"permutation {twist_permutation(S, dec, mt)}")
    return 0


def cmd_group(args) -> int:
    from .prototypes import components
    from .verify import compute_group

    tags = [args.component] if args.component else components(args.D)
    if not tags:
        print(f"E_{args.D}(4) is empty")
        return 1
    ok = True
    for tag in tags:
        r = compute_group(args.D, tag)
        gens = ", ".join(f"{g.surface} {g.direction}: {g.perm}" for g in r.generators)
        print(f"D={args.D} {tag}: {gens}")
        print(f"  lower {r.lower}, upper {r.upper} ({r.upper_source}), predicted {r.predicted}: "
              f"{'pass' if r.verdict else 'FAIL'}")
        for err in r.errors:
            print(f"  {err}")
        ok = ok and r.verdict
    return 0 if ok else 1


def cmd_hlk(args) -> int:
    from .invariants import hlk_invariant, primitive_normalization
    from .surface import a_plus, sq_z

    if args.model == "SQZ":
        S = sq_z(args.d, args.e)
    else:
        S = a_plus(args.d * args.d, args.e)
    T, M = primitive_normalization(S)
    inv = hlk_invariant(T)
    print(f"{S.spec.label()}: HLK {inv}  " + " ".join(f"{k}:{v}" for k, v in inv.points.items()))
    return 0


def cmd_appendix(args) -> int:
    from .verify import appendixA_check

    sec = appendixA_check(args.d)
    print(json.dumps(sec, indent=2))
    return 0 if sec["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="prymperm",
                                 description="Permutations of Prym points on E_D(4) surfaces")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="compute the group for every admissible D in a range")
    p.add_argument("--dmin", type=int, required=True)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")
    p.add_argument("--out")
    p.add_argument("--timing", action="store_true", help="include wall time in JSON")
    p.set_defaults(func=cmd_verify)

    for name, func in (("surface", cmd_surface), ("decompose", cmd_decompose)):
        p = sub.add_parser(name)
        p.add_argument("--model", choices=MODELS)
        p.add_argument("--load", help="read the surface from a JSON file instead")
        p.add_argument("--D", type=int)
        p.add_argument("--e", type=int)
        p.add_argument("--d", type=int, help="square root of D for SQZ, C and D")
        if name == "surface":
            p.add_argument("--emit", help="write the surface as JSON")
        else:
            p.add_argument("--dir", default="1,0", help="direction X,Y")
        p.set_defaults(func=func)

    p = sub.add_parser("group")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--component", choices=["plus", "minus", "whole"])
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("hlk")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--model", choices=["SQZ", "A+"], default="SQZ")
    p.set_defaults(func=cmd_hlk)

    p = sub.add_parser("appendix-a")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_appendix)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PrymError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
