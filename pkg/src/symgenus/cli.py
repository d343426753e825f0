"""Command-line front end.

Subcommands: reduce, genus, sphere, orbit, equiv, census, enum-exc,
selftest.  Every subcommand takes --manifold (required; no implicit
model) and --json.  Exit codes: 0 success, 1 domain error (message on
stderr), 2 usage error.  JSON output serializes coefficient-bearing
values as formatted class strings and other numbers as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cones import exceptional_k0_classes
from .genus import CERT_SPHERE, minimal_genus
from .lattice import (
    KIND_RATIONAL,
    KIND_RULED,
    Model,
    format_class,
    model_from_spec,
    parse_class,
)
from .moves import word_to_json
from .oracle import verify_orbit_reps, verify_reduction
from .orbits import canonical_rep, invariant_triple, orbit_census, same_orbit
from .reduction import reduce_class
from .spheres import (
    ETA_ZERO,
    MINIMAL_LIST,
    MULTIPLE_OF_ETA_ZERO,
    spherical_verdict,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symgenus",
        description="Exact symplectic genus, minimal genus and sphere-class "
                    "orbits on rational and ruled 4-manifold lattices.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--manifold", required=True,
                        help="rational:<n>, ruled:<g>:<n> or s2xs2")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--tmax", type=int, default=20,
                        help="leading-coefficient bound for the rational "
                             "K0-exceptional enumeration (default 20)")
    common.add_argument("--bound", type=int, default=4,
                        help="coefficient box for the exhaustive oracle "
                             "checks (default 4)")
    common.add_argument("--depth", type=int, default=8,
                        help="minimum BFS depth for orbit search (default 8)")

    p = sub.add_parser("reduce", parents=[common],
                       help="reduce a class to its normal form with a word certificate")
    p.add_argument("cls", metavar="CLASS")

    p = sub.add_parser("genus", parents=[common],
                       help="symplectic genus and minimal-genus certificate")
    p.add_argument("cls", metavar="CLASS")

    p = sub.add_parser("sphere", parents=[common],
                       help="decide sphere representability")
    p.add_argument("cls", metavar="CLASS")

    p = sub.add_parser("orbit", parents=[common],
                       help="canonical orbit representative of a sphere class")
    p.add_argument("cls", metavar="CLASS")

    p = sub.add_parser("equiv", parents=[common],
                       help="decide whether two sphere classes are in one orbit")
    p.add_argument("cls1", metavar="CLASS1")
    p.add_argument("cls2", metavar="CLASS2")

    p = sub.add_parser("census", parents=[common],
                       help="orbit count for a given square")
    p.add_argument("square", type=int, metavar="SQUARE")

    sub.add_parser("enum-exc", parents=[common],
                   help="enumerate K0-exceptional classes")

    sub.add_parser("selftest", parents=[common],
                   help="run the brute-force verification suite")
    return parser


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _cmd_reduce(args, model: Model) -> int:
    e = parse_class(args.cls, model)
    res = reduce_class(e)
    kind = res.kind if res.exceptional is None else f"{res.kind} ({res.exceptional})"
    text = "\n".join([
        f"input: {format_class(e)}",
        f"normal form: {format_class(res.normal_form)}",
        f"kind: {kind}",
        f"word: {res.word}",
    ])
    _emit(args, res.to_json(), text)
    return 0


def _cmd_genus(args, model: Model) -> int:
    e = parse_class(args.cls, model)
    report = minimal_genus(e)
    mg = "unknown" if report.minimal_genus is None else str(report.minimal_genus)
    text = f"eta={report.eta} minimal_genus={mg} certificate={report.certificate}"
    _emit(args, report.to_json(), text)
    return 0


def _cmd_sphere(args, model: Model) -> int:
    e = parse_class(args.cls, model)
    v = spherical_verdict(e)
    if v.spherical:
        if v.reason == MULTIPLE_OF_ETA_ZERO:
            detail = f"multiple of eta-zero class {format_class(v.base)}"
        elif v.reason == ETA_ZERO:
            detail = "eta=0"
        else:
            detail = "minimal-model list"
        text = f"spherical: yes ({detail})"
    else:
        detail = f"eta={v.eta}" if v.eta is not None else "not in the minimal-model list"
        text = f"spherical: no ({detail})"
    _emit(args, v.to_json(), text)
    return 0


def _cmd_orbit(args, model: Model) -> int:
    e = parse_class(args.cls, model)
    rep = canonical_rep(e)
    text = (f"representative: {format_class(rep.rep)} "
            f"(square={rep.square} divisibility={rep.divisibility} type={rep.type})")
    payload = rep.to_json()
    payload["orbit_count_context"] = orbit_census(model, rep.square).to_json()
    _emit(args, payload, text)
    return 0


def _cmd_equiv(args, model: Model) -> int:
    e1 = parse_class(args.cls1, model)
    e2 = parse_class(args.cls2, model)
    t1, t2 = invariant_triple(e1), invariant_triple(e2)
    equal = same_orbit(e1, e2)
    if equal:
        text = (f"same orbit (square={t1[0]} divisibility={t1[1]} type={t1[2]})")
    else:
        for name, a, b in (("square", t1[0], t2[0]),
                           ("divisibility", t1[1], t2[1]),
                           ("type", t1[2], t2[2])):
            if a != b:
                text = f"different orbits ({name}: {a} vs {b})"
                break
    payload = {
        "same_orbit": equal,
        "class1": {"class": format_class(e1), "square": str(t1[0]),
                   "divisibility": str(t1[1]), "type": t1[2]},
        "class2": {"class": format_class(e2), "square": str(t2[0]),
                   "divisibility": str(t2[1]), "type": t2[2]},
    }
    _emit(args, payload, text)
    return 0


def _cmd_census(args, model: Model) -> int:
    census = orbit_census(model, args.square)
    reps = ", ".join(format_class(r) for r in census.representatives)
    if census.count is None:
        text = f"infinitely many orbits: {census.family} (e.g. {reps})"
    elif census.count == 0:
        text = "0 orbits" + (f" ({census.note})" if census.note else "")
    else:
        text = f"{census.count} orbit{'s' if census.count != 1 else ''}: {reps}"
    _emit(args, census.to_json(), text)
    return 0


def _cmd_enum_exc(args, model: Model) -> int:
    t_max = None if model.kind == KIND_RULED else args.tmax
    classes = exceptional_k0_classes(model, t_max)
    if args.json:
        print(json.dumps({
            "model": model.spec(),
            "t_max": str(args.tmax) if model.kind == KIND_RATIONAL else None,
            "classes": [format_class(f) for f in classes],
        }, indent=2))
    else:
        for f in classes:
            print(format_class(f))
    return 0


def _cmd_selftest(args, model: Model) -> int:
    reports = [verify_reduction(model, args.bound, min_depth=args.depth),
               verify_orbit_reps(model, args.bound, min_depth=args.depth)]
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2))
    else:
        for r in reports:
            status = "ok" if r.passed else "FAILED"
            print(f"{r.description} on {model}: {r.checked} classes checked, "
                  f"{len(r.failures)} failures [{status}]")
            for f in r.failures:
                print(f"  {f}")
    return 0 if all(r.passed for r in reports) else 1


_COMMANDS = {
    "reduce": _cmd_reduce,
    "genus": _cmd_genus,
    "sphere": _cmd_sphere,
    "orbit": _cmd_orbit,
    "equiv": _cmd_equiv,
    "census": _cmd_census,
    "enum-exc": _cmd_enum_exc,
    "selftest": _cmd_selftest,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        model = model_from_spec(args.manifold)
        return _COMMANDS[args.command](args, model)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
