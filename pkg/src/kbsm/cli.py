"""Command-line front end.

Subcommands read exact-rational JSON files, run the requested computation or
verification suite, and emit a JSON report that embeds the fully resolved
configuration.  Reports are deterministic: the same inputs and seed produce
byte-identical output.

Exit codes: 0 success (findings such as 2-torsion witnesses are data, not
failures), 1 verification failure (an identity that must hold exactly did
not), 2 malformed input.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys

from . import __version__, heegaard, sampling, statesum
from .diagram import DiagramError, diagram_from_json, make_multicurve
from .homology import Lattice, a_generator, a_mul
from .ring import GaussRat, I, MINUS_I, MINUS_ONE, ONE
from .skein import (
    CrossingCapExceeded,
    Skein,
    bracket,
    phi,
    psi,
    skein_mul,
    skein_to_json,
    state_identities,
    verify_comm,
)

ZETA_CHOICES = {
    "symbolic": None,
    "1": ONE,
    "-1": MINUS_ONE,
    "i": I,
    "-i": MINUS_I,
}


class InputError(Exception):
    pass


def _load_json(path: str) -> dict:
    try:
        with open(path) as f:
            return json.load(f)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}")


def _load_diagram(path: str):
    obj = _load_json(path)
    try:
        return diagram_from_json(obj)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"{path}: {e}")


def _load_heegaard(path: str) -> heegaard.HeegaardData:
    obj = _load_json(path)
    try:
        return heegaard.HeegaardData(
            tuple(tuple(c) for c in obj["red"]),
            tuple(tuple(c) for c in obj["blue"]),
        )
    except (KeyError, TypeError, ValueError, DiagramError) as e:
        raise InputError(f"{path}: {e}")


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _maybe_eval(skein: Skein, zeta: GaussRat | None) -> Skein:
    if zeta is None:
        return skein
    from .ring import LaurentPoly

    return Skein(
        skein.surface,
        {mc: LaurentPoly.const(c.eval_unit(zeta)) for mc, c in skein.terms.items()},
    )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_bracket(args) -> int:
    d = _load_diagram(args.diagram)
    out = _maybe_eval(bracket(d, args.max_crossings), ZETA_CHOICES[args.zeta])
    report = {
        "config": _config(args, subcommand="bracket"),
        "crossings": d.ncross,
        "skein": skein_to_json(out),
    }
    _emit(report, args.out)
    return 0


def cmd_product(args) -> int:
    a = _load_diagram(args.diagram)
    b = _load_diagram(args.diagram2)
    from .diagram import stack

    combined = stack(a, b)
    out = _maybe_eval(bracket(combined, args.max_crossings), ZETA_CHOICES[args.zeta])
    report = {
        "config": _config(args, subcommand="product"),
        "crossings": combined.ncross,
        "skein": skein_to_json(out),
    }
    _emit(report, args.out)
    return 0


def cmd_verify_comm(args) -> int:
    diagrams = sampling.suite(args.seed, args.trials, args.max_crossings)
    failures = []
    for i, d in enumerate(diagrams):
        check = verify_comm(d, max_crossings=args.max_crossings)
        if not check:
            failures.append({"index": i, "witness": check.witness})
    report = {
        "config": _config(args, subcommand="verify-comm"),
        "backend": statesum.BACKEND,
        "trials": len(diagrams),
        "failures": failures,
        "ok": not failures,
    }
    _emit(report, args.out)
    return 0 if not failures else 1


def cmd_verify_marche(args) -> int:
    diagrams = sampling.suite(args.seed, args.trials, args.max_crossings)
    failures = []
    orientation_checked = 0
    for i, d in enumerate(diagrams):
        ids = state_identities(d)
        if not ids.ok:
            failures.append({"index": i, "kind": "state-identities", "witness": ids.failures[0]})
            continue
        if d.ncomp <= 4:
            orientation_checked += 1
            values = set()
            for dirs in itertools.product((1, -1), repeat=d.ncomp):
                v = psi(d, dirs)
                values.add((v.coeff, v.lift))
            if len(values) != 1:
                failures.append({"index": i, "kind": "psi-orientation"})
    # basis behavior of the multicurve map on a fixed sample
    surface = diagrams[1].surface if len(diagrams) > 1 else diagrams[0].surface
    basis_images = set()
    basis = [
        make_multicurve(surface, {}),
    ]
    if surface.rank:
        basis += [
            make_multicurve(surface, {(1, 0): 1}),
            make_multicurve(surface, {(0, 1): 2}),
            make_multicurve(surface, {(1, 1): 1}),
        ]
    for mc in basis:
        out = phi(Skein.basis(surface, mc))
        if not out.is_diagonal():
            failures.append({"kind": "phi-diagonal", "multicurve": str(mc)})
        basis_images.add(next(iter(out.terms)))
    if len(basis_images) != len(basis):
        failures.append({"kind": "phi-injectivity"})
    report = {
        "config": _config(args, subcommand="verify-marche"),
        "trials": len(diagrams),
        "orientation_checked": orientation_checked,
        "failures": failures,
        "ok": not failures,
    }
    _emit(report, args.out)
    return 0 if not failures else 1


def _bounds(args) -> heegaard.SlideBounds:
    return heegaard.SlideBounds(
        max_multiplicity=args.max_multiplicity,
        max_slope=args.max_slope,
        max_copies=args.max_copies,
        winding_range=args.winding_range,
        max_arcs=args.max_arcs,
        max_crossings=args.max_crossings,
        quotient_max_crossings=args.quotient_max_crossings,
        limit=args.limit,
    )


def cmd_heegaard_audit(args) -> int:
    h = _load_heegaard(args.heegaard)
    bounds = _bounds(args)
    relations = heegaard.generate_relations(h, bounds)
    audit = heegaard.writhe_mod4_audit(h, relations=relations)
    psi_rep = heegaard.psi_on_relations(h, relations=relations)
    witnesses = [
        {
            "start": [[p, q, m] for (p, q), m in e.start.slopes],
            "used": [[color, list(cls), d] for color, cls, d in e.used],
            "writhe": e.writhe,
            "writhe_mod4": e.writhe_mod4,
        }
        for e in audit.entries
        if e.writhe_mod4 != 0
    ]
    report = {
        "config": _config(args, subcommand="heegaard-audit"),
        "h1": list(audit.h1.invariant_factors) + [0] * audit.h1.free_rank,
        "two_torsion": audit.h1.two_torsion,
        "relations": len(relations),
        "writhe_mod4_histogram": {str(k): v for k, v in sorted(audit.histogram.items())},
        "pairing_agrees": audit.pairing_agrees,
        "witnesses": witnesses,
        "psi_matches": psi_rep.all_match,
        "psi_failures": len(psi_rep.failures()),
    }
    _emit(report, args.out)
    # identities that must hold exactly: the pairing formula always, and
    # divisibility plus the twist-map match when there is no 2-torsion
    if not audit.pairing_agrees:
        return 1
    if not audit.h1.two_torsion and (not audit.all_divisible or not psi_rep.all_match):
        return 1
    return 0


def cmd_quotient_dim(args) -> int:
    h = _load_heegaard(args.heegaard)
    bounds = _bounds(args)
    relations = heegaard.generate_relations(h, bounds)
    cmp = heegaard.quotient_comparison(
        h, truncation=args.truncation, bounds=bounds, relations=relations
    )
    pres = {"-i": cmp.at_minus_i, "-1": cmp.at_minus_one}
    selected = {"-i": pres["-i"].dimension, "-1": pres["-1"].dimension}
    if args.zeta != "both":
        selected = {args.zeta: pres[args.zeta].dimension}
    report = {
        "config": _config(args, subcommand="quotient-dim"),
        "truncation": args.truncation,
        "basis_size": len(cmp.at_minus_i.basis),
        "relations": len(relations),
        "dimensions": selected,
        "relations_used": {k: p.relations_used for k, p in pres.items()},
        "relations_dropped": cmp.at_minus_i.relations_dropped,
        "dimensions_equal": cmp.dimensions_equal,
        "phi_rows_match": cmp.phi_rows_match,
        "upper_bound_only": True,
    }
    _emit(report, args.out)
    h1 = heegaard.manifold_h1(h)
    if not h1.two_torsion and not (cmp.dimensions_equal and cmp.phi_rows_match):
        return 1
    return 0


def cmd_a_algebra(args) -> int:
    rng = random.Random(args.seed)
    lat = Lattice.symplectic(1)
    failures = []
    for i in range(args.trials):
        gs = [tuple(rng.randrange(-6, 7) for _ in range(2)) for _ in range(3)]
        x, y, z = (a_generator(g, lat) for g in gs)
        if a_mul(a_mul(x, y, lat), z, lat) != a_mul(x, a_mul(y, z, lat), lat):
            failures.append({"kind": "associativity", "triple": gs})
        sq = a_mul(x, x, lat)
        if sq.terms != {(0, 0): GaussRat(1)}:
            failures.append({"kind": "square", "gamma": gs[0]})
        xy = a_mul(x, y, lat)
        (key,) = xy.terms
        if key != tuple((a + b) % 2 for a, b in zip(gs[0], gs[1])):
            failures.append({"kind": "grading", "pair": gs[:2]})
    report = {
        "config": _config(args, subcommand="a-algebra"),
        "trials": args.trials,
        "failures": failures,
        "ok": not failures,
    }
    _emit(report, args.out)
    return 0 if not failures else 1


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------


def _config(args, subcommand: str) -> dict:
    # `out` names where the report lands; it is not part of what was computed
    skip = {"func", "out"}
    out = {"subcommand": subcommand, "version": __version__}
    for key, value in sorted(vars(args).items()):
        if key in skip or callable(value):
            continue
        out[key] = value
    return out


def _add_bounds_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-multiplicity", type=int, default=2)
    p.add_argument("--max-slope", type=int, default=2)
    p.add_argument("--max-copies", type=int, default=2)
    p.add_argument("--winding-range", type=int, default=1)
    p.add_argument("--max-arcs", type=int, default=4)
    p.add_argument("--max-crossings", type=int, default=16)
    p.add_argument("--quotient-max-crossings", type=int, default=12)
    p.add_argument("--limit", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kbsm",
        description="Exact Kauffman bracket skein computations on low-genus "
        "surfaces and genus-1 Heegaard manifolds.",
    )
    parser.add_argument("--version", action="version", version=f"kbsm {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("bracket", help="state sum of a diagram file")
    p.add_argument("--diagram", required=True)
    p.add_argument("--zeta", choices=sorted(ZETA_CHOICES), default="symbolic")
    p.add_argument("--max-crossings", type=int, default=20)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("product", help="stack two diagrams and take the bracket")
    p.add_argument("diagram")
    p.add_argument("diagram2")
    p.add_argument("--zeta", choices=sorted(ZETA_CHOICES), default="symbolic")
    p.add_argument("--max-crossings", type=int, default=20)
    p.add_argument("--out")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("verify-comm", help="the commuting square on a random suite")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-crossings", type=int, default=6)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify_comm)

    p = sub.add_parser(
        "verify-marche", help="basis map and diagram-level twist map suites"
    )
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-crossings", type=int, default=6)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify_marche)

    p = sub.add_parser(
        "heegaard-audit",
        help="h1, writhe mod 4 and twist-map behavior of generated slides",
    )
    p.add_argument("--heegaard", required=True)
    _add_bounds_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_heegaard_audit)

    p = sub.add_parser(
        "quotient-dim", help="truncated quotient dimensions at -i and -1"
    )
    p.add_argument("--heegaard", required=True)
    p.add_argument("--truncation", type=int, default=4)
    p.add_argument("--zeta", choices=["-i", "-1", "both"], default="both")
    _add_bounds_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_quotient_dim)

    p = sub.add_parser("a-algebra", help="twist algebra identities on random data")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_a_algebra)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (CrossingCapExceeded, DiagramError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
