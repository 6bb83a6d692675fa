"""Command-line front end.

Subcommands:

* ``graph build <family> <params...>`` -- construct a family graph and
  emit it as graph6 or a DIMACS edge list, with a JSON sidecar holding
  the family, parameters and field modulus.
* ``verify <target>`` -- run one named check suite (or ``all``) and
  print a machine-readable JSON run report; the exit code is 0 exactly
  when every check passed.
* ``closure --generators <file>`` -- read a permutation group as a JSON
  list of image lists, print rank, subdegrees and order of the group
  and of its 2-closure, plus the closure's generators.
* ``tables`` -- reproduce the subdegree and exception tables as JSON or
  aligned text.

Exit codes: 0 all checks passed, 1 some check failed, 2 invalid
parameters, 3 size cap exceeded, 4 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__, distinguisher, formulas, graphs, iso, permgrp
from .errors import BudgetExceeded, CapExceeded
from .gf import FIELD_REGISTRY, field_make

FAMILIES = {
    "hamming2": (graphs.hamming2, ["s"]),
    "bilinear": (graphs.bilinear_forms, ["q", "m"]),
    "polar": (graphs.affine_polar, ["eps", "m", "q"]),
    "altforms5": (graphs.alternating_forms5, ["q"]),
    "vsz": (graphs.suzuki_tits, ["q"]),
    "paley": (graphs.paley, ["q"]),
    "peisert": (graphs.peisert, ["p", "t"]),
    "vls": (graphs.van_lint_schrijver, ["p", "e", "t"]),
}

VERIFY_TARGETS = [
    "imprimitive-closure", "product-closure", "rank-formula", "subdegrees",
    "lemma-a", "lemma-b", "lemma-c", "intersections", "exceptions",
    "iso-h22-vo4p", "aut-orders", "all",
]


def _parse_family_params(family, raw):
    if family not in FAMILIES:
        raise ValueError("unknown family %r; choose from %s"
                         % (family, ", ".join(sorted(FAMILIES))))
    builder, names = FAMILIES[family]
    if len(raw) != len(names):
        raise ValueError("family %s takes parameters: %s"
                         % (family, " ".join(names)))
    vals = []
    for name, token in zip(names, raw):
        if name == "eps":
            if token not in ("+", "-"):
                raise ValueError("type must be '+' or '-'")
            vals.append(token)
        else:
            vals.append(int(token))
    return builder, vals


def _report(command, parameters, checks, results=None, seed=0):
    report = {
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "tool_version": __version__,
        "checks": checks,
        "passed": sum(1 for c in checks if c["pass"]),
        "failed": sum(1 for c in checks if not c["pass"]),
        "results": results or {},
        "field_moduli": {"GF(%d^%d)" % key: list(mod)
                         for key, mod in sorted(FIELD_REGISTRY.items())},
    }
    return report


def _emit(report, started):
    report["timing"] = {"seconds": round(time.monotonic() - started, 3)}
    json.dump(report, sys.stdout, indent=1, sort_keys=True)
    sys.stdout.write("\n")


def _check(name, ok, **details):
    line = "%s %s" % ("PASS" if ok else "FAIL", name)
    if details:
        line += "  " + " ".join("%s=%s" % kv for kv in sorted(details.items()))
    print(line, file=sys.stderr)
    return {"name": name, "pass": bool(ok), **details}


# -- verify targets -----------------------------------------------------------

SUBDEGREE_GRID = (
    [("hamming2", (s,)) for s in range(2, 65)]
    + [("bilinear", (q, m)) for q in (2, 3, 4) for m in (2, 3)]
    + [("polar", (eps, 2, q)) for eps in "+-" for q in (2, 3, 4, 8)]
    + [("altforms5", (2,)), ("vsz", (8,))]
    + [("paley", (q,)) for q in (5, 9, 13, 17, 25)]
    + [("peisert", (3, 1)), ("peisert", (7, 1))]
    + [("vls", (2, 3, 2)), ("vls", (2, 5, 1))]
)


def verify_subdegrees(cap=None):
    checks = []
    for family, params in SUBDEGREE_GRID:
        name = "subdegrees:%s%r" % (family, params)
        try:
            g = FAMILIES[family][0](*params, cap=cap)
            expected = formulas.family_subdegrees(family, *params)
            got = (g.n, *g.subdegree_pair())
            checks.append(_check(name, got == expected,
                                 expected=list(expected), got=list(got)))
        except Exception as exc:  # regularity failures count as failures
            checks.append(_check(name, False, error=str(exc)))
    return checks


def verify_lemma_a():
    got = {(t.n, t.m1, t.m2) for t in distinguisher.scan_class_a()}
    expected = {(9, 4, 4), (81, 16, 64), (729, 104, 624), (16, 5, 10),
                (64, 21, 42), (256, 51, 204), (1024, 93, 930),
                (4096, 315, 3780), (65536, 3855, 61680), (25, 8, 16)}
    return [_check("lemma-a:triples", got == expected, count=len(got))]


def verify_lemma_b():
    got = {(t.n, t.m1, t.m2) for t in distinguisher.scan_class_b()}
    expected = {(49, 24, 24), (289, 96, 192), (529, 264, 264),
                (729, 104, 624), (2209, 1104, 1104), (81, 16, 64),
                (2401, 480, 1920)}
    return [_check("lemma-b:triples", got == expected, count=len(got))]


def verify_lemma_c():
    got = {(t.n, t.m1, t.m2) for t in distinguisher.scan_class_c()}
    expected = {(81, 40, 40), (4096, 315, 3780), (7921, 2640, 5280)}
    return [_check("lemma-c:triples", got == expected, count=len(got))]


def verify_exceptions():
    table = distinguisher.emit_exception_table()
    expected_a = ((16, 5), (64, 21), (256, 51), (1024, 93), (4096, 315),
                  (65536, 3855), (9, 4), (81, 16), (729, 104), (25, 8))
    expected_b = ((81, 16), (729, 104), (49, 24), (2401, 480), (289, 96),
                  (529, 264), (2209, 1104))
    expected_c = ((4096, 315), (81, 40), (7921, 2640))
    return [
        _check("exceptions:A", table.class_a == expected_a, rows=len(table.class_a)),
        _check("exceptions:B", table.class_b == expected_b, rows=len(table.class_b)),
        _check("exceptions:C", table.class_c == expected_c, rows=len(table.class_c)),
        _check("exceptions:idempotent", distinguisher.emit_exception_table() == table),
    ]


def verify_intersections(bounds=(16, 6)):
    q_max, m_max = bounds
    cos = distinguisher.pairwise_intersections(q_max, m_max)
    pairs = distinguisher.coincidence_family_pairs(cos)
    checks = [_check("intersections:family-pairs",
                     pairs == {("H", "VO"), ("VO", "VSz")},
                     pairs=sorted(map(list, pairs)))]
    ok_hvo = all(dict(c.members).get("H") is None
                 or (dict(c.members)["H"][1] == 2
                     and dict(c.members)["VO"] == ("+", 4, dict(c.members)["H"][0]))
                 for c in cos)
    checks.append(_check("intersections:H-vs-VO-plus", ok_hvo))
    vsz_hits = [dict(c.members)["VSz"] for c in cos if "VSz" in dict(c.members)]
    expected_vsz = [(q,) for q in (8, 32, 128) if q <= q_max]
    checks.append(_check("intersections:VSz-vs-VO-minus",
                         sorted(vsz_hits) == expected_vsz,
                         got=sorted(v[0] for v in vsz_hits)))
    return checks


def verify_rank_formula(cap=None):
    cases = [
        ("Sym(3)", permgrp.symmetric_group(3), 2),
        ("C5", permgrp.cyclic_group(5), 2),
        ("Sym(2)", permgrp.symmetric_group(2), 3),
        ("D4", permgrp.dihedral_group(4), 2),
    ]
    checks = []
    for name, G0, m in cases:
        got, expected = permgrp.wreath_rank_check(G0, m, cap=cap)
        checks.append(_check("rank-formula:%s^%d" % (name, m),
                             got == expected, computed=got, closed_form=expected))
    return checks


def verify_imprimitive_closure(cap=None):
    checks = []
    for delta, x in [(2, 2), (2, 3), (3, 2)]:
        G = permgrp.imprimitive_wreath(delta, x)
        closure = permgrp.two_closure(G, cap=cap)
        expected = formulas.closure_order("i", delta, x)
        checks.append(_check("imprimitive-closure:%dx%d" % (delta, x),
                             closure.order() == expected == G.order(),
                             order=closure.order(), expected=expected))
    return checks


def verify_product_closure(cap=None):
    checks = []
    for delta in [2, 3, 4]:
        G = permgrp.product_wreath(delta, 2)
        closure = permgrp.two_closure(G, cap=cap)
        expected = formulas.closure_order("ii", delta)
        checks.append(_check("product-closure:%d^2" % delta,
                             closure.order() == expected == G.order(),
                             order=closure.order(), expected=expected))
    return checks


def verify_iso_h22_vo4p(cap=None, deadline=None):
    checks = []
    for q in [2, 3]:
        a = graphs.bilinear_forms(q, 2, cap=cap)
        b = graphs.affine_polar("+", 2, q, cap=cap)
        mapping = iso.is_isomorphic(a, b, cap=cap, deadline=deadline)
        ok = mapping is not None and mapping is not iso.INDETERMINATE
        if ok:
            da, db = a.dense(), b.dense()
            ok = bool((db[np.ix_(mapping, mapping)] == da).all())
        checks.append(_check("iso-h22-vo4p:q=%d" % q, ok))
    return checks


AUT_ORDER_CASES = [
    ("hamming2(3)", lambda cap: graphs.hamming2(3, cap=cap), 72),
    ("hamming2(4)", lambda cap: graphs.hamming2(4, cap=cap), 1152),
    ("bilinear(2,2)", lambda cap: graphs.bilinear_forms(2, 2, cap=cap), 1152),
    ("polar(-,2,2)", lambda cap: graphs.affine_polar("-", 2, 2, cap=cap), 1920),
    ("paley(13)", lambda cap: graphs.paley(13, cap=cap), 78),
    ("paley(9)", lambda cap: graphs.paley(9, cap=cap), 72),
]


def verify_aut_orders(cap=None, deadline=None):
    checks = []
    for name, build, expected in AUT_ORDER_CASES:
        res = iso.automorphisms(build(cap), cap=cap, deadline=deadline)
        checks.append(_check("aut-orders:%s" % name, res.order == expected,
                             order=res.order, expected=expected))
    return checks


def run_verify(target, cap=None, bounds=(16, 6)):
    runners = {
        "imprimitive-closure": lambda: verify_imprimitive_closure(cap),
        "product-closure": lambda: verify_product_closure(cap),
        "rank-formula": lambda: verify_rank_formula(cap),
        "subdegrees": lambda: verify_subdegrees(cap),
        "lemma-a": verify_lemma_a,
        "lemma-b": verify_lemma_b,
        "lemma-c": verify_lemma_c,
        "intersections": lambda: verify_intersections(bounds),
        "exceptions": verify_exceptions,
        "iso-h22-vo4p": lambda: verify_iso_h22_vo4p(cap),
        "aut-orders": lambda: verify_aut_orders(cap),
    }
    if target == "all":
        checks = []
        for name in VERIFY_TARGETS[:-1]:
            checks.extend(runners[name]())
        return checks
    if target not in runners:
        raise ValueError("unknown verify target %r" % target)
    return runners[target]()


# -- subcommands ---------------------------------------------------------------

def cmd_graph(args):
    started = time.monotonic()
    builder, params = _parse_family_params(args.family, args.params)
    cap = args.cap
    g = builder(*params, cap=cap)
    text = graphs.to_graph6(g) if args.out == "graph6" else graphs.to_dimacs(g)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
        with open(args.output + ".json", "w") as fh:
            json.dump(g.label, fh, indent=1, sort_keys=True)
            fh.write("\n")
        report = _report("graph build", {"family": args.family,
                                         "params": params,
                                         "out": args.out,
                                         "output": args.output},
                         [_check("graph-build", True, n=g.n, degree=g.degree())],
                         results={"label": g.label}, seed=args.seed)
        _emit(report, started)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return 0


def cmd_verify(args):
    started = time.monotonic()
    checks = run_verify(args.target, cap=args.cap, bounds=tuple(args.bounds))
    report = _report("verify", {"target": args.target,
                                "bounds": list(args.bounds)},
                     checks, seed=args.seed)
    _emit(report, started)
    return 0 if all(c["pass"] for c in checks) else 1


def cmd_closure(args):
    started = time.monotonic()
    with open(args.generators) as fh:
        G = permgrp.GeneratedGroup.from_json(fh.read())
    if not permgrp.is_transitive(G):
        raise ValueError("input group is intransitive")
    dec = permgrp.orbitals(G, cap=args.cap)
    deadline = time.monotonic() + args.budget if args.budget else None
    closure = permgrp.two_closure(G, cap=args.cap, deadline=deadline)
    results = {
        "degree": G.degree,
        "rank": dec.rank,
        "subdegrees": list(dec.subdegrees),
        "group_order": G.order(),
        "closure_order": closure.order(),
        "closure_generators": [g.tolist() for g in closure.generators],
    }
    checks = [_check("closure:contains-input", True),
              _check("closure:same-orbitals", True)]
    report = _report("closure", {"generators": args.generators}, checks,
                     results=results, seed=args.seed)
    _emit(report, started)
    return 0


def cmd_tables(args):
    if args.format == "json":
        data = formulas.tables_json()
        data["exceptions"] = distinguisher.emit_exception_table().as_json()
        data.update(distinguisher.embedded_tables_json())
        json.dump(data, sys.stdout, indent=1, sort_keys=True)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(formulas.tables_text())
        sys.stdout.write("\n")
        sys.stdout.write(distinguisher.exception_table_text())
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rank3kit",
        description="rank-3 graph families, subdegree tables and 2-closures")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--seed", type=int, default=0,
                       help="seed recorded in the report (all searches are "
                            "deterministic)")
        p.add_argument("--cap", type=int, default=None,
                       help="override the size caps (requires --ack-cap)")
        p.add_argument("--ack-cap", action="store_true",
                       help="acknowledge that a raised cap may be slow")

    pg = sub.add_parser("graph", help="graph construction")
    pg_sub = pg.add_subparsers(dest="graph_command", required=True)
    pb = pg_sub.add_parser("build", help="build a family graph")
    pb.add_argument("family", help="one of: %s" % ", ".join(sorted(FAMILIES)))
    pb.add_argument("params", nargs="*", help="family parameters")
    pb.add_argument("--out", choices=["graph6", "dimacs"], default="graph6")
    pb.add_argument("--output", help="write to this path (plus .json sidecar)")
    add_common(pb)
    pb.set_defaults(func=cmd_graph)

    pv = sub.add_parser("verify", help="run a named check suite")
    pv.add_argument("target", choices=VERIFY_TARGETS)
    pv.add_argument("--bounds", type=int, nargs=2, default=[16, 6],
                    metavar=("QMAX", "MMAX"),
                    help="grid bounds for the intersection scan")
    add_common(pv)
    pv.set_defaults(func=cmd_verify)

    pc = sub.add_parser("closure", help="2-closure of a permutation group")
    pc.add_argument("--generators", required=True,
                    help="JSON file: {degree, generators: [image lists]}")
    pc.add_argument("--budget", type=float, default=None,
                    help="time budget in seconds for the search")
    add_common(pc)
    pc.set_defaults(func=cmd_closure)

    pt = sub.add_parser("tables", help="reproduce the subdegree tables")
    pt.add_argument("--format", choices=["text", "json"], default="text")
    pt.set_defaults(func=cmd_tables)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "cap", None) is not None and not args.ack_cap:
        print("error: --cap overrides safety limits; add --ack-cap", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except CapExceeded as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except BudgetExceeded as exc:
        print("indeterminate: %s" % exc, file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
