"""Command line entry point: ``ringlab <command> ...``.

Exit codes: 0 when everything checked out, 2 when a counterexample was
found, 3 for syntax or usage errors.  Cap-skips never change the code.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cohn, suite
from .dsl import build, parse, parse_elements, pretty
from .errors import NotPrime, RingError, RingSyntaxError, TooLarge
from .extensions import analyze, is_SL, restrict
from .ideals import ideal_generated, jacobson
from .lattice import (
    LATTICE_CAP,
    classify_minimal,
    intermediate_rings,
    msl_subextension,
    seminormal_infra_integral,
    seminormalization,
    sl_bottom,
    t_closure,
    u_closure,
)
from .rings import Subring, closure

OK, COUNTEREXAMPLE, USAGE = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _emit(data, path=None):
    text = json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _ast_dict(node):
    out = {"node": type(node).__name__}
    for k, v in vars(node).items():
        if isinstance(v, tuple) and v and not isinstance(v[0], (int, str)):
            out[k] = [_ast_dict(x) for x in v]
        elif hasattr(v, "__dataclass_fields__"):
            out[k] = _ast_dict(v)
        else:
            out[k] = list(v) if isinstance(v, tuple) else v
    return out


def _subring(S, gens_text):
    return Subring(S, closure(S, parse_elements(S, gens_text or "")), validate=False)


# ---------------------------------------------------------------------------
# commands


def cmd_parse(args):
    node = parse(args.expr)
    R = build(node, cap=args.cap)
    _emit({"pretty": pretty(node), "ast": _ast_dict(node), "size": R.size, "name": R.name})
    return OK


def cmd_analyze(args):
    S = build(args.ambient, cap=args.cap)
    R = _subring(S, args.sub_gens)
    rep = analyze(R, d_max=args.d_max)
    data = rep.to_dict()
    data["subring"] = [S.format(x) for x in R.members]
    _emit(data, args.json)
    if args.json:
        print(f"SL={rep.SL} local={rep.local} seminormal={rep.seminormal} infra_integral={rep.infra_integral}")
    return OK


def cmd_lattice(args):
    S = build(args.ambient, cap=args.cap)
    R = _subring(S, args.sub_gens)
    lat = intermediate_rings(R, cap=args.lattice_cap)
    data = lat.to_dict()
    for m, V in zip(data["members"], lat.members):
        ext = restrict(R, V)
        m["SL_over_base"] = is_SL(ext)
        m["seminormal_infra_integral"] = seminormal_infra_integral(ext)
    types = []
    for i, j in lat.covers:
        types.append({"cover": [i, j], "type": classify_minimal(lat.members[i], lat.members[j])})
    data["covers"] = types

    def ident(T):
        return lat.index_of(T.members)

    data["closures"] = {
        "seminormalization": ident(seminormalization(R)),
        "t_closure": ident(t_closure(R)),
        "u_closure": ident(u_closure(R)),
        "sl_bottom": ident(sl_bottom(R)),
        "greatest_sl": ident(msl_subextension(R, lat).top),
    }
    _emit(data, args.json)
    return OK


def cmd_cohn(args):
    R = build(args.ring, cap=args.cap)
    d = args.degree
    if args.ideal.strip() == "J":
        I = jacobson(R)
    else:
        I = ideal_generated(R, parse_elements(R, args.ideal))
    SR = cohn.make_cohn(R) if args.cohn_ring else cohn.make_shifted(R, I)
    checks = [
        lambda: cohn.verify_unit_rigidity(SR, d),
        lambda: cohn.verify_conductor(SR, d),
        lambda: cohn.verify_t_closed(SR, d),
        lambda: cohn.check_ring_laws(SR, d),
    ]
    if args.cohn_ring:
        checks.append(lambda: cohn.verify_zerodivisors(SR))
    elif I == jacobson(R):
        checks.append(lambda: cohn.verify_jacobson_membership(SR, d))
    results = []
    failed = False
    for run in checks:
        try:
            r = run()
        except TooLarge as exc:
            results.append({"name": "skipped", "verdict": "cap-skipped", "reason": str(exc)})
            continue
        failed |= not r.ok
        results.append(
            {
                "name": r.name,
                "verdict": "confirmed" if r.ok else "counterexample",
                "checked": r.checked,
                "details": suite._jsonable(r.details),
                "counterexamples": suite._jsonable(r.counterexamples[:5]),
            }
        )
    _emit({"ring": R.name, "kind": SR.kind, "slots": [s.name for s in SR.slots], "degree": d, "checks": results}, args.json)
    return COUNTEREXAMPLE if failed else OK


def cmd_verify(args):
    findings = suite.run_suite(args.suite, max_size=args.max_size, seed=args.seed, lattice_cap=args.lattice_cap)
    rep = suite.report(findings, args.seed, suite.caps(args.max_size, args.lattice_cap))
    text = suite.dumps(rep)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    bad = suite.counterexamples(findings)
    skipped = [f for f in findings if f.verdict == "cap-skipped"]
    print(
        f"{len(findings)} findings: {len(findings) - len(bad) - len(skipped)} confirmed, "
        f"{len(bad)} counterexamples, {len(skipped)} cap-skipped",
        file=sys.stderr,
    )
    for f in bad:
        print(f"counterexample: {f.theorem} {json.dumps(f.instance, sort_keys=True)}", file=sys.stderr)
    return COUNTEREXAMPLE if bad else OK


def cmd_reproduce(args):
    if args.example == "7.5":
        got = suite.example_75()
        ok = got == suite.EXPECTED_75
        print("U(Z/2[t]/(t^4+t)) = {" + ", ".join(got["units_S"]) + "}")
        print("U(Z/2[y]/(y^3+1)) = {" + ", ".join(got["units_R"]) + "}")
        print(f"injective SL morphisms: {len(got['sl_embeddings'])}")
        for img in got["sl_embeddings"]:
            print(f"  y -> {img}")
        print(f"y -> t rejected as not well defined: {got['y_to_t_rejected']}")
        return OK if ok else COUNTEREXAMPLE
    if args.example == "7.4":
        primes = [args.p] if args.p is not None else [3, 5, 7, 11, 13]
        ok = True
        for p in primes:
            try:
                r = suite.example_74(p)
            except NotPrime as exc:
                print(f"error: {exc}", file=sys.stderr)
                return USAGE
            if r["constructed"]:
                print(
                    f"p={p}: |U(R)|={r['units']} injective={r['injective']} SL={r['SL']} "
                    f"y -> {r['image_of_generator']}"
                )
                ok &= r["SL"] and r["injective"]
            else:
                print(f"p={p}: {r['reason']}; 1 + X + ... + X^{p - 1} = " + " * ".join(f"({g})" for g in r["factors"]))
        return OK if ok else COUNTEREXAMPLE
    cases = [("Z/3", 1, 2), ("Z/4", 1, 3), ("Z/4", 2, 2)]
    ok = True
    for expr, n, m in cases:
        r = suite.example_76(expr, n, m)
        print(f"F2^{n} x {expr} -> F2^{m} x {expr}: SL={r['SL']} |U|={r['units'][0]},{r['units'][1]}")
        ok &= r["SL"]
    return OK if ok else COUNTEREXAMPLE


# ---------------------------------------------------------------------------


def build_parser():
    ap = _Parser(prog="ringlab", description="Exact computations with finite commutative rings.")
    ap.add_argument("--cap", type=int, default=2**16, help="exhaustive size cap")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", help="parse and pretty-print a ring expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("analyze", help="every extension predicate for R <= S")
    p.add_argument("--ambient", required=True)
    p.add_argument("--sub-gens", default="", help="comma separated generators of R")
    p.add_argument("--d-max", type=int, default=4)
    p.add_argument("--json")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("lattice", help="the intermediate rings of R <= S")
    p.add_argument("--ambient", required=True)
    p.add_argument("--sub-gens", default="")
    p.add_argument("--lattice-cap", type=int, default=LATTICE_CAP)
    p.add_argument("--json")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("cohn", help="bounded checks on R//I or on Cohn's ring")
    p.add_argument("--ring", required=True)
    p.add_argument("--ideal", default="J", help="generators, or J for the Jacobson radical")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--cohn-ring", action="store_true", help="use one slot per maximal ideal")
    p.add_argument("--json")
    p.set_defaults(func=cmd_cohn)

    p = sub.add_parser("verify", help="run a theorem suite over the corpus")
    p.add_argument("--suite", default="all", choices=suite.SUITES + ("all",))
    p.add_argument("--max-size", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lattice-cap", type=int, default=LATTICE_CAP)
    p.add_argument("--json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", help="rerun a worked example")
    p.add_argument("--example", required=True, choices=("7.4", "7.5", "7.6"))
    p.add_argument("--p", type=int)
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RingSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return USAGE
    except RingError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
