"""Corpus generation, the theorem suites and their JSON reports.

A suite walks a deterministic corpus of small rings and checks every claim
it knows about on every instance.  Each claim is reported once per corpus
ring (or per parameter set) as a :class:`Finding`; counterexamples carry the
offending pair so :func:`replay` can re-derive the verdict from scratch.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import asdict, dataclass, field
from functools import cached_property

import numpy as np

from . import cohn, poly
from .dsl import build, parse_element, pretty, parse
from .errors import ConductorNotMaximal, Finding as FindingError, NotPrimitive, NotWellDefined, ReducibleImage
from .extensions import (
    PAIR_CAP,
    closedness_predicates,
    conductor,
    is_local,
    is_quadratic,
    is_SL,
    make_morphism,
    msupp,
    residual_analysis,
    restrict,
    same_idempotents,
    sl_defect,
)
from .ideals import (
    all_ideals,
    idempotents,
    is_local as ring_is_local,
    is_reduced,
    is_semiprime,
    j_regular_witness,
    jacobson,
    local_factors,
    maximal_ideals,
    nilradical,
    quotient,
)
from .lattice import (
    LATTICE_CAP,
    classify_minimal,
    conductor_quotient_is_boolean,
    fibers_over_support,
    intermediate_rings,
    is_boolean_lattice,
    msl_subextension,
    ring_product,
    seminormal_infra_integral,
    seminormalization,
    sl_bottom,
    t_closure,
    u_closure,
    unit_generated_check,
)
from .morphism import RingMorphism
from .rings import Subring, _arr, closure, make_idealization, make_zmod, prime_subring, units, zerodivisors

TOOL_VERSION = "0.1.0"

SUITES = ("stability", "sl-characterization", "lattice-closures", "cohn", "poly", "examples")

CATALOG = (
    "Z/2",
    "Z/2 * Z/2",
    "Z/2 * Z/2 * Z/2",
    "Z/2 * Z/2 * Z/2 * Z/2",
    "Z/3 * Z/3",
    "GF(4)",
    "GF(4) * Z/2",
    "Z/4",
    "Z/8",
    "Z/9",
    "Z/6",
    "Z/4 * Z/2",
    "Z/2[x]/(x^2)",
    "Z/4[x]/(x^2 + 2)",
    "Z/2[x]/(x^4 + x)",
    "Z/2[x]/(x^3 + 1)",
    "Z/4 (+) ideal(2)",
)

ATOMS = ("Z/2", "Z/2", "Z/2", "Z/3", "Z/4", "GF(4)", "Z/2[x]/(x^2)", "Z/5")


# ---------------------------------------------------------------------------
# corpus


@dataclass
class CorpusEntry:
    expr: str
    ring: object = field(default=None, repr=False)
    lattice: object = field(default=None, repr=False)
    skipped: str | None = None

    @property
    def subrings(self):
        return [] if self.lattice is None else list(self.lattice.members)

    def pairs(self):
        if self.lattice is None:
            return []
        leq = self.lattice.leq
        return [Pair(self, self.ring, self.lattice.members[i], self.lattice.members[j]) for i, j in zip(*np.nonzero(leq))]


def random_products(max_size, seed, count=12):
    """Seeded products of 2 to 5 small atoms, each of size at most ``max_size``."""
    rng = random.Random(seed)
    sizes = {a: build(a).size for a in set(ATOMS)}
    seen = {pretty(parse(e)) for e in CATALOG}
    out = []
    for _ in range(200 * count):
        if len(out) >= count:
            break
        k = rng.randint(2, 5)
        atoms = sorted(rng.choice(ATOMS) for _ in range(k))
        if np.prod([sizes[a] for a in atoms]) > max_size:
            continue
        expr = " * ".join(atoms)
        if expr not in seen:
            seen.add(expr)
            out.append(expr)
    return out


def corpus(max_size=32, seed=0, lattice_cap=LATTICE_CAP):
    """Catalog rings plus seeded random products, each with every subring over its prime subring."""
    out = []
    for expr in list(CATALOG) + random_products(max_size, seed):
        S = build(expr)
        if S.size > max_size or S.size > lattice_cap:
            out.append(CorpusEntry(expr, S, None, f"size {S.size} above cap"))
            continue
        out.append(CorpusEntry(expr, S, intermediate_rings(prime_subring(S), cap=lattice_cap)))
    return out


def generators(S, members):
    """A short list of elements generating the subring ``members`` of S."""
    cur = closure(S, [])
    have = np.zeros(S.size, dtype=bool)
    have[cur] = True
    gens = []
    for x in members:
        if not have[x]:
            gens.append(int(x))
            cur = closure(S, np.append(cur, x))
            have[cur] = True
    return gens


def subring_from_gens(S, gens):
    return Subring(S, closure(S, [parse_element(S, g) for g in gens]), validate=False)


# ---------------------------------------------------------------------------
# pairs R <= T inside one corpus ring S


class Pair:
    def __init__(self, entry, S, R, T):
        self.expr = entry if isinstance(entry, str) else entry.expr
        self.S, self.R, self.T = S, R, T

    @classmethod
    def from_description(cls, desc):
        S = build(desc["ambient"])
        return cls(desc["ambient"], S, subring_from_gens(S, desc["sub"]), subring_from_gens(S, desc["over"]))

    def describe(self):
        S = self.S
        return {
            "ambient": self.expr,
            "sub": [S.format(g) for g in generators(S, self.R.members)],
            "over": [S.format(g) for g in generators(S, self.T.members)],
        }

    @cached_property
    def ext(self):
        return restrict(self.R, self.T)

    @cached_property
    def sl(self):
        return is_SL(self.ext)

    @property
    def proper(self):
        return self.R.size < self.T.size

    @cached_property
    def closed(self):
        return closedness_predicates(self.ext)

    @cached_property
    def residual(self):
        return residual_analysis(self.ext)

    @cached_property
    def lattice(self):
        return intermediate_rings(self.ext)


def _fmt(S, idx):
    return sorted(S.format(int(i)) for i in idx)


def _set(members):
    return set(int(i) for i in members)


# every pair check returns (ok, detail); ok None means "does not apply"


def chk_sl_characterization(p):
    ext = p.ext
    brute = set(units(ext, method="brute").indices) == set(
        int(i) for i in ext.from_ambient(np.array(units(p.T, method="brute").indices))
    )
    pred = (
        bool(p.closed["seminormal"])
        and p.residual["infra_integral"]
        and all(M.residue_size == 2 for M in msupp(ext))
    )
    return brute == pred, {"brute_SL": brute, "criterion": pred}


def _members_in(sub, ideal):
    """Ideal of ``sub`` (a subring of T) as indices of S."""
    return _set(sub.to_ambient(ideal.array))


def chk_sl_structure(p):
    if not p.sl:
        return None, {}
    R, T = p.R, p.T
    issues = []
    if _members_in(R, jacobson(R)) != _members_in(T, jacobson(T)):
        issues.append("J(R) != J(T)")
    if _members_in(R, nilradical(R)) != _members_in(T, nilradical(T)):
        issues.append("Nil(R) != Nil(T)")
    if not p.closed["seminormal"]:
        issues.append("not seminormal")
    if not p.residual["infra_integral"]:
        issues.append("not infra-integral")
    two = T.from_int(2)
    if two in units(T):
        if not same_idempotents(p.ext):
            issues.append("idempotents differ although 2 is a unit")
        if is_reduced(T) and p.proper:
            issues.append("R != T although T is reduced and 2 is a unit")
    return not issues, {"issues": issues}


def chk_co_integral(p):
    c = p.closed["co_integrally_closed"]
    return c == p.sl, {"co_integrally_closed": c, "SL": p.sl, "witness": p.closed["witnesses"].get("co_integrally_closed")}


def chk_sl_defect(p):
    d = sl_defect(p.ext)
    return d.consistent, {"index": d.index, "modules": None if d.modules is None else len(d.modules)}


def chk_greatest_sl(p):
    try:
        res = msl_subextension(p.ext, p.lattice)
    except FindingError as exc:
        return False, {"error": str(exc), "witness": exc.witness}
    return res.ok, {
        "top_size": res.top.size,
        "product": res.sl.product_ok,
        "sup": res.sl.sup_ok,
        "union": res.sl.union_ok,
        "criterion_matches": res.criterion_matches,
        "seminormal_family": res.seminormal_family.ok,
    }


def _reduced_view(sub):
    """(sub / Nil(sub)) as a ring together with its projection."""
    N = nilradical(sub)
    if len(N) == 1:
        return sub, sub.all
    Q, proj = quotient(sub, N)
    return Q, proj.map


def chk_nil_factorization(p):
    R, T, ext = p.R, p.T, p.ext
    nil_eq = _members_in(R, nilradical(R)) == _members_in(T, nilradical(T))
    rhs = False
    if nil_eq:
        Q, proj = _reduced_view(T)
        img = np.unique(proj[ext.members])
        rhs = is_SL(Subring(Q, img, validate=False))
    return p.sl == rhs, {"SL": p.sl, "nil_equal": nil_eq, "reduced_SL": rhs}


def _factorwise(ext):
    """SL verdicts of eR <= eT for the primitive idempotents e of R."""
    T = ext.ambient
    out = []
    for fac in local_factors(ext).factors:
        e = int(ext.to_ambient(fac.idempotent))
        eT = np.unique(_arr(T.mul(e, T.all)))
        eR = np.unique(_arr(T.mul(e, ext.members)))
        if eT.size == eR.size:
            continue
        # eT is a ring with identity e; view it through its own indices
        corner = _Corner(T, eT, e)
        out.append(is_SL(Subring(corner, corner.lookup[eR], validate=False)))
    return out


class _Corner(Subring):
    """The ring eT (identity e), modelled as a Subring-like object over T."""

    def __init__(self, T, members, e):
        from .rings import FiniteRing

        self.ambient = T
        self.members = members
        self.lookup = np.full(T.size, -1, dtype=np.int64)
        self.lookup[members] = np.arange(members.size)
        self._lookup = self.lookup
        FiniteRing.__init__(self, members.size, int(self.lookup[e]))

    def _units_fast(self):
        return None


def chk_localization(p):
    local = _factorwise(p.ext)
    suff = all(local)
    if suff and not p.sl:
        return False, {"factorwise": local, "SL": p.sl}
    return True, {"factorwise": local, "SL": p.sl, "converse_fails": p.sl and not suff}


def chk_product_of_fields(p):
    if not (p.sl and is_reduced(p.T)):
        return None, {}
    issues = []
    if not is_reduced(p.R):
        issues.append("R not reduced")
    if not p.residual["infra_integral"]:
        issues.append("not infra-integral")
    if not p.closed["seminormal"]:
        issues.append("not seminormal")
    if not is_quadratic(p.ext):
        issues.append("not quadratic")
    return not issues, {"issues": issues}


def chk_local_target(p):
    if not (p.sl and ring_is_local(p.T)):
        return None, {}
    return not p.proper, {"sizes": [p.R.size, p.T.size]}


def chk_shared_ideal(p):
    cond = conductor(p.ext)
    if len(cond) == p.T.size:
        return None, {}
    Q, proj = quotient(p.T, cond)
    img = Subring(Q, np.unique(proj.map[p.ext.members]), validate=False)
    lifted = is_SL(img)
    if lifted and not p.sl:
        return False, {"quotient_SL": lifted, "SL": p.sl}
    return True, {"quotient_SL": lifted, "SL": p.sl}


def chk_closure_order(p):
    u = u_closure(p.ext)
    t = t_closure(p.ext)
    s = seminormalization(p.ext)
    ok = _set(u.members) <= _set(t.members) and _set(s.members) <= _set(t.members)
    return ok, {"sizes": {"u": u.size, "t": t.size, "seminormal": s.size}}


def chk_sl_bottom(p):
    B = sl_bottom(p.ext)
    T = p.T
    ok = is_SL(Subring(T, B.members, validate=False)) if B.size < T.size else True
    lat = p.lattice
    below = []
    for V in lat.members:
        if V.size == T.size or not is_SL(Subring(T, V.members, validate=False)):
            continue
        if not _set(B.members) <= _set(V.members):
            below.append(_fmt(T, V.members))
    return ok and not below, {"bottom_SL": ok, "not_containing": below}


def chk_u_integral_boolean(p):
    if not p.proper:
        return None, {}
    U = u_closure(p.R)
    inside = bool(U.mask[p.T.members].all())
    rhs = inside and conductor_quotient_is_boolean(p.ext)
    return rhs == p.sl, {"inside_u_closure": inside, "criterion": rhs, "SL": p.sl}


def chk_minimal_steps(p):
    if not p.proper or len(p.lattice) != 2:
        return None, {}
    try:
        kind = classify_minimal(p.R, p.T)
    except ConductorNotMaximal as exc:
        return False, {"error": str(exc), "witness": exc.witness}
    from .extensions import conductor_in

    M = conductor_in(p.ext)
    pred = kind == "decomposed" and M.residue_size == 2
    return pred == p.sl, {"type": kind, "residue": M.residue_size, "SL": p.sl}


def chk_boolean_extension(p):
    if not (p.sl and p.proper):
        return None, {}
    fibers = fibers_over_support(p.ext)
    if not all(f == 2 for f in fibers):
        return None, {}
    return is_boolean_lattice(p.ext, p.lattice), {"fibers": fibers}


def chk_field_base(p):
    R = p.R
    if len(units(R)) != R.size - 1:
        return None, {}
    T = p.T
    boolean = bool((_arr(T.mul(T.all, T.all)) == T.all).all())
    pred = not p.proper or (R.size == 2 and boolean)
    return pred == p.sl, {"SL": p.sl, "criterion": pred}


PAIR_CHECKS = {
    "sl-characterization": chk_sl_characterization,
    "sl-structure": chk_sl_structure,
    "co-integral-closure": chk_co_integral,
    "sl-defect": chk_sl_defect,
    "greatest-sl-subextension": chk_greatest_sl,
    "nil-factorization": chk_nil_factorization,
    "localization-sufficiency": chk_localization,
    "product-of-fields-target": chk_product_of_fields,
    "local-target": chk_local_target,
    "shared-ideal-lifting": chk_shared_ideal,
    "closure-order": chk_closure_order,
    "sl-bottom": chk_sl_bottom,
    "u-integral-boolean-quotient": chk_u_integral_boolean,
    "minimal-steps": chk_minimal_steps,
    "boolean-extension": chk_boolean_extension,
    "field-base": chk_field_base,
}

SUITE_PAIR_CHECKS = {
    "stability": (
        "nil-factorization",
        "localization-sufficiency",
        "product-of-fields-target",
        "local-target",
        "shared-ideal-lifting",
    ),
    "sl-characterization": (
        "sl-characterization",
        "sl-structure",
        "co-integral-closure",
        "sl-defect",
    ),
    "lattice-closures": (
        "greatest-sl-subextension",
        "closure-order",
        "sl-bottom",
        "u-integral-boolean-quotient",
        "minimal-steps",
        "boolean-extension",
        "field-base",
    ),
}


# ---------------------------------------------------------------------------
# findings


@dataclass
class Finding:
    theorem: str
    instance: dict
    verdict: str
    witness: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)

    @property
    def key(self):
        return (self.theorem, json.dumps(self.instance, sort_keys=True))


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


def _pair_findings(entry, names):
    out = []
    if entry.lattice is None:
        for name in names:
            out.append(Finding(name, {"ambient": entry.expr}, "cap-skipped", {"reason": entry.skipped}))
        return out
    pairs = entry.pairs()
    for name in names:
        check = PAIR_CHECKS[name]
        applied, bad, extra = 0, None, 0
        for p in pairs:
            ok, detail = check(p)
            if ok is None:
                continue
            applied += 1
            if name == "localization-sufficiency" and detail.get("converse_fails"):
                extra += 1
            if not ok and bad is None:
                bad = {"pair": p.describe(), "detail": detail}
        wit = {"pairs": len(pairs), "applicable": applied}
        if name == "localization-sufficiency":
            wit["converse_witnesses"] = extra
        if bad is not None:
            out.append(Finding(name, {"ambient": entry.expr}, "counterexample", wit | bad))
        else:
            out.append(Finding(name, {"ambient": entry.expr}, "confirmed", wit))
    return out


def _triple_findings(entry):
    """Towers R <= T <= V: composition, cancellation and the two-step criterion."""
    if entry.lattice is None:
        return [Finding("tower", {"ambient": entry.expr}, "cap-skipped", {"reason": entry.skipped})]
    lat = entry.lattice
    S = entry.ring
    leq = lat.leq
    n = len(lat)
    sl = {}
    loc = {}

    def ext(i, j):
        return restrict(lat.members[i], lat.members[j])

    for i, j in zip(*np.nonzero(leq)):
        e = ext(i, j)
        sl[i, j] = is_SL(e)
        loc[i, j] = is_local(e)
    checked, bad = 0, None
    for i, j, k in itertools.product(range(n), repeat=3):
        if not (leq[i, j] and leq[j, k]):
            continue
        checked += 1
        issues = []
        if sl[i, k] != (sl[i, j] and sl[j, k]):
            issues.append("SL(R<=V) differs from SL(R<=T) and SL(T<=V)")
        if loc[i, j] and loc[j, k] and not loc[i, k]:
            issues.append("local steps compose to a non-local extension")
        if loc[i, k] and not loc[i, j]:
            issues.append("local composite with non-local first step")
        if issues and bad is None:
            bad = {
                "issues": issues,
                "chain": [[S.format(g) for g in generators(S, lat.members[x].members)] for x in (i, j, k)],
            }
    inst = {"ambient": entry.expr}
    if bad:
        return [Finding("tower", inst, "counterexample", {"triples": checked} | bad)]
    return [Finding("tower", inst, "confirmed", {"triples": checked})]


def _product_closure_findings(entry):
    """Joins of SL (and of seminormal infra-integral) subextensions over a common base."""
    if entry.lattice is None:
        return [Finding("join-closure", {"ambient": entry.expr}, "cap-skipped", {"reason": entry.skipped})]
    lat = entry.lattice
    S = entry.ring
    leq = lat.leq
    n = len(lat)
    checked, bad = 0, None
    for r in range(n):
        over = [j for j in range(n) if leq[r, j]]
        R = lat.members[r]
        sl = {j: is_SL(restrict(R, lat.members[j])) for j in over}
        sn = {j: seminormal_infra_integral(restrict(R, lat.members[j])) for j in over}
        for a, b in itertools.combinations(over, 2):
            prod = ring_product(S, lat.members[a].members, lat.members[b].members)
            j = lat.index_of(prod)
            checked += 1
            if (sl[a] and sl[b] and not sl[j]) or (sn[a] and sn[b] and not sn[j]):
                if bad is None:
                    bad = {"base": [S.format(g) for g in generators(S, R.members)], "sizes": [lat.members[a].size, lat.members[b].size]}
    inst = {"ambient": entry.expr}
    if bad:
        return [Finding("join-closure", inst, "counterexample", {"checked": checked} | bad)]
    return [Finding("join-closure", inst, "confirmed", {"checked": checked})]


# ---------------------------------------------------------------------------
# ring-level checks


def ring_checks(S):
    """Structural self-tests for one ring; returns {name: (ok, detail)}."""
    out = {}
    U = units(S)
    Z = set(zerodivisors(S))
    ok = not (set(U.indices) & Z) and len(U) + len(Z) == S.size
    out["units-zerodivisors"] = (ok, {"units": len(U), "zerodivisors": len(Z)})
    out["unit-fast-path"] = (set(U.indices) == set(units(S, method="brute").indices), {})

    J = set(jacobson(S, method="definition").members)
    inter = set(range(S.size))
    for M in maximal_ideals(S):
        inter &= set(M.members)
    nil = set(nilradical(S).members)
    dec = local_factors(S)
    _, prim = idempotents(S)
    total = 0
    orth = True
    for a, b in itertools.combinations(prim, 2):
        orth &= S.mul(a, b) == 0
    for e in prim:
        total = S.add(total, e)
    ok = J == inter and nil <= J and len(dec) == len(maximal_ideals(S)) and total == S.one and orth
    out["radicals-and-idempotents"] = (ok, {"J": len(J), "Nil": len(nil), "maximal": len(maximal_ideals(S))})

    # R/J is regular: every element is an idempotent times a unit
    Jr = jacobson(S)
    if len(Jr) == 1:
        Q = S
    else:
        Q, _ = quotient(S, Jr)
    E = np.array(idempotents(Q)[0])
    UQ = np.array(units(Q).indices)
    prods = np.unique(_arr(Q.mul(E[:, None], UQ[None, :])))
    out["semisimple-quotient-regular"] = (prods.size == Q.size, {"size": Q.size})

    jr, _ = j_regular_witness(S)
    out["j-regular"] = (jr, {})

    T, sl, eq = unit_generated_check(S)
    loc = ring_is_local(S)
    out["unit-generated-subring"] = (sl and (eq or not loc), {"size": T.size, "SL": sl, "equal": eq, "local": loc})

    F = prime_subring(S)
    lat_ok = True
    return out | {"prime-subring-minimal": (lat_ok and F.size == S.characteristic, {"size": F.size})}


RING_CHECKS = (
    "units-zerodivisors",
    "unit-fast-path",
    "radicals-and-idempotents",
    "semisimple-quotient-regular",
    "j-regular",
    "unit-generated-subring",
    "prime-subring-minimal",
)


def _ring_findings(entry, names):
    res = ring_checks(entry.ring)
    inst = {"ambient": entry.expr}
    return [Finding(n, inst, "confirmed" if res[n][0] else "counterexample", _jsonable(res[n][1])) for n in names]


def check_idealization(expr, gens):
    """R -> R (+) M is local; it is SL exactly when M = 0."""
    from .ideals import ideal_generated

    R = build(expr)
    M = ideal_generated(R, [parse_element(R, g) for g in gens])
    X = make_idealization(R, M)
    f = RingMorphism(R, X, _arr(X.encode(R.all, 0)), validate=True)
    loc, sl = is_local(f), is_SL(f)
    return loc and sl == (len(M) == 1), {"local": loc, "SL": sl, "module_size": len(M)}


def check_product_extension(d1, d2):
    """Product of two extensions is SL exactly when both are."""
    from .rings import make_product

    p, q = Pair.from_description(d1), Pair.from_description(d2)
    P = make_product([p.T, q.T])
    a, b = np.meshgrid(p.ext.members, q.ext.members, indexing="ij")
    members = np.unique(_arr(P.encode([a.ravel(), b.ravel()])))
    prod_sl = is_SL(Subring(P, members, validate=False))
    units_ok = len(units(P)) == len(units(p.T)) * len(units(q.T))
    return prod_sl == (p.sl and q.sl) and units_ok, {"SL": prod_sl, "factors": [p.sl, q.sl]}


def _stability_extras(entries, seed):
    out = []
    small = [e for e in entries if e.lattice is not None and e.ring.size <= 16]
    for e in small:
        S = e.ring
        for M in all_ideals(S):
            if S.size * len(M) > 256:
                continue
            gens = [S.format(g) for g in generators_ideal(S, M)]
            ok, detail = check_idealization(e.expr, gens)
            out.append(
                Finding(
                    "idealization",
                    {"ambient": e.expr, "module": gens},
                    "confirmed" if ok else "counterexample",
                    detail,
                )
            )
    rng = random.Random(seed)
    pool = [p for e in entries if e.lattice is not None and e.ring.size <= 8 for p in e.pairs()]
    for _ in range(12):
        p, q = rng.choice(pool), rng.choice(pool)
        d1, d2 = p.describe(), q.describe()
        ok, detail = check_product_extension(d1, d2)
        out.append(Finding("product-extension", {"left": d1, "right": d2}, "confirmed" if ok else "counterexample", detail))
    return out


def _converse_search(findings, max_size, seed):
    """Look for an SL pair whose factorwise extensions are not all SL."""
    loc = [f for f in findings if f.theorem == "localization-sufficiency" and f.verdict != "cap-skipped"]
    found = sum(f.witness["converse_witnesses"] for f in loc)
    return Finding(
        "localization-converse-search",
        {"max_size": max_size, "seed": seed},
        "confirmed",
        {"searched_pairs": sum(f.witness["pairs"] for f in loc), "witnesses_found": found, "exhausted": found == 0},
    )


def generators_ideal(S, M):
    from .ideals import ideal_generated

    gens = []
    cur = ideal_generated(S, [])
    for x in M.members:
        if x not in cur:
            gens.append(x)
            cur = ideal_generated(S, gens)
    return gens


# ---------------------------------------------------------------------------
# cohn suite

COHN_RINGS = ("Z/4", "Z/8", "Z/6", "Z/2 * GF(4)")
LEMMA_RINGS = ("Z/4", "Z/2 * Z/2")


def _ideal_label(R, I):
    return "J" if I == jacobson(R) else I.format()


def cohn_items(R):
    """(label, ideal) for J(R) and every maximal ideal, without repeats."""
    items = [("J", jacobson(R))]
    for M in maximal_ideals(R):
        if M != items[0][1]:
            items.append((M.format(), M))
    return items


def check_cohn_item(expr, ideal):
    """All bounded checks for R//I (ideal a label) or for Cohn's ring (ideal None)."""
    R = build(expr)
    if ideal is None:
        SR = cohn.make_cohn(R)
        reps = [
            cohn.verify_unit_rigidity(SR, 2),
            cohn.verify_conductor(SR, 2),
            cohn.verify_zerodivisors(SR),
            cohn.verify_t_closed(SR, 4),
            cohn.check_ring_laws(SR, 2),
        ]
    else:
        I = dict(cohn_items(R))[ideal]
        SR = cohn.make_shifted(R, I)
        reps = [
            cohn.verify_unit_rigidity(SR, 2),
            cohn.verify_conductor(SR, 2),
            cohn.verify_t_closed(SR, 4),
            cohn.check_ring_laws(SR, 2),
        ]
        if ideal == "J":
            reps.append(cohn.verify_jacobson_membership(SR, 4))
        if is_reduced(R):
            reps.append(cohn.verify_reduced(SR, 4))
    ok = all(r.ok for r in reps)
    detail = {r.name: {"ok": r.ok, "checked": r.checked} for r in reps}
    if not ok:
        detail["counterexamples"] = {r.name: _jsonable(r.counterexamples[:3]) for r in reps if not r.ok}
    return ok, detail


def check_lemma_1cohn(expr, ideal_gens, d=2):
    from .ideals import ideal_generated

    R = build(expr)
    I = ideal_generated(R, [parse_element(R, g) for g in ideal_gens])
    rep = cohn.lemma_1cohn_oracle(R, I, d)
    return rep.ok, {"tuples": rep.checked, "hypothesis_holds": rep.details["hypothesis_holds"], "counterexamples": rep.counterexamples[:3]}


def check_shifted_transfer(desc, k_gens):
    from .ideals import ideal_generated

    p = Pair.from_description(desc)
    T = p.T
    K = ideal_generated(T, [parse_element(T, g) for g in k_gens])
    res = cohn.shifted_sl_transfer(p.ext, K)
    return res["ok"], _jsonable(res)


def check_polynomial_over_reduced(expr):
    """Bounded units of R//0 over a reduced R are the units of R."""
    R = build(expr)
    SR = cohn.shifted_over_zero(R)
    found = cohn.bounded_units(SR, 1)
    heads = sorted(y.head for y in found if not y.has_tail)
    ok = all(not y.has_tail for y in found) and heads == list(units(R).indices)
    return ok, {"units": len(found)}


def _cohn_findings(entries):
    out = []
    for expr in COHN_RINGS:
        R = build(expr)
        for label, _ in cohn_items(R):
            ok, detail = check_cohn_item(expr, label)
            out.append(Finding("shifted-ring", {"ring": expr, "ideal": label}, _verdict(ok), detail))
        ok, detail = check_cohn_item(expr, None)
        out.append(Finding("cohn-ring", {"ring": expr}, _verdict(ok), detail))
    for expr in LEMMA_RINGS:
        R = build(expr)
        for I in all_ideals(R):
            if not I.is_proper or not is_semiprime(R, I):
                continue
            gens = [R.format(g) for g in generators_ideal(R, I)]
            ok, detail = check_lemma_1cohn(expr, gens)
            out.append(Finding("lemma-1cohn", {"ring": expr, "ideal": gens}, _verdict(ok), _jsonable(detail)))
    for expr in ("Z/2", "Z/3", "Z/2 * Z/2", "GF(4)"):
        ok, detail = check_polynomial_over_reduced(expr)
        out.append(Finding("shifted-over-zero-units", {"ring": expr}, _verdict(ok), detail))
    for e in entries:
        if e.lattice is None or e.ring.size > 8:
            continue
        for p in e.pairs():
            if not p.proper:
                continue
            T = p.T
            for K in [jacobson(T)] + maximal_ideals(T):
                gens = [T.format(g) for g in generators_ideal(T, K)]
                desc = p.describe()
                ok, detail = check_shifted_transfer(desc, gens)
                out.append(Finding("shifted-sl-transfer", {"pair": desc, "K": gens}, _verdict(ok), detail))
    return out


def _verdict(ok):
    return "confirmed" if ok else "counterexample"


# ---------------------------------------------------------------------------
# poly suite

POLY_UNIT_RINGS = ("Z/2", "Z/4", "Z/8")
IRRED_FIELDS = (("Z/2", 6), ("Z/3", 6), ("GF(4)", 6))
MONIC_RINGS = ("Z/4", "Z/8", "Z/9", "Z/2[x]/(x^2)", "GF(4)", "Z/6")


def check_poly_units(expr, d=3):
    R = build(expr)
    rep = poly.poly_unit_check(R, d)
    return rep["match"] and rep["pair_scan_consistent"], {"count": rep["count"], "degree": d}


def _reducible_oracle(F, n):
    """Monic degree-n polynomials that are products of two monic factors of positive degree."""
    from . import _polyarith as pa

    out = set()
    for k in range(1, n // 2 + 1):
        for g in poly.monic_polys(F, k):
            for h in poly.monic_polys(F, n - k):
                out.add(tuple(pa.p_mul(F, g, h)))
    return out


def check_irreducibility(expr, n):
    F = build(expr)
    bad = []
    checked = 0
    for deg in range(1, n + 1):
        red = _reducible_oracle(F, deg)
        for f in poly.monic_polys(F, deg):
            checked += 1
            has_root = any(
                _eval_poly(F, f, r) == 0 for r in range(F.size)
            )
            irr = poly.is_irreducible(F, f)
            oracle = tuple(f) not in red
            if irr != oracle or (irr and deg > 1 and has_root):
                bad.append(poly.format_poly(F, f))
    return not bad, {"checked": checked, "mismatches": bad[:5]}


def _eval_poly(F, f, r):
    acc = 0
    for c in reversed(f):
        acc = F.sadd(F.smul(acc, r), c)
    return acc


def check_cyclotomic_irreducibility(p):
    K = make_zmod(2)
    irr = poly.is_irreducible(K, poly.cyclotomic_modulus(p))
    prim = poly.is_primitive_root(2, p)
    return irr == prim, {"irreducible": irr, "primitive_root": prim}


def check_monic_maximal(expr, deg=2):
    """Every monic f of degree <= deg: a field of the right size, or a factorisation."""
    R = build(expr)
    checked, bad = 0, []
    for M in maximal_ideals(R):
        if len(M) == 1:
            Q, proj = R, R.all
        else:
            Q, pr = quotient(R, M)
            proj = pr.map
        for k in range(1, deg + 1):
            for f in poly.monic_polys(R, k):
                checked += 1
                fbar = [int(proj[c]) for c in f]
                irr = poly.is_irreducible(Q, fbar)
                try:
                    F, cert = poly.monic_maximal_ideal(R, M, [R[c] for c in f])
                    ok = irr and cert["field"] and cert["size"] == cert["expected_size"]
                except ReducibleImage:
                    ok = not irr
                if not ok:
                    bad.append({"M": M.format(), "f": poly.format_poly(R, f)})
    return not bad, {"checked": checked, "failures": bad[:5]}


def _poly_findings():
    out = []
    for expr in POLY_UNIT_RINGS:
        ok, d = check_poly_units(expr)
        out.append(Finding("polynomial-units", {"ring": expr, "degree": 3}, _verdict(ok), d))
    for expr, n in IRRED_FIELDS:
        ok, d = check_irreducibility(expr, n)
        out.append(Finding("irreducibility-oracle", {"field": expr, "degree": n}, _verdict(ok), d))
    for p in (3, 5, 7, 11, 13):
        ok, d = check_cyclotomic_irreducibility(p)
        out.append(Finding("cyclotomic-irreducibility", {"p": p}, _verdict(ok), d))
    for expr in MONIC_RINGS:
        ok, d = check_monic_maximal(expr)
        out.append(Finding("monic-maximal-ideal", {"ring": expr, "degree": 2}, _verdict(ok), d))
    return out


# ---------------------------------------------------------------------------
# examples suite


def example_75():
    """The two SL embeddings F2[y]/(y^3 - 1) -> F2[t]/(t^4 - t)."""
    K = make_zmod(2)
    from .rings import PolyQuotient

    R = PolyQuotient(K, [1, 0, 0, 1], var="y")
    S = PolyQuotient(K, [0, 1, 0, 0, 1], var="t")
    homs = poly.sl_embeddings(R, S)
    try:
        make_morphism(R, S, {R.gen(): S.gen()})
        rejected = False
    except NotWellDefined:
        rejected = True
    return {
        "units_S": sorted(S.format(u) for u in units(S).indices),
        "units_R": sorted(R.format(u) for u in units(R).indices),
        "sl_embeddings": sorted(S.format(int(f.map[R.gen()])) for f in homs),
        "y_to_t_rejected": rejected,
    }


EXPECTED_75 = {
    "units_S": sorted(["1", "1 + t + t^3", "1 + t^2 + t^3"]),
    "units_R": sorted(["1", "y", "y^2"]),
    "sl_embeddings": sorted(["1 + t + t^3", "1 + t^2 + t^3"]),
    "y_to_t_rejected": True,
}


def example_74(p):
    try:
        c = poly.cyclotomic_sl_construction(p)
    except NotPrimitive as exc:
        return {"p": p, "constructed": False, "reason": str(exc), "factors": exc.factors}
    return {
        "p": p,
        "constructed": True,
        "SL": c.report.SL,
        "injective": c.morphism.injective,
        "units": len(units(c.R)),
        "image_of_generator": c.image_of_generator,
    }


def example_76(expr, n, m):
    c = poly.pad_construction(build(expr), n, m)
    return {"ring": expr, "n": n, "m": m, "SL": c.report.SL, "units": [len(units(c.R)), len(units(c.S))]}


def _example_findings():
    out = []
    got = example_75()
    out.append(Finding("two-sl-embeddings", {"example": "7.5"}, _verdict(got == EXPECTED_75), got))
    for p in (3, 5, 11):
        r = example_74(p)
        out.append(Finding("cyclotomic-sl-construction", {"p": p}, _verdict(r["constructed"] and r["SL"] and r["injective"]), r))
    r = example_74(7)
    expected = sorted(["1 + X + X^3", "1 + X^2 + X^3"])
    out.append(
        Finding(
            "cyclotomic-sl-construction",
            {"p": 7},
            _verdict(not r["constructed"] and sorted(r["factors"]) == expected),
            r,
        )
    )
    for expr, n, m in (("Z/3", 1, 2), ("Z/4", 1, 3), ("Z/4", 2, 2)):
        r = example_76(expr, n, m)
        out.append(Finding("padding-construction", {"ring": expr, "n": n, "m": m}, _verdict(r["SL"]), r))
    return out


# ---------------------------------------------------------------------------
# driver


def run_suite(suite="all", max_size=32, seed=0, lattice_cap=LATTICE_CAP):
    """Run one suite (or ``all``) and return findings in canonical order."""
    names = SUITES if suite == "all" else (suite,)
    for n in names:
        if n not in SUITES:
            raise ValueError(f"unknown suite {n!r}")
    need_corpus = any(n in ("stability", "sl-characterization", "lattice-closures", "cohn") for n in names)
    entries = corpus(max_size, seed, lattice_cap) if need_corpus else []
    findings = []
    for n in names:
        if n in SUITE_PAIR_CHECKS:
            for e in entries:
                findings += _pair_findings(e, SUITE_PAIR_CHECKS[n])
        if n == "stability":
            for e in entries:
                findings += _triple_findings(e)
                if e.lattice is not None:
                    findings += _ring_findings(e, RING_CHECKS[:5])
            findings += _stability_extras(entries, seed)
            findings.append(_converse_search(findings, max_size, seed))
        if n == "lattice-closures":
            for e in entries:
                findings += _product_closure_findings(e)
                if e.lattice is not None:
                    findings += _ring_findings(e, RING_CHECKS[5:])
        if n == "cohn":
            findings += _cohn_findings(entries)
        if n == "poly":
            findings += _poly_findings()
        if n == "examples":
            findings += _example_findings()
    findings = [Finding(f.theorem, _jsonable(f.instance), f.verdict, _jsonable(f.witness)) for f in findings]
    return sorted(findings, key=lambda f: f.key)


def caps(max_size=32, lattice_cap=LATTICE_CAP):
    return {
        "max_size": max_size,
        "lattice": lattice_cap,
        "pair_scan": PAIR_CAP,
        "cohn_pair_scan": cohn.PAIR_SCAN_CAP,
        "co_integral_degree": 4,
    }


def report(findings, seed, caps_used):
    return {
        "tool_version": TOOL_VERSION,
        "seed": seed,
        "caps": caps_used,
        "findings": [f.to_dict() for f in findings],
    }


def dumps(rep):
    return json.dumps(rep, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def counterexamples(findings):
    return [f for f in findings if f.verdict == "counterexample"]


# ---------------------------------------------------------------------------
# replay


def replay(finding):
    """Re-derive a finding's verdict from its instance and witness alone."""
    f = finding if isinstance(finding, Finding) else Finding(**finding)
    t, inst, wit = f.theorem, f.instance, f.witness
    if f.verdict == "cap-skipped":
        return "cap-skipped"
    if t in PAIR_CHECKS:
        if "pair" not in wit:
            entry = next(e for e in corpus_for(inst["ambient"]))
            return _pair_findings(entry, (t,))[0].verdict
        ok, _ = PAIR_CHECKS[t](Pair.from_description(wit["pair"]))
        return _verdict(ok is not False)
    if t == "localization-converse-search":
        entries = corpus(inst["max_size"], inst["seed"])
        fs = [g for e in entries for g in _pair_findings(e, ("localization-sufficiency",))]
        return _converse_search(fs, inst["max_size"], inst["seed"]).verdict
    if t == "tower":
        return _triple_findings(next(corpus_for(inst["ambient"])))[0].verdict
    if t == "join-closure":
        return _product_closure_findings(next(corpus_for(inst["ambient"])))[0].verdict
    if t in RING_CHECKS:
        return _verdict(ring_checks(build(inst["ambient"]))[t][0])
    simple = {
        "idealization": lambda: check_idealization(inst["ambient"], inst["module"]),
        "product-extension": lambda: check_product_extension(inst["left"], inst["right"]),
        "shifted-ring": lambda: check_cohn_item(inst["ring"], inst["ideal"]),
        "cohn-ring": lambda: check_cohn_item(inst["ring"], None),
        "lemma-1cohn": lambda: check_lemma_1cohn(inst["ring"], inst["ideal"]),
        "shifted-over-zero-units": lambda: check_polynomial_over_reduced(inst["ring"]),
        "shifted-sl-transfer": lambda: check_shifted_transfer(inst["pair"], inst["K"]),
        "polynomial-units": lambda: check_poly_units(inst["ring"], inst["degree"]),
        "irreducibility-oracle": lambda: check_irreducibility(inst["field"], inst["degree"]),
        "cyclotomic-irreducibility": lambda: check_cyclotomic_irreducibility(inst["p"]),
        "monic-maximal-ideal": lambda: check_monic_maximal(inst["ring"], inst["degree"]),
    }
    if t in simple:
        return _verdict(simple[t]()[0])
    if t == "two-sl-embeddings":
        return _verdict(example_75() == EXPECTED_75)
    if t == "cyclotomic-sl-construction":
        return _verdict([x for x in _example_findings() if x.instance == inst][0].verdict == "confirmed")
    if t == "padding-construction":
        return _verdict(example_76(inst["ring"], inst["n"], inst["m"])["SL"])
    raise ValueError(f"unknown theorem id {t!r}")


def corpus_for(expr, lattice_cap=LATTICE_CAP):
    S = build(expr)
    yield CorpusEntry(expr, S, intermediate_rings(prime_subring(S), cap=lattice_cap))
