"""Ring extensions ``R <= S`` and the predicates quantified over them.

An extension is a :class:`~ringlab.rings.Subring` ``R`` whose ``ambient`` is
``S``.  Injective morphisms are accepted wherever an extension is expected and
are replaced by their image.  Locality and strong locality also make sense for
non-injective morphisms and are computed on the map itself.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from . import _polyarith as pa
from .errors import InconsistentReport, NotAHomomorphism, NotWellDefined
from .ideals import Ideal, idempotents, jacobson, local_factors, maximal_ideals, nilradical
from .morphism import EXHAUSTIVE_CAP, RingMorphism, check_homomorphism, inclusion
from .rings import _CHUNK, Element, PolyQuotient, Subring, ZMod, _arr, units

PAIR_CAP = 1 << 22


def as_extension(x):
    """Return the Subring ``R`` (with ``R.ambient = S``) for an extension-like value."""
    if isinstance(x, Subring):
        return x
    if isinstance(x, RingMorphism):
        if not x.injective:
            raise ValueError("morphism is not injective; it is not an extension")
        return x.image_subring()
    raise TypeError("expected a Subring or an injective RingMorphism")


def _as_morphism(x):
    return inclusion(x) if isinstance(x, Subring) else x


def _idx(ring, x):
    return x.index if isinstance(x, Element) else int(x)


# ---------------------------------------------------------------------------
# morphism construction


def make_morphism(R, S, images, validate=True):
    """Build a homomorphism ``R -> S``.

    ``images`` is either a full map (one target index per source index) or a
    dict ``{generator: image}``.  When ``R = base[x]/(m)`` over ``Z/n`` and
    only ``x`` is given, well-definedness is decided by the relation
    ``m(image) = 0``; otherwise the map is grown by closure and every pair of
    known elements is checked for consistency.
    """
    if isinstance(images, dict):
        gens = {_idx(R, k): _idx(S, v) for k, v in images.items()}
        if isinstance(R, PolyQuotient) and isinstance(R.base, ZMod) and set(gens) == {R.gen()}:
            return _morphism_from_relation(R, S, gens[R.gen()])
        return _morphism_by_closure(R, S, gens)
    return RingMorphism(R, S, images, validate=validate)


def _eval_at(R, S, w):
    """Vectorised evaluation map ``sum c_k x^k -> sum c_k w^k`` for R over Z/n."""
    n = R.base.n
    C = R.decode(R.all)
    out = np.zeros(R.size, dtype=np.int64)
    power = S.one
    for k in range(R.degree):
        mult = np.zeros(n, dtype=np.int64)
        for c in range(1, n):
            mult[c] = S.add(mult[c - 1], power)
        out = _arr(S.add(out, mult[C[:, k]]))
        power = S.mul(power, w)
    return out


def relation_value(R, S, w):
    """Value of R's modulus at ``w`` computed in S."""
    acc = 0
    for c in reversed(R.modulus):
        acc = S.add(S.mul(acc, w), S.from_int(R.base.coords(c)))
    return acc


def _morphism_from_relation(R, S, w):
    if S.from_int(R.base.n) != 0:
        raise NotWellDefined(f"{R.base.n} is not zero in the target", witness=(R.base.n,))
    val = relation_value(R, S, w)
    if val != 0:
        raise NotWellDefined(
            f"modulus evaluated at {S.format(w)} is {S.format(val)}, not 0",
            witness=(int(w), int(val)),
        )
    return RingMorphism(R, S, _eval_at(R, S, w), validate=False)


def _morphism_by_closure(R, S, gens):
    fmap = np.full(R.size, -1, dtype=np.int64)
    fmap[0], fmap[R.one] = 0, S.one
    for g, v in gens.items():
        if fmap[g] >= 0 and fmap[g] != v:
            raise NotWellDefined("conflicting images for a generator", witness=(g,))
        fmap[g] = v
    while True:
        K = np.flatnonzero(fmap >= 0)
        grew = False
        for op_r, op_s in ((R.add, S.add), (R.mul, S.mul)):
            src = _arr(op_r(K[:, None], K[None, :])).ravel()
            img = _arr(op_s(fmap[K][:, None], fmap[K][None, :])).ravel()
            known = fmap[src] >= 0
            clash = known & (fmap[src] != img)
            if clash.any():
                i = int(np.argmax(clash))
                a, b = divmod(i, K.size)
                raise NotWellDefined(
                    "generator images violate a relation", witness=(int(K[a]), int(K[b]))
                )
            new = ~known
            if new.any():
                fmap[src[new]] = img[new]
                # a later duplicate may disagree with an earlier one
                if (fmap[src[new]] != img[new]).any():
                    j = int(np.flatnonzero(fmap[src[new]] != img[new])[0])
                    raise NotWellDefined("generator images violate a relation", witness=(int(src[new][j]),))
                grew = True
        if not grew:
            break
    if (fmap < 0).any():
        raise NotAHomomorphism("generators do not generate the source ring")
    return RingMorphism(R, S, fmap, validate=False)


def enumerate_morphisms(R, S):
    """All homomorphisms from ``base[x]/(m)`` over ``Z/n`` into S, by image of x."""
    if not (isinstance(R, PolyQuotient) and isinstance(R.base, ZMod)):
        raise TypeError("enumeration needs a polynomial quotient over Z/n")
    if S.from_int(R.base.n) != 0:
        return []
    out = []
    vals = np.zeros(S.size, dtype=np.int64)
    for c in reversed(R.modulus):
        vals = _arr(S.add(S.mul(vals, S.all), S.from_int(R.base.coords(c))))
    for w in np.flatnonzero(vals == 0):
        out.append(RingMorphism(R, S, _eval_at(R, S, int(w)), validate=False))
    return out


# ---------------------------------------------------------------------------
# locality


def is_local(x, method="auto"):
    """f^{-1}(U(S)) = U(R)."""
    f = _as_morphism(x)
    us = units(f.target, method=method).mask
    ur = units(f.source, method=method).mask
    return bool((us[f.map] == ur).all())


def is_SL(x, method="auto"):
    """f(U(R)) = U(S)."""
    f = _as_morphism(x)
    ur = units(f.source, method=method).indices
    us = units(f.target, method=method).indices
    return set(f.map[list(ur)].tolist()) == set(us)


def sub_units(R, method="auto"):
    """U(R) as ambient indices."""
    return R.members[list(units(R, method=method).indices)]


# ---------------------------------------------------------------------------
# conductor, support


def additive_generators(S):
    """A small set whose additive span is S."""
    if isinstance(S, PolyQuotient) and isinstance(S.base, ZMod):
        return [S.from_coeffs([0] * k + [1]) for k in range(S.degree)]
    span = np.zeros(S.size, dtype=bool)
    span[0] = True
    gens = []
    for x in range(S.size):
        if span[x]:
            continue
        gens.append(x)
        mult = [0]
        while True:
            nxt = S.add(mult[-1], x)
            if nxt == 0:
                break
            mult.append(nxt)
        cur = np.flatnonzero(span)
        span[_arr(S.add(cur[:, None], np.array(mult)[None, :])).ravel()] = True
    return gens


def conductor(x):
    """(R:S) = {s in S : sS <= R}, as an ideal of S."""
    R = as_extension(x)
    S = R.ambient
    gens = np.array(additive_generators(S), dtype=np.int64)
    inR = R.mask
    ok = inR[_arr(S.mul(S.all[:, None], gens[None, :]))].all(axis=1)
    return Ideal(S, tuple(int(i) for i in np.flatnonzero(ok)))


def conductor_in(R, cond=None):
    """The conductor as an ideal of R itself."""
    cond = conductor(R) if cond is None else cond
    return Ideal(R, tuple(sorted(int(i) for i in R.from_ambient(cond.array))))


def msupp(x):
    """Maximal ideals M of R whose factor ``eR`` differs from ``eS``."""
    R = as_extension(x)
    S = R.ambient
    out = []
    for fac in local_factors(R).factors:
        e = R.to_ambient(fac.idempotent)
        eS = np.unique(_arr(S.mul(e, S.all)))
        eR = np.unique(_arr(S.mul(e, R.members)))
        if eS.size != eR.size:
            out.append(fac.ambient_maximal)
    return sorted(out, key=lambda M: M.members)


# ---------------------------------------------------------------------------
# closedness


def closedness_predicates(x, d_max=4, cap=PAIR_CAP):
    """Seminormal, t-closed, u-closed and co-integrally closed, with witnesses.

    Returns a dict; every value is None when ``|S| * |R|`` exceeds ``cap``.
    """
    R = as_extension(x)
    S = R.ambient
    keys = ("seminormal", "t_closed", "u_closed", "co_integrally_closed")
    if S.size * R.size > cap:
        return {k: None for k in keys} | {"witnesses": {}}
    inR = R.mask
    out = np.flatnonzero(~inR)
    Rm = R.members
    b2 = _arr(S.mul(out, out))
    b3 = _arr(S.mul(b2, out))
    res, wit = {}, {}

    bad = out[inR[b2] & inR[b3]]
    res["seminormal"] = bad.size == 0
    if bad.size:
        wit["seminormal"] = {"b": int(bad[0])}

    c1 = inR[_arr(S.sub(b2[:, None], S.mul(Rm[None, :], out[:, None])))]
    c2 = inR[_arr(S.sub(b3[:, None], S.mul(Rm[None, :], b2[:, None])))]
    both = c1 & c2
    hit = np.argwhere(both)
    res["t_closed"] = hit.size == 0
    if hit.size:
        wit["t_closed"] = {"b": int(out[hit[0][0]]), "r": int(Rm[hit[0][1]])}
    ucol = int(R.from_ambient(S.one))
    ubad = out[both[:, ucol]]
    res["u_closed"] = ubad.size == 0
    if ubad.size:
        wit["u_closed"] = {"b": int(ubad[0]), "r": int(S.one)}

    ur = np.zeros(S.size, dtype=bool)
    ur[sub_units(R)] = True
    res["co_integrally_closed"] = True
    for s in out:
        deg = comonic_root_degree(S, Rm, ur, int(s), d_max)
        if deg is not None:
            res["co_integrally_closed"] = False
            wit["co_integrally_closed"] = {"s": int(s), "degree": deg}
            break
    res["witnesses"] = wit
    return res


def comonic_root_degree(S, Rm, unit_mask, s, d_max):
    """Least d <= d_max such that s is a root of a comonic degree-d polynomial over R.

    ``a0 + a1 s + ... + ad s^d = 0`` with ``a0`` a unit of R exactly when the
    R-span of ``s, ..., s^d`` contains a unit of R.
    """
    span = np.array([0], dtype=np.int64)
    p = s
    for d in range(1, d_max + 1):
        span = np.unique(_arr(S.add(span[:, None], S.mul(Rm, p)[None, :])))
        if unit_mask[span].any():
            return d
        p = S.mul(p, s)
    return None


# ---------------------------------------------------------------------------
# residue fields


def contraction(R, N):
    """N intersected with R, as an ideal of R."""
    return Ideal(R, tuple(int(i) for i in R.from_ambient(N.array[R.mask[N.array]])))


def residual_analysis(x):
    R = as_extension(x)
    S = R.ambient
    fibers = []
    for N in maximal_ideals(S):
        M = contraction(R, N)
        fibers.append({"N": N, "M": M, "residue_R": M.residue_size, "residue_S": N.residue_size})
    infra = all(f["residue_R"] == f["residue_S"] for f in fibers)
    contracted = [f["M"].members for f in fibers]
    return {
        "infra_integral": infra,
        "i_extension": len(set(contracted)) == len(contracted),
        "fibers": fibers,
    }


def is_quadratic(x):
    """Every s in S satisfies s^2 = u s for some unit u of R."""
    R = as_extension(x)
    S = R.ambient
    U = sub_units(R)
    sq = _arr(S.mul(S.all, S.all))
    return bool((_arr(S.mul(S.all[:, None], U[None, :])) == sq[:, None]).any(axis=1).all())


# ---------------------------------------------------------------------------
# unit index


@dataclass
class SLDefect:
    index: int
    modules: list | None

    @property
    def consistent(self):
        return self.modules is None or len(self.modules) == self.index


def sl_defect(x, cap=PAIR_CAP):
    """[U(S) : U(R)] and the distinct modules R*u for u in U(S)."""
    R = as_extension(x)
    S = R.ambient
    us = np.array(units(S).indices, dtype=np.int64)
    ur = sub_units(R)
    index = us.size // ur.size
    if us.size * R.size > cap:
        return SLDefect(index, None)
    seen = {}
    step = max(1, _CHUNK // R.size)
    for start in range(0, us.size, step):
        block = np.sort(_arr(S.mul(us[start : start + step, None], R.members[None, :])), axis=1)
        for row in block:
            key = tuple(np.unique(row).tolist())
            seen.setdefault(key, None)
    return SLDefect(index, sorted(seen))


# ---------------------------------------------------------------------------
# report


@dataclass
class ExtensionReport:
    ambient: str
    subring_size: int
    ambient_size: int
    local: bool
    SL: bool
    seminormal: bool | None = None
    t_closed: bool | None = None
    u_closed: bool | None = None
    infra_integral: bool | None = None
    i_extension: bool | None = None
    co_integrally_closed: bool | None = None
    conductor: list | None = None
    msupp: list = field(default_factory=list)
    sl_defect: int | None = None
    invertible_modules: int | None = None
    residual_fibers: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)


def analyze(x, d_max=4, cap=PAIR_CAP):
    """Every extension predicate at once, with internal consistency checks."""
    if isinstance(x, RingMorphism) and not x.injective:
        return ExtensionReport(
            x.target.name, x.image.size, x.target.size, is_local(x), is_SL(x)
        )
    R = as_extension(x)
    S = R.ambient
    fmt = S.format
    closed = closedness_predicates(R, d_max=d_max, cap=cap)
    resid = residual_analysis(R)
    defect = sl_defect(R, cap=cap)
    cond = conductor(R)
    rep = ExtensionReport(
        ambient=S.name,
        subring_size=R.size,
        ambient_size=S.size,
        local=is_local(R),
        SL=is_SL(R),
        seminormal=closed["seminormal"],
        t_closed=closed["t_closed"],
        u_closed=closed["u_closed"],
        co_integrally_closed=closed["co_integrally_closed"],
        infra_integral=resid["infra_integral"],
        i_extension=resid["i_extension"],
        conductor=[fmt(i) for i in cond.members],
        msupp=[[fmt(i) for i in R.to_ambient(M.array)] for M in msupp(R)],
        sl_defect=defect.index,
        invertible_modules=None if defect.modules is None else len(defect.modules),
        residual_fibers=[
            {
                "maximal_of_S": f["N"].format(),
                "residue_R": f["residue_R"],
                "residue_S": f["residue_S"],
            }
            for f in resid["fibers"]
        ],
        witnesses={
            k: {kk: fmt(vv) if kk != "degree" else vv for kk, vv in v.items()}
            for k, v in closed["witnesses"].items()
        },
    )
    _consistency(R, rep, defect)
    return rep


def _consistency(R, rep, defect):
    S = R.ambient
    if not defect.consistent:
        raise InconsistentReport("unit index differs from the number of modules Ru", witness=defect.index)
    if rep.SL:
        if not rep.local:
            raise InconsistentReport("SL extension that is not local")
        if rep.sl_defect != 1:
            raise InconsistentReport("SL extension with nontrivial unit index")
        nil_r = set(R.to_ambient(nilradical(R).array).tolist())
        if nil_r != set(nilradical(S).members):
            raise InconsistentReport("SL extension with Nil(R) != Nil(S)")
        jr = set(R.to_ambient(jacobson(R).array).tolist())
        if not set(jacobson(S).members) <= jr:
            raise InconsistentReport("SL extension with J(S) not inside J(R)")


def same_idempotents(R):
    """Idempotents of R and of its ambient coincide."""
    e_r = set(R.to_ambient(np.array(idempotents(R)[0])).tolist())
    return e_r == set(idempotents(R.ambient)[0])


def restrict(R, T):
    """View ``R <= T`` (both subrings of one ambient) as a Subring of T."""
    if R.ambient is not T.ambient:
        raise ValueError("subrings of different ambients")
    if not T.mask[R.members].all():
        raise ValueError("R is not contained in T")
    return Subring(T, T.from_ambient(R.members), validate=False)


def check_morphism(f):
    """Re-run the exhaustive homomorphism check (bounded by the exhaustive cap)."""
    return check_homomorphism(f.source, f.target, f.map, cap=EXHAUSTIVE_CAP)


def crt_poly(base, residues, moduli, inv):
    """Chinese remaindering over a field: f = r_i mod m_i for pairwise coprime m_i."""
    total = [base.one]
    for m in moduli:
        total = pa.p_mul(base, total, m)
    f = []
    for r, m in zip(residues, moduli):
        rest, _ = pa.p_divmod(base, total, m)
        g, s, _ = pa.p_xgcd(base, rest, m, inv)
        if g != [base.one]:
            raise ValueError("moduli are not coprime")
        f = pa.p_add(base, f, pa.p_mul(base, pa.p_mul(base, r, s), rest))
    return pa.p_mod(base, f, total)

