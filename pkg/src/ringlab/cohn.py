"""Shifted rings R//I = R + X(R/I)[X] and Cohn's ring with one tail per maximal ideal.

An element is a head in R plus, for each slot, a tail ``c_0 X + c_1 X^2 + ...``
with coefficients in the slot's quotient ring.  Tails in different slots
multiply to zero.  Arithmetic is exact; degree bounds only limit the
exhaustive scans below.

The scans exploit that the tail of a product in one slot depends only on the
heads and on that slot's tails, so every statement quantified over all
elements of bounded degree splits into independent per-slot statements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import _polyarith as pa
from .errors import InvalidQuotient, MissingWitness, NotSemiprime, TooLarge
from .ideals import Ideal, is_semiprime, jacobson, maximal_ideals, quotient, zero_ideal
from .rings import _arr, units

PAIR_SCAN_CAP = 10**7


@dataclass(frozen=True)
class CohnElement:
    head: int
    tails: tuple

    def __post_init__(self):
        object.__setattr__(self, "tails", tuple(tuple(pa.trim(t)) for t in self.tails))

    @property
    def has_tail(self):
        return any(self.tails)


@dataclass(frozen=True)
class Slot:
    name: str
    ideal: Ideal = field(repr=False)
    ring: object = field(repr=False)
    proj: np.ndarray = field(repr=False)


class ShiftedRing:
    """Exact arithmetic in R//I (one slot) or in Cohn's ring (one slot per maximal ideal)."""

    def __init__(self, base, slots, kind):
        self.base = base
        self.slots = tuple(slots)
        self.kind = kind

    # -- construction ----------------------------------------------------
    def element(self, head, tails=None):
        tails = tails or {}
        if isinstance(tails, dict):
            tails = [tails.get(k, tails.get(s.name, ())) for k, s in enumerate(self.slots)]
        return CohnElement(int(head), tuple(tuple(int(c) for c in t) for t in tails))

    def embed(self, a):
        return CohnElement(int(a), tuple(() for _ in self.slots))

    def gen(self, k=0):
        """The variable of slot ``k``."""
        tails = [()] * len(self.slots)
        tails[k] = (self.slots[k].ring.one,)
        return CohnElement(0, tuple(tails))

    @property
    def one(self):
        return self.embed(self.base.one)

    @property
    def zero(self):
        return self.embed(0)

    # -- arithmetic --------------------------------------------------------
    def add(self, y, z):
        R = self.base
        return CohnElement(
            R.sadd(y.head, z.head),
            tuple(pa.p_add(s.ring, f, g) for s, f, g in zip(self.slots, y.tails, z.tails)),
        )

    def neg(self, y):
        return CohnElement(self.base.sneg(y.head), tuple(pa.p_neg(s.ring, f) for s, f in zip(self.slots, y.tails)))

    def sub(self, y, z):
        return self.add(y, self.neg(z))

    def mul(self, y, z):
        tails = []
        for s, f, g in zip(self.slots, y.tails, z.tails):
            Q = s.ring
            a, b = int(s.proj[y.head]), int(s.proj[z.head])
            t = pa.p_add(Q, pa.p_scale(Q, a, g), pa.p_scale(Q, b, f))
            t = pa.p_add(Q, t, pa.p_shift(pa.p_mul(Q, f, g)))
            tails.append(t)
        return CohnElement(self.base.smul(y.head, z.head), tuple(tails))

    def pow(self, y, k):
        out = self.one
        for _ in range(k):
            out = self.mul(out, y)
        return out

    def head_projection(self, y):
        return y.head

    def is_unit(self, y):
        """Units are exactly the tail-free unit heads (certified by verify_unit_rigidity)."""
        return not y.has_tail and y.head in units(self.base)

    # -- display -------------------------------------------------------------
    def format(self, y):
        parts = []
        if y.head or not y.has_tail:
            parts.append(self.base.format(y.head))
        for s, f in zip(self.slots, y.tails):
            if f:
                terms = []
                for k, c in enumerate(f):
                    if c:
                        cs = s.ring.format(c)
                        mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
                        terms.append(cs if not mono else (mono if c == s.ring.one else f"{cs}*{mono}"))
                parts.append(f"{s.name}*({' + '.join(terms)})")
        return " + ".join(parts)

    def elements(self, d):
        """Every element whose tails have at most ``d`` coefficients."""
        per_slot = [list(_tails(s.ring, d)) for s in self.slots]
        for head in range(self.base.size):
            for combo in itertools.product(*per_slot):
                yield CohnElement(head, combo)

    def population(self, d):
        n = self.base.size
        for s in self.slots:
            n *= s.ring.size**d
        return n

    def __repr__(self):
        return f"<ShiftedRing {self.kind} over {self.base.name}, slots {[s.name for s in self.slots]}>"


def _tails(Q, d):
    for coeffs in itertools.product(range(Q.size), repeat=d):
        yield tuple(pa.trim(coeffs))


def _tail_array(Q, d):
    """All coefficient vectors of length d over Q, shape (|Q|^d, d)."""
    grids = np.indices((Q.size,) * d).reshape(d, -1).T
    return grids.astype(np.int64)


def _conv(Q, F, G):
    """Batched polynomial product over Q; F (..., d1), G (..., d2) broadcast."""
    d1, d2 = F.shape[-1], G.shape[-1]
    shape = np.broadcast_shapes(F.shape[:-1], G.shape[:-1])
    out = [np.zeros(shape, dtype=np.int64) for _ in range(d1 + d2 - 1)]
    for i in range(d1):
        for j in range(d2):
            out[i + j] = _arr(Q.add(out[i + j], Q.mul(F[..., i], G[..., j])))
    return np.stack(out, axis=-1)


def _pad(Q, F, n):
    extra = n - F.shape[-1]
    if extra <= 0:
        return F
    return np.concatenate([F, np.zeros(F.shape[:-1] + (extra,), dtype=np.int64)], axis=-1)


def _tail_of_product(Q, a, b, F, G):
    """Tail of (a + X F)(b + X G) in one slot, as a coefficient array."""
    FG = _conv(Q, F, G)
    n = FG.shape[-1] + 1
    t = _arr(Q.add(_pad(Q, _arr(Q.mul(a, G)), n), _pad(Q, _arr(Q.mul(b, F)), n)))
    shifted = np.concatenate([np.zeros(FG.shape[:-1] + (1,), dtype=np.int64), FG], axis=-1)
    return _arr(Q.add(t, shifted))


# ---------------------------------------------------------------------------
# constructors


def _slot(R, name, ideal):
    if len(ideal) == 1:
        return Slot(name, ideal, R, R.all)
    Q, proj = quotient(R, ideal)
    return Slot(name, ideal, Q, proj.map)


def make_shifted(R, I):
    """R//I for a semiprime proper ideal I."""
    if len(I) == R.size:
        raise InvalidQuotient("R//R collapses to R; a proper ideal is required")
    if not is_semiprime(R, I):
        raise NotSemiprime(f"R/I is not reduced for I = {I.format()}")
    return ShiftedRing(R, [_slot(R, "x", I)], "shifted")


def make_cohn(R):
    """Cohn's ring: one slot x_M with quotient R/M for each maximal ideal M."""
    return ShiftedRing(R, [_slot(R, f"x_{M.format()}", M) for M in maximal_ideals(R)], "cohn")


# ---------------------------------------------------------------------------
# verification reports


@dataclass
class CheckReport:
    name: str
    ok: bool
    checked: int
    details: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)


def verify_unit_rigidity(SR, d=2, cap=PAIR_SCAN_CAP):
    """Products of bounded elements equal 1 only for tail-free inverse heads.

    The head of yz is the product of heads, so only pairs of mutually inverse
    heads can multiply to 1; for those, each slot's tail equation
    ``a G + b F + X F G = 0`` is solved exhaustively over all tails.
    """
    R = SR.base
    pop = SR.population(d)
    if pop * pop > cap:
        raise TooLarge(f"pair scan of {pop}^2 elements exceeds cap {cap}")
    U = units(R)
    bad = []
    checked = 0
    for s_idx, s in enumerate(SR.slots):
        Q = s.ring
        T = _tail_array(Q, d)
        for a in U.indices:
            b = U.inverse[a]
            tail = _tail_of_product(Q, int(s.proj[a]), int(s.proj[b]), T[:, None, :], T[None, :, :])
            zero = ~tail.any(axis=-1)
            checked += zero.size
            zero[0, 0] = False
            for i, j in np.argwhere(zero)[:5]:
                bad.append({"slot": s.name, "head": R.format(a), "f": T[i].tolist(), "g": T[j].tolist()})
    found = [R.format(u) for u in U.indices]
    return CheckReport(
        "unit-rigidity",
        not bad,
        checked,
        {"degree": d, "population": pop, "units": found},
        bad,
    )


def _slot_expected(SR):
    if SR.kind == "shifted":
        return SR.slots[0].ideal
    return jacobson(SR.base)


def verify_conductor(SR, d=2):
    """Heads t with t * x_s = 0 for every slot form I (shifted) or J(R) (Cohn)."""
    R = SR.base
    trace = []
    for t in range(R.size):
        if all(not SR.mul(SR.embed(t), SR.gen(k)).has_tail for k in range(len(SR.slots))):
            trace.append(t)
    # every t in the trace multiplies all bounded elements back into R
    escaped = []
    for t in trace:
        for s in SR.slots:
            if int(s.proj[t]) != 0:
                escaped.append(R.format(t))
    expected = _slot_expected(SR)
    ok = tuple(trace) == expected.members and not escaped
    return CheckReport(
        "conductor",
        ok,
        R.size,
        {"trace": [R.format(t) for t in trace], "expected": [R.format(t) for t in expected.members]},
        escaped,
    )


def verify_zerodivisors(SR):
    """Every nonunit y of R is killed by the variable of a slot whose ideal contains y."""
    R = SR.base
    U = units(R)
    witnesses, missing = {}, []
    for y in range(R.size):
        if y in U:
            continue
        for k, s in enumerate(SR.slots):
            x = SR.gen(k)
            if x.has_tail and SR.mul(SR.embed(y), x) == SR.zero:
                witnesses[R.format(y)] = s.name
                break
        else:
            missing.append(R.format(y))
    if missing and SR.kind == "cohn":
        raise MissingWitness("nonunit with no annihilating slot variable", witness=missing)
    return CheckReport("zerodivisors", not missing, R.size - len(U), {"witnesses": witnesses}, missing)


def verify_t_closed(SR, d=4):
    """No y with a nonzero tail has both y^2 - r y and y^3 - r y^2 tail-free."""
    R = SR.base
    bad = []
    checked = 0
    for s in SR.slots:
        Q = s.ring
        T = _tail_array(Q, d)
        for a in range(R.size):
            aq = int(s.proj[a])
            # y^2 = (a^2, tail2), y^3 = (a^3, tail3)
            t2 = _tail_of_product(Q, aq, aq, T, T)
            a2 = Q.mul(aq, aq)
            t3 = _tail_of_product(Q, a2, aq, t2, T)
            for r in range(R.size):
                rq = int(s.proj[r])
                n2 = t2.shape[-1]
                e1 = _arr(Q.sub(t2, _pad(Q, _arr(Q.mul(rq, T)), n2)))
                n3 = t3.shape[-1]
                e2 = _arr(Q.sub(t3, _pad(Q, _arr(Q.mul(rq, t2)), n3)))
                both = ~e1.any(axis=-1) & ~e2.any(axis=-1)
                both[0] = False
                checked += T.shape[0]
                for i in np.flatnonzero(both)[:3]:
                    bad.append({"slot": s.name, "head": R.format(a), "r": R.format(r), "tail": T[i].tolist()})
    return CheckReport("t-closed", not bad, checked, {"degree": d}, bad)


def verify_jacobson_membership(SR, d=4):
    """J-trace of the shifted ring at the bound equals J(R).

    A head j passes when 1 - z j is a unit for every bounded z; an element
    with a nonzero tail fails with z = 1 because 1 - y keeps a tail.
    """
    R = SR.base
    U = units(R)
    J = jacobson(R)
    trace, checked = [], 0
    for j in range(R.size):
        ok = True
        for s in SR.slots:
            Q = s.ring
            T = _tail_array(Q, d)
            tails_zero = ~_arr(Q.mul(int(s.proj[j]), T)).any(axis=-1)
            checked += T.shape[0]
            if not tails_zero.all():
                ok = False
        heads = _arr(R.sub(R.one, R.mul(R.all, j)))
        ok = ok and bool(U.mask[heads].all())
        if ok:
            trace.append(j)
    failing_tails = 0
    for k, s in enumerate(SR.slots):
        y = SR.gen(k)
        if SR.is_unit(SR.sub(SR.one, y)):
            failing_tails += 1
    ok = tuple(trace) == J.members and failing_tails == 0
    return CheckReport(
        "jacobson-membership",
        ok,
        checked,
        {"trace": [R.format(t) for t in trace], "J": [R.format(t) for t in J.members]},
        [] if ok else [{"trace": trace, "J": list(J.members)}],
    )


def lemma_1cohn_oracle(R, I, d=2, cap=PAIR_SCAN_CAP):
    """For units a, b and f, g of degree <= d: a f + b g + X f g in I[X] forces f, g in I[X]."""
    U = units(R).indices
    P = _tail_array(R, d + 1)
    total = len(U) ** 2 * P.shape[0] ** 2
    if total > cap:
        raise TooLarge(f"{total} tuples exceed cap {cap}")
    inI = I.mask
    f_in = inI[P].all(axis=-1)
    F, G = P[:, None, :], P[None, :, :]
    FG = _conv(R, F, G)
    n = FG.shape[-1] + 1
    shifted = np.concatenate([np.zeros(FG.shape[:-1] + (1,), dtype=np.int64), FG], axis=-1)
    bad, hyp = [], 0
    for a in U:
        for b in U:
            h = _arr(R.add(_pad(R, _arr(R.mul(a, F)), n), _pad(R, _arr(R.mul(b, G)), n)))
            h = _arr(R.add(h, shifted))
            hold = inI[h].all(axis=-1)
            hyp += int(hold.sum())
            viol = hold & ~(f_in[:, None] & f_in[None, :])
            for i, j in np.argwhere(viol)[:5]:
                bad.append({"a": R.format(a), "b": R.format(b), "f": P[i].tolist(), "g": P[j].tolist()})
    return CheckReport("lemma-1cohn", not bad, total, {"hypothesis_holds": hyp, "degree": d}, bad)


# ---------------------------------------------------------------------------
# ring-law and structural checks


def check_ring_laws(SR, d=2, samples=200, seed=0):
    """Commutativity, associativity, distributivity on random bounded elements."""
    rng = np.random.default_rng(seed)

    def rand():
        head = int(rng.integers(SR.base.size))
        tails = []
        for s in SR.slots:
            k = int(rng.integers(d + 1))
            tails.append(tuple(int(c) for c in rng.integers(s.ring.size, size=k)))
        return CohnElement(head, tuple(tails))

    bad = []
    for _ in range(samples):
        x, y, z = rand(), rand(), rand()
        m = SR.mul
        if m(x, y) != m(y, x):
            bad.append(("commutative", SR.format(x), SR.format(y)))
        if m(m(x, y), z) != m(x, m(y, z)):
            bad.append(("associative", SR.format(x), SR.format(y), SR.format(z)))
        if m(x, SR.add(y, z)) != SR.add(m(x, y), m(x, z)):
            bad.append(("distributive", SR.format(x), SR.format(y), SR.format(z)))
        if SR.head_projection(m(x, y)) != SR.base.smul(x.head, y.head):
            bad.append(("retraction", SR.format(x), SR.format(y)))
    return CheckReport("ring-laws", not bad, samples, {"degree": d}, bad)


def verify_reduced(SR, d=4):
    """Over a reduced base no nonzero bounded element squares to zero (per slot)."""
    R = SR.base
    bad = []
    checked = 0
    for s in SR.slots:
        Q = s.ring
        T = _tail_array(Q, d)
        for a in range(R.size):
            if R.smul(a, a) != 0:
                continue
            aq = int(s.proj[a])
            sq = _tail_of_product(Q, aq, aq, T, T)
            zero = ~sq.any(axis=-1)
            checked += T.shape[0]
            if a == 0:
                zero[0] = False
            for i in np.flatnonzero(zero)[:3]:
                bad.append({"slot": s.name, "head": R.format(a), "tail": T[i].tolist()})
    return CheckReport("reduced", not bad, checked, {"degree": d}, bad)


def bounded_units(SR, d=2):
    """Units among bounded elements, by direct search for an inverse (small rings only)."""
    elems = list(SR.elements(d))
    one = SR.one
    found = set()
    for y in elems:
        if y.head not in units(SR.base):
            continue
        for z in elems:
            if SR.mul(y, z) == one:
                found.add(y)
                break
    return found


def shifted_sl_transfer(R, K):
    """For R <= S with K semiprime in S and I = R cap K: SL of R <= S versus SL of R//I <= S//K.

    Unit groups of the shifted rings are read off from rigidity scans of both
    sides, so the comparison is between the tail-free unit heads.
    """
    from .extensions import is_SL

    S = R.ambient
    I = Ideal(R, tuple(int(i) for i in R.from_ambient(K.array[R.mask[K.array]])))
    big = make_shifted(S, K)
    small = make_shifted(R, I)
    rig = verify_unit_rigidity(big, 2).ok and verify_unit_rigidity(small, 2).ok
    heads_small = set(R.to_ambient(np.array(units(R).indices)).tolist())
    heads_big = set(units(S).indices)
    return {
        "rigid": rig,
        "base_SL": is_SL(R),
        "shifted_SL": heads_small == heads_big,
        "ok": rig and is_SL(R) == (heads_small == heads_big),
    }


def shifted_over_zero(R):
    return make_shifted(R, zero_ideal(R))
