"""The lattice [R, S] of intermediate rings and closure operators on it."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ConductorNotMaximal, NonUniqueMaximal, TooLarge
from .extensions import (
    closedness_predicates,
    conductor,
    conductor_in,
    contraction,
    is_SL,
    msupp,
    residual_analysis,
    restrict,
)
from .ideals import maximal_ideals, quotient
from .rings import Subring, _arr, closure, prime_subring, subring_generated, units

LATTICE_CAP = 64


def _sub(S, members):
    return Subring(S, members, validate=False)


def _mask(S, members):
    m = np.zeros(S.size, dtype=bool)
    m[members] = True
    return m


@dataclass
class SubringLattice:
    ambient: object = field(repr=False)
    base: object = field(repr=False)
    members: list = field(repr=False)

    def __len__(self):
        return len(self.members)

    @cached_property
    def masks(self):
        return np.array([m.mask for m in self.members])

    @cached_property
    def leq(self):
        """leq[i, j] is True when member i is contained in member j."""
        M = self.masks.astype(np.int64)
        inter = M @ M.T
        sizes = M.sum(axis=1)
        return inter == sizes[:, None]

    @cached_property
    def covers(self):
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        out = []
        for i, j in zip(*np.nonzero(lt)):
            between = lt[i] & lt[:, j]
            if not between.any():
                out.append((int(i), int(j)))
        return out

    @cached_property
    def _keys(self):
        return {m.members.tobytes(): k for k, m in enumerate(self.members)}

    def index_of(self, members):
        members = np.unique(_arr(members))
        return self._keys[members.tobytes()]

    @property
    def bottom(self):
        return self.members[0]

    @property
    def top(self):
        return self.members[-1]

    def meet(self, i, j):
        return self.index_of(np.flatnonzero(self.masks[i] & self.masks[j]))

    def join(self, i, j):
        S = self.ambient
        return self.index_of(closure(S, np.flatnonzero(self.masks[i] | self.masks[j])))

    def to_dict(self):
        S = self.ambient
        return {
            "members": [
                {"id": k, "size": m.size, "elements": [S.format(x) for x in m.members]}
                for k, m in enumerate(self.members)
            ],
            "covers": [list(c) for c in self.covers],
        }


def intermediate_rings(R, cap=LATTICE_CAP):
    """Every ring between R and its ambient S, by closure from single-element seeds."""
    S = R.ambient
    if S.size > cap:
        raise TooLarge(f"lattice enumeration of a {S.size}-element ring exceeds cap {cap}")
    found = {R.members.tobytes(): R.members}
    queue = [R.members]
    while queue:
        T = queue.pop()
        have = _mask(S, T)
        for s in np.flatnonzero(~have):
            V = closure(S, np.append(T, s))
            key = V.tobytes()
            if key not in found:
                found[key] = V
                queue.append(V)
    members = sorted(found.values(), key=lambda m: (m.size, tuple(m.tolist())))
    return SubringLattice(S, R, [_sub(S, m) for m in members])


# ---------------------------------------------------------------------------
# closures


def _fixpoint(R, condition):
    S = R.ambient
    T = R.members
    while True:
        have = _mask(S, T)
        out = np.flatnonzero(~have)
        if out.size == 0:
            break
        new = out[condition(S, have, T, out)]
        if new.size == 0:
            break
        T = closure(S, np.concatenate([T, new]))
    return _sub(S, T)


def _seminormal_cond(S, have, T, b):
    b2 = _arr(S.mul(b, b))
    return have[b2] & have[_arr(S.mul(b2, b))]


def _t_cond(S, have, T, b):
    b2 = _arr(S.mul(b, b))
    b3 = _arr(S.mul(b2, b))
    c1 = have[_arr(S.sub(b2[:, None], S.mul(T[None, :], b[:, None])))]
    c2 = have[_arr(S.sub(b3[:, None], S.mul(T[None, :], b2[:, None])))]
    return (c1 & c2).any(axis=1)


def _u_cond(S, have, T, b):
    b2 = _arr(S.mul(b, b))
    b3 = _arr(S.mul(b2, b))
    return have[_arr(S.sub(b2, b))] & have[_arr(S.sub(b3, b2))]


def seminormalization(R):
    """Smallest T in [R,S] with T <= S seminormal."""
    return _fixpoint(R, _seminormal_cond)


def t_closure(R):
    return _fixpoint(R, _t_cond)


def u_closure(R):
    return _fixpoint(R, _u_cond)


def sl_bottom(R):
    """The ring generated by R and the units of S."""
    S = R.ambient
    return _sub(S, closure(S, np.concatenate([R.members, np.array(units(S).indices)])))


# ---------------------------------------------------------------------------
# greatest SL subextension


def ring_product(S, A, B):
    """The product ring AB: additive span of all products ab."""
    span = np.unique(_arr(S.mul(A[:, None], B[None, :])))
    while True:
        nxt = np.unique(_arr(S.add(span[:, None], span[None, :])))
        if nxt.size == span.size:
            return span
        span = nxt


def seminormal_infra_integral(ext):
    return bool(closedness_predicates(ext)["seminormal"]) and residual_analysis(ext)["infra_integral"]


def sl_criterion(ext):
    """Seminormal, infra-integral, and every supporting maximal ideal has residue field F2."""
    return seminormal_infra_integral(ext) and all(M.residue_size == 2 for M in msupp(ext))


@dataclass
class FamilyTop:
    top: int
    members: list
    product_ok: bool
    sup_ok: bool
    union_ok: bool

    @property
    def ok(self):
        return self.product_ok and self.sup_ok and self.union_ok


@dataclass
class MSLResult:
    top: object
    sl: FamilyTop
    criterion_family: FamilyTop
    criterion_matches: bool
    seminormal_family: FamilyTop

    @property
    def ok(self):
        return self.sl.ok and self.criterion_family.ok and self.criterion_matches and self.seminormal_family.ok


def _family_top(lat, family, label):
    S = lat.ambient
    leq = lat.leq
    maxima = [i for i in family if not any(leq[i, j] and i != j for j in family)]
    if len(maxima) != 1:
        raise NonUniqueMaximal(
            f"{label}: {len(maxima)} maximal members",
            witness=[[S.format(x) for x in lat.members[i].members] for i in maxima],
        )
    top = maxima[0]
    prod = lat.members[family[0]].members
    for i in family[1:]:
        prod = ring_product(S, prod, lat.members[i].members)
    union = np.unique(np.concatenate([lat.members[i].members for i in family]))
    uppers = [j for j in range(len(lat)) if all(leq[i, j] for i in family)]
    sup = min(uppers, key=lambda j: lat.members[j].size)
    sup_unique = all(leq[sup, j] for j in uppers)
    top_members = lat.members[top].members
    return FamilyTop(
        top,
        list(family),
        np.array_equal(prod, top_members),
        sup_unique and sup == top,
        np.array_equal(union, top_members),
    )


def msl_subextension(R, lattice=None):
    """Greatest T in [R,S] with R <= T strongly local, with its characterisations.

    Raises NonUniqueMaximal if the SL members do not have a unique maximum.
    """
    lat = lattice or intermediate_rings(R)
    views = [restrict(R, V) for V in lat.members]
    sl = [k for k, v in enumerate(views) if is_SL(v)]
    sn = [k for k, v in enumerate(views) if seminormal_infra_integral(v)]
    crit = [k for k in sn if all(M.residue_size == 2 for M in msupp(views[k]))]
    sl_top = _family_top(lat, sl, "SL family")
    return MSLResult(
        top=lat.members[sl_top.top],
        sl=sl_top,
        criterion_family=_family_top(lat, crit, "criterion family"),
        criterion_matches=crit == sl,
        seminormal_family=_family_top(lat, sn, "seminormal infra-integral family"),
    )


# ---------------------------------------------------------------------------
# minimal steps and Boolean lattices


def classify_minimal(T, V):
    """Type of a minimal extension T < V (subrings of one ambient)."""
    ext = restrict(T, V)
    M = conductor_in(ext, conductor(ext))
    if M not in maximal_ideals(ext):
        raise ConductorNotMaximal("conductor of a minimal step is not maximal", witness=list(M.members))
    over = [N for N in maximal_ideals(V) if contraction(ext, N) == M]
    k = M.residue_size
    if len(over) == 2 and all(N.residue_size == k for N in over):
        return "decomposed"
    if len(over) == 1 and over[0].residue_size > k:
        return "inert"
    return "ramified"


def is_boolean_lattice(R, lattice=None):
    lat = lattice or intermediate_rings(R)
    n = len(lat)
    meet = np.array([[lat.meet(i, j) for j in range(n)] for i in range(n)])
    join = np.array([[lat.join(i, j) for j in range(n)] for i in range(n)])
    bot, top = 0, n - 1
    for a in range(n):
        if not ((meet[a] == bot) & (join[a] == top)).any():
            return False
    lhs = meet[np.arange(n)[:, None, None], join[None, :, :]]
    rhs = join[meet[:, :, None], meet[:, None, :]]
    return bool((lhs == rhs).all())


def fibers_over_support(R):
    """For each M in MSupp(S/R), the number of maximal ideals of S over M."""
    S = R.ambient
    return [sum(1 for N in maximal_ideals(S) if contraction(R, N) == M) for M in msupp(R)]


def unit_generated_check(R):
    """(F[U(R)], is it SL in R, does it equal R) where F is the prime subring."""
    F = prime_subring(R)
    T = subring_generated(R, list(F.members) + list(units(R).indices))
    return T, is_SL(T), T.size == R.size


def conductor_quotient_is_boolean(ext):
    """T/(R:T) is a product of copies of F2 (``ext`` is R as a subring of T)."""
    T = ext.ambient
    cond = conductor(ext)
    q = T.size // len(cond)
    if q & (q - 1):
        return False
    if len(cond) == T.size:
        return True
    Q, _ = quotient(T, cond)
    return bool((_arr(Q.mul(Q.all, Q.all)) == Q.all).all())

