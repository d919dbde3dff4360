"""Ideals and the structure theory of a finite commutative ring."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InvalidQuotient, TooLarge
from .morphism import RingMorphism
from .rings import _CHUNK, DEFAULT_CAP, Element, QuotientRing, _arr, _check_ideal, units

DEFINITION_CAP = 512


@dataclass(frozen=True, eq=False)
class Ideal:
    ring: object = field(repr=False)
    members: tuple
    generators: tuple | None = None

    @cached_property
    def mask(self):
        m = np.zeros(self.ring.size, dtype=bool)
        m[list(self.members)] = True
        return m

    @cached_property
    def array(self):
        return np.array(self.members, dtype=np.int64)

    def __contains__(self, x):
        x = x.index if isinstance(x, Element) else int(x)
        return bool(self.mask[x])

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other):
        return isinstance(other, Ideal) and other.ring is self.ring and other.members == self.members

    def __hash__(self):
        return hash((id(self.ring), self.members))

    def __le__(self, other):
        return bool(other.mask[self.array].all())

    @property
    def is_proper(self):
        return len(self.members) < self.ring.size

    @property
    def residue_size(self):
        return self.ring.size // len(self.members)

    def __and__(self, other):
        return Ideal(self.ring, tuple(int(i) for i in np.flatnonzero(self.mask & other.mask)))

    def format(self):
        gens = self.generators
        if gens is None:
            from .rings import _ideal_generators

            gens = _ideal_generators(self.ring, self.array)
        return "(" + ", ".join(self.ring.format(g) for g in gens) + ")"

    def __repr__(self):
        return f"Ideal{self.format()} of {self.ring.name}"


def _as_index(R, x):
    return x.index if isinstance(x, Element) else int(x)


def make_ideal(R, members):
    """Validate an explicit member set as an ideal.

    Ideal objects are trusted elsewhere, so raw member sets go through here.
    """
    return Ideal(R, tuple(int(i) for i in _check_ideal(R, members)))


def ideal_generated(R, gens=()):
    gens = tuple(_as_index(R, g) for g in gens)
    cur = np.array([0], dtype=np.int64)
    for g in gens:
        principal = np.unique(_arr(R.mul(g, R.all)))
        cur = np.unique(_arr(R.add(cur[:, None], principal[None, :])))
    return Ideal(R, tuple(int(i) for i in cur), gens)


def all_ideals(R, cap=DEFAULT_CAP):
    """Every ideal of R, as sums of principal ideals; sorted by (size, members)."""
    if R.size > cap:
        raise TooLarge("ideal enumeration exceeds cap")
    principal = {}
    for g in range(R.size):
        p = np.unique(_arr(R.mul(g, R.all)))
        principal.setdefault(p.tobytes(), p)
    principal = list(principal.values())
    found = {np.array([0], dtype=np.int64).tobytes(): np.array([0], dtype=np.int64)}
    queue = list(found.values())
    while queue:
        cur = queue.pop()
        for p in principal:
            nxt = np.unique(_arr(R.add(cur[:, None], p[None, :])))
            key = nxt.tobytes()
            if key not in found:
                found[key] = nxt
                queue.append(nxt)
    out = sorted(found.values(), key=lambda m: (m.size, tuple(m.tolist())))
    return [Ideal(R, tuple(int(i) for i in m)) for m in out]


def unit_ideal(R):
    return Ideal(R, tuple(range(R.size)), (R.one,))


def zero_ideal(R):
    return Ideal(R, (0,), ())


def nilpotent_mask(R):
    y = R.all
    k = 1
    while k < R.size:
        y = _arr(R.mul(y, y))
        k *= 2
    return y == 0


def nilradical(R, cap=DEFAULT_CAP):
    if R.size > cap:
        raise TooLarge("nilradical scan exceeds cap")
    cache = R.__dict__.setdefault("_ideal_cache", {})
    if "nil" not in cache:
        cache["nil"] = Ideal(R, tuple(int(i) for i in np.flatnonzero(nilpotent_mask(R))))
    return cache["nil"]


def _jacobson_definition(R):
    umask = units(R).mask
    out = []
    step = max(1, _CHUNK // R.size)
    for start in range(0, R.size, step):
        xs = R.all[start : start + step]
        vals = _arr(R.sub(R.one, R.mul(xs[:, None], R.all[None, :])))
        ok = umask[vals].all(axis=1)
        out.extend(int(x) for x in xs[ok])
    return Ideal(R, tuple(out))


def jacobson(R, method="auto", cap=DEFAULT_CAP):
    """J(R).  ``definition`` scans ``1 - ax`` over all ``a``; ``nil`` uses J = Nil,
    valid for finite rings; ``auto`` picks the scan for small rings."""
    if R.size > cap:
        raise TooLarge("Jacobson radical scan exceeds cap")
    if method == "auto":
        method = "definition" if R.size <= DEFINITION_CAP else "nil"
    if method == "nil":
        return nilradical(R, cap)
    if method != "definition":
        raise ValueError(f"unknown method {method!r}")
    cache = R.__dict__.setdefault("_ideal_cache", {})
    if "jac" not in cache:
        cache["jac"] = _jacobson_definition(R)
    return cache["jac"]


def idempotents(R, cap=DEFAULT_CAP):
    """(all idempotents, primitive idempotents) as sorted index tuples."""
    if R.size > cap:
        raise TooLarge("idempotent scan exceeds cap")
    E = np.flatnonzero(_arr(R.mul(R.all, R.all)) == R.all)
    nz = E[E != 0]
    below = _arr(R.mul(nz[:, None], nz[None, :])) == nz[None, :]
    primitive = nz[below.sum(axis=1) == 1]
    return tuple(int(e) for e in E), tuple(int(e) for e in primitive)


def quotient(R, I):
    """(R/I, projection).  Raises InvalidQuotient for I = R."""
    trusted = isinstance(I, Ideal)
    members = I.members if trusted else I
    if len(members) >= R.size:
        raise InvalidQuotient("cannot take the quotient by the whole ring")
    Q = QuotientRing(R, members, validate=not trusted)
    return Q, RingMorphism(R, Q, Q.label, validate=False)


def maximal_ideals(R, cap=DEFAULT_CAP):
    """Max(R) via the field factors of R/J(R), sorted by member tuple."""
    cache = R.__dict__.setdefault("_ideal_cache", {})
    if "max" in cache:
        return cache["max"]
    J = jacobson(R, cap=cap)
    if len(J) == 1:
        Q, proj = R, R.all
    else:
        Q, p = quotient(R, J)
        proj = p.map
    _, prim = idempotents(Q)
    out = []
    for e in prim:
        killed = _arr(Q.mul(proj, e)) == 0
        out.append(Ideal(R, tuple(int(i) for i in np.flatnonzero(killed))))
    out.sort(key=lambda M: M.members)
    cache["max"] = out
    return out


def is_local(R):
    return len(maximal_ideals(R)) == 1


def is_reduced(R):
    return len(nilradical(R)) == 1


def is_semiprime(R, I):
    """R/I reduced, i.e. x^2 in I implies x in I."""
    mask = I.mask if isinstance(I, Ideal) else _mask(R, I)
    sq = _arr(R.mul(R.all, R.all))
    return not (mask[sq] & ~mask).any()


def _mask(R, members):
    m = np.zeros(R.size, dtype=bool)
    m[list(members)] = True
    return m


@dataclass(frozen=True)
class LocalFactor:
    idempotent: int
    ring: object = field(repr=False)
    projection: RingMorphism = field(repr=False)
    maximal: Ideal = field(repr=False)
    ambient_maximal: Ideal = field(repr=False)


@dataclass(frozen=True)
class LocalDecomposition:
    ring: object = field(repr=False)
    factors: tuple

    def __len__(self):
        return len(self.factors)


def local_factors(R, cap=DEFAULT_CAP):
    """Split R along its primitive idempotents; factor ``e`` is R/(1-e)R ~ Re.

    Each entry records the local factor, its maximal ideal, and the maximal
    ideal of R it corresponds to (the one not containing ``e``).
    """
    cache = R.__dict__.setdefault("_ideal_cache", {})
    if "local" in cache:
        return cache["local"]
    _, prim = idempotents(R, cap)
    maxes = maximal_ideals(R, cap)
    factors = []
    for e in prim:
        amb = next(M for M in maxes if e not in M)
        comp = R.sub(R.one, e)
        if comp == 0:
            Q, proj = R, RingMorphism(R, R, R.all, validate=False)
        else:
            Q, proj = quotient(R, ideal_generated(R, [comp]))
        local_max = Ideal(Q, tuple(int(i) for i in np.unique(proj.map[amb.array])))
        factors.append(LocalFactor(e, Q, proj, local_max, amb))
    dec = LocalDecomposition(R, tuple(factors))
    cache["local"] = dec
    return dec


def j_regular_witness(R, cap=DEFAULT_CAP):
    """For each x, the least y with xy in J(R) and x + y a unit.

    Always succeeds for finite rings; returns (True, witness map) or
    (False, {x: None}) for the first x that has no witness.
    """
    if R.size > cap:
        raise TooLarge("J-regularity scan exceeds cap")
    jm = jacobson(R, cap=cap).mask
    um = units(R).mask
    witness = {}
    step = max(1, _CHUNK // R.size)
    for start in range(0, R.size, step):
        xs = R.all[start : start + step, None]
        ok = jm[_arr(R.mul(xs, R.all[None, :]))] & um[_arr(R.add(xs, R.all[None, :]))]
        for row, x in zip(ok, xs[:, 0]):
            if not row.any():
                return False, {int(x): None}
            witness[int(x)] = int(row.argmax())
    return True, witness
