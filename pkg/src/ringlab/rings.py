"""Finite commutative unital rings with exact, vectorised arithmetic.

Every ring numbers its elements ``0 .. size-1`` in lexicographic order of
their coordinate vectors, so index 0 is always the zero element.  Binary
operations accept integers or integer numpy arrays (broadcasting like numpy)
and return the same shape.  Small rings get full Cayley tables; larger ones
compute through their coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _polyarith as pa
from .errors import InvalidIdeal, InvalidQuotient, InvalidRing, TooLarge, UnsupportedModulus

DEFAULT_CAP = 2**16
TABLE_CAP = 512
_CHUNK = 1 << 20


def _arr(x):
    return np.asarray(x, dtype=np.int64)


def _ret(r):
    return int(r) if np.ndim(r) == 0 else r


class FiniteRing:
    """Base class; subclasses provide ``_add``, ``_mul``, ``_neg`` and a codec."""

    kind = "abstract"

    def __init__(self, size, one):
        if size < 2:
            raise InvalidRing("a ring needs at least two elements (0 != 1)")
        self.size = int(size)
        self.one = int(one)
        self.zero = 0

    # -- raw vectorised operations -------------------------------------
    def _add(self, a, b):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    @cached_property
    def _tables(self):
        if self.size > TABLE_CAP:
            return None
        a = np.arange(self.size, dtype=np.int64)[:, None]
        b = np.arange(self.size, dtype=np.int64)[None, :]
        a, b = np.broadcast_arrays(a, b)
        return self._add(a, b), self._mul(a, b), self._neg(a[:, 0])

    @property
    def all(self):
        return np.arange(self.size, dtype=np.int64)

    # -- public operations ----------------------------------------------
    def add(self, a, b):
        a, b = _arr(a), _arr(b)
        t = self._tables
        if t is not None:
            return _ret(t[0][a, b])
        a, b = np.broadcast_arrays(a, b)
        return _ret(self._add(a, b))

    def mul(self, a, b):
        a, b = _arr(a), _arr(b)
        t = self._tables
        if t is not None:
            return _ret(t[1][a, b])
        a, b = np.broadcast_arrays(a, b)
        return _ret(self._mul(a, b))

    def neg(self, a):
        a = _arr(a)
        t = self._tables
        if t is not None:
            return _ret(t[2][a])
        return _ret(self._neg(a))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, a, k):
        a = _arr(a)
        result = np.full(a.shape, self.one, dtype=np.int64)
        base = a
        while k:
            if k & 1:
                result = _arr(self.mul(result, base))
            k >>= 1
            if k:
                base = _arr(self.mul(base, base))
        return _ret(result)

    # scalar fast paths used by the pure-Python polynomial code
    @cached_property
    def sadd(self):
        t = self._tables
        if t is not None:
            rows = t[0].tolist()
            return lambda a, b: rows[a][b]
        return lambda a, b: int(self.add(a, b))

    @cached_property
    def smul(self):
        t = self._tables
        if t is not None:
            rows = t[1].tolist()
            return lambda a, b: rows[a][b]
        return lambda a, b: int(self.mul(a, b))

    @cached_property
    def sneg(self):
        t = self._tables
        if t is not None:
            col = t[2].tolist()
            return lambda a: col[a]
        return lambda a: int(self.neg(a))

    def ssub(self, a, b):
        return self.sadd(a, self.sneg(b))

    # -- codec ------------------------------------------------------------
    def coords(self, i):
        raise NotImplementedError

    def index(self, coords):
        raise NotImplementedError

    def format(self, i):
        return str(self.coords(i))

    def from_int(self, n):
        """Index of ``n * 1``."""
        n = int(n)
        acc, term = 0, self.one if n >= 0 else self.neg(self.one)
        n = abs(n)
        while n:
            if n & 1:
                acc = self.add(acc, term)
            term = self.add(term, term)
            n >>= 1
        return acc

    @cached_property
    def characteristic(self):
        k, x = 1, self.one
        while x != 0:
            x = self.add(x, self.one)
            k += 1
        return k

    def __getitem__(self, i):
        return Element(self, int(i))

    def __call__(self, value):
        """Coerce an int (as ``n*1``), literal string or Element into the ring."""
        if isinstance(value, Element):
            if value.ring is not self:
                raise ValueError("element belongs to a different ring")
            return value
        if isinstance(value, str):
            from .dsl import parse_element

            return Element(self, parse_element(self, value))
        return Element(self, self.from_int(value))

    def elements(self):
        return [Element(self, i) for i in range(self.size)]

    def _units_fast(self):
        """Return (mask, inverse) from structure, or None to force a scan."""
        return None

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} |{self.size}|>"

    @property
    def name(self):
        return self.kind


class Element:
    """An index into a ring's element order, with operator sugar."""

    __slots__ = ("ring", "index")

    def __init__(self, ring, index):
        self.ring = ring
        self.index = int(index)

    def _other(self, o):
        if isinstance(o, Element):
            if o.ring is not self.ring:
                raise ValueError("elements live in different rings")
            return o.index
        return self.ring.from_int(o)

    def __add__(self, o):
        return Element(self.ring, self.ring.add(self.index, self._other(o)))

    __radd__ = __add__

    def __mul__(self, o):
        return Element(self.ring, self.ring.mul(self.index, self._other(o)))

    __rmul__ = __mul__

    def __sub__(self, o):
        return Element(self.ring, self.ring.sub(self.index, self._other(o)))

    def __rsub__(self, o):
        return Element(self.ring, self.ring.sub(self._other(o), self.index))

    def __neg__(self):
        return Element(self.ring, self.ring.neg(self.index))

    def __pow__(self, k):
        return Element(self.ring, self.ring.pow(self.index, int(k)))

    def __eq__(self, o):
        if isinstance(o, Element):
            return o.ring is self.ring and o.index == self.index
        if isinstance(o, int):
            return self.index == self.ring.from_int(o)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ring), self.index))

    @property
    def coords(self):
        return self.ring.coords(self.index)

    def __repr__(self):
        return self.ring.format(self.index)


# ---------------------------------------------------------------------------
# concrete rings


class ZMod(FiniteRing):
    kind = "zmod"

    def __init__(self, n):
        n = int(n)
        if n < 2:
            raise InvalidRing(f"Z/{n} is not a nonzero ring")
        self.n = n
        super().__init__(n, 1)

    def _add(self, a, b):
        return (a + b) % self.n

    def _mul(self, a, b):
        return (a * b) % self.n

    def _neg(self, a):
        return (-a) % self.n

    def coords(self, i):
        return int(i)

    def index(self, coords):
        return int(coords) % self.n

    def format(self, i):
        return str(int(i))

    def from_int(self, n):
        return int(n) % self.n

    @property
    def name(self):
        return f"Z/{self.n}"

    def _units_fast(self):
        idx = np.arange(self.n)
        mask = np.gcd(idx, self.n) == 1
        inv = np.full(self.n, -1, dtype=np.int64)
        for i in np.flatnonzero(mask):
            inv[i] = pow(int(i), -1, self.n)
        return mask, inv


class PolyQuotient(FiniteRing):
    """``base[var] / (modulus)`` for a monic modulus; coords are coefficient vectors."""

    kind = "polyquot"

    def __init__(self, base, modulus, var="x", cap=DEFAULT_CAP):
        modulus = pa.trim([int(c) for c in modulus])
        if len(modulus) < 2:
            raise UnsupportedModulus("modulus must have degree >= 1")
        if modulus[-1] != base.one:
            raise UnsupportedModulus("modulus must be monic")
        d = len(modulus) - 1
        if base.size**d > cap:
            raise TooLarge(f"{base.size}^{d} elements exceed cap {cap}")
        self.base, self.modulus, self.var, self.degree = base, modulus, var, d
        self._pw = np.array([base.size ** (d - 1 - i) for i in range(d)], dtype=np.int64)
        super().__init__(base.size**d, 0)
        self.one = int(self.encode_coeffs([base.one] + [0] * (d - 1)))

    def decode(self, idx):
        idx = _arr(idx)
        return (idx[..., None] // self._pw) % self.base.size

    def encode_coeffs(self, coeffs):
        return _ret((_arr(coeffs) * self._pw).sum(-1))

    def _add(self, a, b):
        return self.encode_coeffs(_arr(self.base.add(self.decode(a), self.decode(b))))

    def _neg(self, a):
        return self.encode_coeffs(_arr(self.base.neg(self.decode(a))))

    def _mul(self, a, b):
        if self._rev is not None:
            return self._mul_bits(a, b)
        A, B = self.decode(a), self.decode(b)
        base, d = self.base, self.degree
        if isinstance(base, ZMod):
            return self.encode_coeffs(self._mul_int(A, B, base.n))
        conv = [np.zeros(A.shape[:-1], dtype=np.int64) for _ in range(2 * d - 1)]
        for i in range(d):
            for j in range(d):
                conv[i + j] = _arr(base.add(conv[i + j], base.mul(A[..., i], B[..., j])))
        m = self.modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = conv[k]
            for i in range(d):
                if m[i]:
                    conv[k - d + i] = _arr(base.sub(conv[k - d + i], base.mul(c, m[i])))
        return self.encode_coeffs(np.stack(conv[:d], axis=-1))

    @cached_property
    def _rev(self):
        # over Z/2 an index is the coefficient bit string, constant term first
        if not (isinstance(self.base, ZMod) and self.base.n == 2):
            return None
        d = self.degree
        idx = np.arange(self.size, dtype=np.int64)
        rev = np.zeros(self.size, dtype=np.int64)
        for i in range(d):
            rev |= ((idx >> (d - 1 - i)) & 1) << i
        return rev

    def _mul_bits(self, a, b):
        rev, d = self._rev, self.degree
        pa_, pb = rev[a], rev[b]
        out = np.zeros(np.broadcast_shapes(pa_.shape, pb.shape), dtype=np.int64)
        for i in range(d):
            out ^= ((pa_ >> i) & 1) * (pb << i)
        mod = sum(1 << k for k, c in enumerate(self.modulus) if c)
        for k in range(2 * d - 2, d - 1, -1):
            out ^= ((out >> k) & 1) * (mod << (k - d))
        return rev[out]

    def _mul_int(self, A, B, n):
        # plain integer convolution, reduced mod n as we go
        d = self.degree
        conv = np.zeros(np.broadcast_shapes(A.shape, B.shape)[:-1] + (2 * d - 1,), dtype=np.int64)
        for i in range(d):
            conv[..., i : i + d] += A[..., i : i + 1] * B
        conv %= n
        m = np.array(self.modulus[:d], dtype=np.int64)
        for k in range(2 * d - 2, d - 1, -1):
            c = conv[..., k : k + 1]
            conv[..., k - d : k] = (conv[..., k - d : k] - c * m) % n
        return conv[..., :d]

    def coeffs(self, i):
        return [int(c) for c in self.decode(i)]

    def coords(self, i):
        return tuple(self.base.coords(c) for c in self.coeffs(i))

    def index(self, coords):
        return self.encode_coeffs([self.base.index(c) for c in coords])

    def from_coeffs(self, coeffs):
        """Reduce an arbitrary-length coefficient list modulo the modulus."""
        r = pa.p_mod(self.base, pa.trim(coeffs), self.modulus)
        r = r + [0] * (self.degree - len(r))
        return int(self.encode_coeffs(r))

    def gen(self):
        return self.from_coeffs([0, self.base.one])

    def from_int(self, n):
        return int(self.encode_coeffs([self.base.from_int(n)] + [0] * (self.degree - 1)))

    def format(self, i):
        terms = []
        for k, c in enumerate(self.coeffs(i)):
            if c == 0:
                continue
            cs = self.base.format(c)
            if " " in cs and not cs.startswith("("):
                cs = f"({cs})"
            if k == 0:
                terms.append(cs)
            else:
                mono = self.var if k == 1 else f"{self.var}^{k}"
                terms.append(mono if c == self.base.one else f"{cs}*{mono}")
        return " + ".join(terms) if terms else "0"

    @property
    def name(self):
        return f"{self.base.name}[{self.var}]/({_poly_str(self.base, self.modulus, self.var)})"

    def _units_fast(self):
        if not is_field(self.base):
            return None
        # every unit satisfies u^K = 1 for K = lcm(q^j - 1, j <= d) * p^ceil(log_p d),
        # a multiple of the exponent of U; nonunits never power to 1
        q, p, d = self.base.size, self.base.characteristic, self.degree
        K = math.lcm(*(q**j - 1 for j in range(1, d + 1)))
        pk = 1
        while pk < d:
            pk *= p
        K *= pk
        inv = _arr(self.pow(self.all, K - 1))
        mask = _arr(self.mul(inv, self.all)) == self.one
        return mask, np.where(mask, inv, -1)


def _poly_str(base, coeffs, var):
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        cs = base.format(c)
        if k == 0:
            terms.append(cs)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if c == base.one else f"{cs}*{mono}")
    return "+".join(terms) if terms else "0"


class ProductRing(FiniteRing):
    kind = "product"

    def __init__(self, factors, cap=DEFAULT_CAP):
        factors = list(factors)
        if not factors:
            raise InvalidRing("a product needs at least one factor")
        size = math.prod(f.size for f in factors)
        if size > cap:
            raise TooLarge(f"product of size {size} exceeds cap {cap}")
        self.factors = factors
        self._sizes = [f.size for f in factors]
        self._strides = [math.prod(self._sizes[k + 1 :]) for k in range(len(factors))]
        super().__init__(size, 0)
        self.one = int(self.encode([f.one for f in factors]))

    def decode(self, idx):
        idx = _arr(idx)
        return [(idx // s) % n for s, n in zip(self._strides, self._sizes)]

    def encode(self, comps):
        return _ret(sum(_arr(c) * s for c, s in zip(comps, self._strides)))

    def _add(self, a, b):
        return self.encode([f.add(x, y) for f, x, y in zip(self.factors, self.decode(a), self.decode(b))])

    def _mul(self, a, b):
        return self.encode([f.mul(x, y) for f, x, y in zip(self.factors, self.decode(a), self.decode(b))])

    def _neg(self, a):
        return self.encode([f.neg(x) for f, x in zip(self.factors, self.decode(a))])

    def components(self, i):
        return [int(c) for c in self.decode(i)]

    def coords(self, i):
        return tuple(f.coords(c) for f, c in zip(self.factors, self.components(i)))

    def index(self, coords):
        return int(self.encode([f.index(c) for f, c in zip(self.factors, coords)]))

    def from_int(self, n):
        return int(self.encode([f.from_int(n) for f in self.factors]))

    def format(self, i):
        return "(" + ", ".join(f.format(c) for f, c in zip(self.factors, self.components(i))) + ")"

    @property
    def name(self):
        return " * ".join(_wrap(f) for f in self.factors)

    def _units_fast(self):
        parts = [units(f) for f in self.factors]
        comps = self.decode(self.all)
        mask = np.ones(self.size, dtype=bool)
        for p, c in zip(parts, comps):
            mask &= p.mask[c]
        invs = [p.inverse_array[c] for p, c in zip(parts, comps)]
        inv = np.where(mask, self.encode([np.maximum(v, 0) for v in invs]), -1)
        return mask, inv


def _wrap(ring):
    return f"({ring.name})" if isinstance(ring, (ProductRing, Idealization)) else ring.name


def _check_ideal(ring, members):
    members = np.unique(_arr(members))
    if members.size == 0 or members[0] != 0:
        raise InvalidIdeal("an ideal must contain 0")
    inside = np.zeros(ring.size, dtype=bool)
    inside[members] = True
    if not inside[_arr(ring.add(members[:, None], members[None, :]))].all():
        raise InvalidIdeal("not closed under addition")
    for start in range(0, ring.size, max(1, _CHUNK // members.size)):
        rows = ring.all[start : start + max(1, _CHUNK // members.size)]
        if not inside[_arr(ring.mul(rows[:, None], members[None, :]))].all():
            raise InvalidIdeal("not closed under multiplication by ring elements")
    return members


def _members_of(ideal):
    return getattr(ideal, "members", ideal)


class Idealization(FiniteRing):
    """Nagata idealization ``R (+) M`` with ``M`` an ideal of ``R``."""

    kind = "idealization"

    def __init__(self, base, ideal, cap=DEFAULT_CAP):
        members = _check_ideal(base, _members_of(ideal))
        if base.size * members.size > cap:
            raise TooLarge("idealization exceeds cap")
        self.base = base
        self.module = members
        self._m = members.size
        self._pos = np.full(base.size, -1, dtype=np.int64)
        self._pos[members] = np.arange(members.size)
        super().__init__(base.size * members.size, base.one * members.size)

    def decode(self, idx):
        idx = _arr(idx)
        return idx // self._m, self.module[idx % self._m]

    def encode(self, r, m):
        return _ret(_arr(r) * self._m + self._pos[_arr(m)])

    def _add(self, a, b):
        (r1, m1), (r2, m2) = self.decode(a), self.decode(b)
        return self.encode(self.base.add(r1, r2), self.base.add(m1, m2))

    def _mul(self, a, b):
        (r1, m1), (r2, m2) = self.decode(a), self.decode(b)
        B = self.base
        return self.encode(B.mul(r1, r2), B.add(B.mul(r1, m2), B.mul(r2, m1)))

    def _neg(self, a):
        r, m = self.decode(a)
        return self.encode(self.base.neg(r), self.base.neg(m))

    def pair(self, i):
        r, m = self.decode(i)
        return int(r), int(m)

    def coords(self, i):
        r, m = self.pair(i)
        return (self.base.coords(r), self.base.coords(m))

    def index(self, coords):
        return int(self.encode(self.base.index(coords[0]), self.base.index(coords[1])))

    def from_int(self, n):
        return int(self.encode(self.base.from_int(n), 0))

    def format(self, i):
        r, m = self.pair(i)
        return f"({self.base.format(r)}, {self.base.format(m)})"

    @property
    def name(self):
        gens = _ideal_generators(self.base, self.module)
        return f"{_wrap(self.base)} (+) ideal({', '.join(self.base.format(g) for g in gens)})"

    def _units_fast(self):
        bu = units(self.base)
        r, m = self.decode(self.all)
        mask = bu.mask[r]
        rinv = np.maximum(bu.inverse_array[r], 0)
        B = self.base
        minv = B.neg(B.mul(B.mul(rinv, rinv), m))
        inv = np.where(mask, self.encode(rinv, minv), -1)
        return mask, inv


def _ideal_generators(ring, members):
    """A short generating list for an ideal, greedily by index."""
    gens, cur = [], np.array([0], dtype=np.int64)
    have = np.zeros(ring.size, dtype=bool)
    have[0] = True
    for x in members:
        if not have[x]:
            gens.append(int(x))
            principal = np.unique(_arr(ring.mul(x, ring.all)))
            cur = np.unique(_arr(ring.add(cur[:, None], principal[None, :])))
            have[:] = False
            have[cur] = True
    return gens or [0]


class Subring(FiniteRing):
    """A subring of ``ambient`` given by its member indices (shares the codec)."""

    kind = "subring"

    def __init__(self, ambient, members, validate=True):
        members = np.unique(_arr(members))
        self.ambient = ambient
        self.members = members
        self._lookup = np.full(ambient.size, -1, dtype=np.int64)
        self._lookup[members] = np.arange(members.size)
        if self._lookup[0] != 0 or self._lookup[ambient.one] < 0:
            raise InvalidRing("a subring must contain 0 and 1")
        if validate and members.size**2 <= 4 * _CHUNK:
            a, b = members[:, None], members[None, :]
            if (self._lookup[_arr(ambient.add(a, b))] < 0).any() or (
                self._lookup[_arr(ambient.mul(a, b))] < 0
            ).any():
                raise InvalidRing("member set is not closed under the ring operations")
        super().__init__(members.size, self._lookup[ambient.one])

    def to_ambient(self, i):
        return _ret(self.members[_arr(i)])

    def from_ambient(self, a):
        return _ret(self._lookup[_arr(a)])

    def contains(self, a):
        return _ret(self._lookup[_arr(a)] >= 0)

    @cached_property
    def mask(self):
        m = np.zeros(self.ambient.size, dtype=bool)
        m[self.members] = True
        return m

    def _add(self, a, b):
        return self._lookup[_arr(self.ambient.add(self.members[a], self.members[b]))]

    def _mul(self, a, b):
        return self._lookup[_arr(self.ambient.mul(self.members[a], self.members[b]))]

    def _neg(self, a):
        return self._lookup[_arr(self.ambient.neg(self.members[a]))]

    def coords(self, i):
        return self.ambient.coords(int(self.members[i]))

    def index(self, coords):
        return int(self._lookup[self.ambient.index(coords)])

    def format(self, i):
        return self.ambient.format(int(self.members[i]))

    def from_int(self, n):
        return int(self._lookup[self.ambient.from_int(n)])

    @property
    def name(self):
        return f"subring of {self.ambient.name} ({self.size} elements)"

    def _units_fast(self):
        au = units(self.ambient)
        mask = au.mask[self.members]
        inv = np.where(mask, self._lookup[np.maximum(au.inverse_array[self.members], 0)], -1)
        return mask, inv


class QuotientRing(FiniteRing):
    """``ambient / I``; each coset is represented by its least member index."""

    kind = "quotient"

    def __init__(self, ambient, ideal, validate=True):
        if validate:
            members = _check_ideal(ambient, _members_of(ideal))
        else:
            members = np.unique(_arr(_members_of(ideal)))
        if members.size == ambient.size:
            raise InvalidQuotient("cannot take the quotient by the whole ring")
        label = np.full(ambient.size, -1, dtype=np.int64)
        reps = []
        for a in range(ambient.size):
            if label[a] < 0:
                label[_arr(ambient.add(a, members))] = len(reps)
                reps.append(a)
        self.ambient = ambient
        self.ideal = members
        self.reps = np.array(reps, dtype=np.int64)
        self.label = label
        super().__init__(len(reps), label[ambient.one])

    def project(self, a):
        return _ret(self.label[_arr(a)])

    def _add(self, a, b):
        return self.label[_arr(self.ambient.add(self.reps[a], self.reps[b]))]

    def _mul(self, a, b):
        return self.label[_arr(self.ambient.mul(self.reps[a], self.reps[b]))]

    def _neg(self, a):
        return self.label[_arr(self.ambient.neg(self.reps[a]))]

    def coords(self, i):
        return self.ambient.coords(int(self.reps[i]))

    def index(self, coords):
        return int(self.label[self.ambient.index(coords)])

    def format(self, i):
        return self.ambient.format(int(self.reps[i]))

    def from_int(self, n):
        return int(self.label[self.ambient.from_int(n)])

    @property
    def name(self):
        return f"{_wrap(self.ambient)} / ({len(self.ideal)}-element ideal)"


# ---------------------------------------------------------------------------
# constructors


def make_zmod(n):
    return ZMod(n)


def make_poly_quot(base, modulus, var="x", cap=DEFAULT_CAP):
    """``base[var]/(modulus)``; integer coefficients mean ``n*1``, Elements are used as is."""
    coeffs = [c.index if isinstance(c, Element) else base.from_int(c) for c in modulus]
    return PolyQuotient(base, coeffs, var=var, cap=cap)


def make_product(factors, cap=DEFAULT_CAP):
    return ProductRing(factors, cap=cap)


def make_idealization(ring, ideal, cap=DEFAULT_CAP):
    return Idealization(ring, ideal, cap=cap)


# ---------------------------------------------------------------------------
# unit groups and friends


@dataclass(frozen=True)
class UnitGroup:
    ring: FiniteRing = field(repr=False)
    indices: tuple
    inverse: dict = field(repr=False)

    @cached_property
    def mask(self):
        m = np.zeros(self.ring.size, dtype=bool)
        m[list(self.indices)] = True
        return m

    @cached_property
    def inverse_array(self):
        a = np.full(self.ring.size, -1, dtype=np.int64)
        for u, v in self.inverse.items():
            a[u] = v
        return a

    def __contains__(self, x):
        return int(x) in self.inverse

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)


def _units_brute(R):
    N = R.size
    mask = np.zeros(N, dtype=bool)
    inv = np.full(N, -1, dtype=np.int64)
    step = max(1, _CHUNK // N)
    for start in range(0, N, step):
        rows = R.all[start : start + step]
        hit = _arr(R.mul(rows[:, None], R.all[None, :])) == R.one
        found = hit.any(axis=1)
        mask[rows] = found
        inv[rows] = np.where(found, hit.argmax(axis=1), -1)
    return mask, inv


def units(R, cap=DEFAULT_CAP, method="auto"):
    """U(R).  ``method``: ``auto`` (structural fast path when available),
    ``brute`` (search for ``y`` with ``xy = 1``)."""
    cache = R.__dict__.setdefault("_unit_cache", {})
    if method in cache:
        return cache[method]
    found = R._units_fast() if method == "auto" else None
    if found is None:
        if R.size > cap:
            raise TooLarge(f"unit scan of {R.size} elements exceeds cap {cap}")
        found = _units_brute(R)
    mask, inv = found
    idx = tuple(int(i) for i in np.flatnonzero(mask))
    ug = UnitGroup(R, idx, {i: int(inv[i]) for i in idx})
    cache[method] = ug
    return ug


def is_field(R):
    return len(units(R)) == R.size - 1


def zerodivisors(R, cap=DEFAULT_CAP):
    """{x : xy = 0 for some y != 0}, including 0; sorted indices."""
    if R.size > cap:
        raise TooLarge("zerodivisor scan exceeds cap")
    nz = R.all[1:]
    out = []
    step = max(1, _CHUNK // R.size)
    for start in range(0, R.size, step):
        rows = R.all[start : start + step]
        hit = (_arr(R.mul(rows[:, None], nz[None, :])) == 0).any(axis=1)
        out.extend(int(r) for r in rows[hit])
    return tuple(out)


def closure(R, seed):
    """Smallest subset of R containing ``seed``, 0 and 1 closed under + and *.

    Returns a sorted index array.  Negation comes for free in a finite ring.
    """
    have = np.zeros(R.size, dtype=bool)
    frontier = np.unique(np.concatenate([_arr([0, R.one]), _arr(list(seed)).reshape(-1)]))
    have[frontier] = True
    while frontier.size:
        cur = np.flatnonzero(have)
        new = []
        step = max(1, _CHUNK // max(cur.size, 1))
        for start in range(0, frontier.size, step):
            f = frontier[start : start + step, None]
            new.append(_arr(R.add(f, cur[None, :])).ravel())
            new.append(_arr(R.mul(f, cur[None, :])).ravel())
        cand = np.unique(np.concatenate(new))
        frontier = cand[~have[cand]]
        have[frontier] = True
    return np.flatnonzero(have)


def subring_generated(S, seed=()):
    seed = [s.index if isinstance(s, Element) else int(s) for s in seed]
    return Subring(S, closure(S, seed), validate=False)


def prime_subring(R):
    return subring_generated(R, ())


def ambient_members(R):
    """Member indices of ``R`` inside its ambient (all indices if not a subring)."""
    return R.members if isinstance(R, Subring) else R.all
