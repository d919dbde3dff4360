"""Polynomials over finite rings at bounded degree, and the constructions built on them."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import _polyarith as pa
from .errors import BaseNotField, NotPrime, NotPrimitive, ReducibleImage, TooLarge, UnsupportedModulus
from .extensions import analyze, crt_poly, enumerate_morphisms, is_SL, make_morphism
from .ideals import ideal_generated, nilradical, quotient
from .morphism import RingMorphism, check_homomorphism
from .rings import DEFAULT_CAP, Element, PolyQuotient, ZMod, _arr, is_field, make_product, make_zmod, units

IRREDUCIBLE_MAX_DEGREE = 16


@dataclass(frozen=True)
class BoundedPoly:
    """A polynomial over ``base``; coefficients are base indices, constant first."""

    base: object = field(repr=False, compare=False)
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(pa.trim(int(c) for c in self.coeffs)))

    @classmethod
    def from_ints(cls, base, ints):
        return cls(base, [base.from_int(c) for c in ints])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def content(self):
        return ideal_generated(self.base, self.coeffs)

    def __add__(self, other):
        return BoundedPoly(self.base, pa.p_add(self.base, list(self.coeffs), list(other.coeffs)))

    def __mul__(self, other):
        return BoundedPoly(self.base, pa.p_mul(self.base, list(self.coeffs), list(other.coeffs)))

    def __repr__(self):
        return format_poly(self.base, self.coeffs)


def format_poly(base, coeffs, var="X"):
    terms = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        cs = base.format(c)
        if " " in cs and not cs.startswith("("):
            cs = f"({cs})"
        if k == 0:
            terms.append(cs)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if c == base.one else f"{cs}*{mono}")
    return " + ".join(terms) if terms else "0"


def _coeffs(base, f):
    """Coefficient indices of ``f`` (a BoundedPoly, Elements or indices)."""
    if isinstance(f, BoundedPoly):
        return list(f.coeffs)
    return [c.index if isinstance(c, Element) else int(c) for c in f]


# ---------------------------------------------------------------------------
# units of R[X]


def _all_polys(R, d):
    return np.indices((R.size,) * (d + 1)).reshape(d + 1, -1).T.astype(np.int64)


def poly_unit_check(R, d=3, cap=DEFAULT_CAP):
    """Units of R[X] of degree <= d, compared with U(R) + X Nil(R)[X].

    A polynomial p is a unit exactly when its formal power-series inverse is
    a polynomial.  The series is expanded far enough to see an inverse of
    degree up to ``d * |R|``; ``d`` consecutive zero coefficients after that
    point mean the series has stopped for good.  Pairs with both degrees
    <= d are also scanned directly, since they must agree on their overlap.
    """
    P = _all_polys(R, d)
    if P.shape[0] > cap:
        raise TooLarge(f"{P.shape[0]} polynomials exceed cap {cap}")
    U = units(R)
    inv0 = U.inverse_array[P[:, 0]]
    has_unit_const = inv0 >= 0
    D = d * R.size
    q = np.zeros((P.shape[0], D + d + 1), dtype=np.int64)
    q[:, 0] = np.where(has_unit_const, inv0, 0)
    neg_inv = _arr(R.neg(np.maximum(inv0, 0)))
    for k in range(1, D + d + 1):
        acc = np.zeros(P.shape[0], dtype=np.int64)
        for i in range(1, min(k, d) + 1):
            acc = _arr(R.add(acc, R.mul(P[:, i], q[:, k - i])))
        q[:, k] = _arr(R.mul(neg_inv, acc))
    terminates = ~q[:, D + 1 :].any(axis=1)
    unit = has_unit_const & terminates

    nil = nilradical(R).mask
    formula = U.mask[P[:, 0]] & nil[P[:, 1:]].all(axis=1)

    # direct pair scan restricted to inverses of degree <= d
    short = has_unit_const & ~q[:, d + 1 :].any(axis=1)
    pair_units = _pair_scan_units(R, P, U)
    return {
        "degree": d,
        "inverse_degree_bound": D,
        "units": [format_poly(R, pa.trim(p.tolist())) for p in P[unit]],
        "formula": [format_poly(R, pa.trim(p.tolist())) for p in P[formula]],
        "match": bool((unit == formula).all()),
        "pair_scan_consistent": bool((pair_units == short).all()),
        "count": int(unit.sum()),
    }


def _pair_scan_units(R, P, U):
    """p has an inverse among the degree-<=d polynomials (pairs scanned in blocks)."""
    n, width = P.shape
    found = np.zeros(n, dtype=bool)
    cand = np.flatnonzero(U.mask[P[:, 0]])
    step = max(1, (1 << 20) // n)
    for start in range(0, cand.size, step):
        rows = cand[start : start + step]
        prod = [np.zeros((rows.size, n), dtype=np.int64) for _ in range(2 * width - 1)]
        for i in range(width):
            for j in range(width):
                prod[i + j] = _arr(R.add(prod[i + j], R.mul(P[rows, i][:, None], P[None, :, j])))
        is_one = prod[0] == R.one
        for k in range(1, 2 * width - 1):
            is_one &= prod[k] == 0
        found[rows] = is_one.any(axis=1)
    return found


# ---------------------------------------------------------------------------
# irreducibility


def _require_field(base):
    if not is_field(base):
        raise BaseNotField(f"{base.name} is not a field")
    return {u: units(base).inverse[u] for u in units(base).indices}


def monic_polys(base, degree):
    for tail in itertools.product(range(base.size), repeat=degree):
        yield list(tail) + [base.one]


def factor(base, f):
    """Monic irreducible factors (with repetition) by trial division."""
    inv = _require_field(base)
    f = pa.p_monic(base, _coeffs(base, f), inv)
    if len(f) - 1 > IRREDUCIBLE_MAX_DEGREE:
        raise TooLarge("degree above the trial-division bound")
    out = []
    k = 1
    while 2 * k <= len(f) - 1:
        divided = False
        for g in monic_polys(base, k):
            q, r = pa.p_divmod(base, f, g)
            if not r:
                out.append(g)
                f = q
                divided = True
                break
        if not divided:
            k += 1
    if len(f) > 1:
        out.append(f)
    return out


def is_irreducible(base, f):
    f = _coeffs(base, f)
    _require_field(base)
    if len(pa.trim(f)) - 1 < 1:
        return False
    return len(factor(base, f)) == 1


# ---------------------------------------------------------------------------
# number theory


def is_prime(p):
    return p >= 2 and all(p % k for k in range(2, math.isqrt(p) + 1))


def multiplicative_order(a, p):
    k, x = 1, a % p
    while x != 1:
        x = x * a % p
        k += 1
    return k


def is_primitive_root(a, p):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if a % p == 0:
        raise ValueError(f"{a} is divisible by {p}")
    return multiplicative_order(a, p) == p - 1


# ---------------------------------------------------------------------------
# monic maximal ideals of R[X]


def monic_maximal_ideal(R, M, f):
    """R[X]/(M[X] + f R[X]) as a finite ring, certified to be a field.

    Returns ``(field, certificate)``; raises ReducibleImage with the factors
    when f mod M is reducible.
    """
    coeffs = _coeffs(R, f)
    if not coeffs or coeffs[-1] != R.one:
        raise UnsupportedModulus("f must be monic")
    if len(M) == 1:
        Q, proj = R, R.all
    else:
        Q, p = quotient(R, M)
        proj = p.map
    fbar = [int(proj[c]) for c in coeffs]
    factors = factor(Q, fbar)
    if len(factors) != 1:
        raise ReducibleImage(
            f"{format_poly(Q, fbar)} is reducible modulo the ideal",
            factors=[format_poly(Q, g) for g in factors],
        )
    F = PolyQuotient(Q, fbar, var="x")
    nunits = len(units(F))
    cert = {
        "size": F.size,
        "expected_size": (R.size // len(M)) ** (len(fbar) - 1),
        "field": nunits == F.size - 1,
    }
    return F, cert


# ---------------------------------------------------------------------------
# the cyclotomic and padding constructions


@dataclass
class Construction:
    R: object
    S: object
    morphism: RingMorphism
    report: object
    image_of_generator: str = ""
    extra: dict = field(default_factory=dict)


def cyclotomic_modulus(p):
    return [1] * p


def cyclotomic_sl_construction(p, cap=DEFAULT_CAP):
    """F2[X]/(X^p - 1) -> F2[X]/(X^{p+1} - X), the diagonal-on-F2 embedding.

    Both rings split as F2 times the field cut out by 1 + X + ... + X^{p-1};
    the target has one extra F2 factor, and the map doubles the F2 part.
    """
    if not is_prime(p) or p == 2:
        raise NotPrime(f"{p} is not an odd prime")
    K = make_zmod(2)
    cyc = cyclotomic_modulus(p)
    if not is_primitive_root(2, p):
        raise NotPrimitive(
            f"2 is not a primitive root mod {p}",
            factors=[format_poly(K, g) for g in factor(K, cyc)],
        )
    if 2 ** (p + 1) > cap:
        raise TooLarge(f"target ring of size 2^{p + 1} exceeds cap {cap}")
    R = PolyQuotient(K, [1] + [0] * (p - 1) + [1], var="y", cap=cap)
    S = PolyQuotient(K, [0, 1] + [0] * (p - 1) + [1], var="t", cap=cap)
    inv = {1: 1}
    # x -> 1 on both F2 factors (X and X - 1), x -> X on the big field
    w = crt_poly(K, [[1], [1], [0, 1]], [[0, 1], [1, 1], cyc], inv)
    wi = S.from_coeffs(w)
    f = make_morphism(R, S, {R.gen(): wi})
    rep = analyze(f)
    return Construction(R, S, f, rep, S.format(wi), {"irreducible": is_irreducible(K, cyc)})


def sl_embeddings(R, S):
    """Injective SL morphisms R -> S for R a polynomial quotient over Z/n."""
    return [f for f in enumerate_morphisms(R, S) if f.injective and is_SL(f)]


def pad_construction(R, n, m, cap=DEFAULT_CAP):
    """F2^n x R -> F2^m x R, repeating the last F2 coordinate."""
    if not 1 <= n <= m:
        raise ValueError("need 1 <= n <= m")
    if 2**m * R.size > cap:
        raise TooLarge("padded ring exceeds cap")
    K = make_zmod(2)
    T = make_product([K] * n + [R])
    S = make_product([K] * m + [R])
    comps = T.decode(T.all)
    bits, r = comps[:n], comps[n]
    fmap = S.encode(bits + [bits[-1]] * (m - n) + [r])
    check_homomorphism(T, S, fmap)
    f = RingMorphism(T, S, fmap, validate=False)
    return Construction(T, S, f, analyze(f))
