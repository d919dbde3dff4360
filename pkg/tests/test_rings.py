import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ringlab import (
    InvalidIdeal,
    InvalidRing,
    TooLarge,
    UnsupportedModulus,
    build,
    make_idealization,
    make_poly_quot,
    make_product,
    make_zmod,
    prime_subring,
    subring_generated,
    units,
    zerodivisors,
)
from ringlab.ideals import ideal_generated
from ringlab.suite import CATALOG

EXPRS = list(CATALOG) + ["Z/2 * Z/3 * Z/4", "GF(8)", "GF(9)", "Z/3[x]/(x^2)", "Z/2 (+) ideal(0)", "(Z/2 * Z/2) (+) ideal((1, 0))"]
_CACHE = {}


def ring(expr):
    if expr not in _CACHE:
        _CACHE[expr] = build(expr)
    return _CACHE[expr]


# ---------------------------------------------------------------------------
# constructors


def test_zmod():
    assert make_zmod(2).size == 2
    assert units(make_zmod(2)).indices == (1,)
    assert units(make_zmod(8)).indices == (1, 3, 5, 7)
    with pytest.raises(InvalidRing):
        make_zmod(1)


def test_poly_quotient_sizes():
    K = make_zmod(2)
    S = make_poly_quot(K, [0, 1, 0, 0, 1], var="t")
    assert S.size == 16
    assert make_poly_quot(K, [0, 1]).size == 2
    assert len(units(make_poly_quot(K, [0, 1]))) == 1


def test_poly_quotient_z4_x2_nilradical():
    from ringlab import nilradical

    R = make_poly_quot(make_zmod(4), [0, 0, 1])
    assert R.size == 16
    N = nilradical(R)
    assert set(N.members) == set(ideal_generated(R, [R(2), R("x")]).members)
    assert set(N.members) == oracles.nil_in(R, range(R.size))
    assert len(N) == 8


def test_poly_quotient_rejects_non_monic_and_cap():
    with pytest.raises(UnsupportedModulus):
        make_poly_quot(make_zmod(4), [1, 2])
    with pytest.raises(UnsupportedModulus):
        make_poly_quot(make_zmod(2), [1])
    with pytest.raises(TooLarge):
        make_poly_quot(make_zmod(2), [1] + [0] * 19 + [1])


def test_poly_quotient_multiplication_matches_reduction():
    # schoolbook product reduced by the monic modulus, in plain integers
    for expr, n, mod in (("Z/4[x]/(x^2 + 2)", 4, [2, 0, 1]), ("Z/2[x]/(x^4 + x)", 2, [0, 1, 0, 0, 1]), ("Z/3[x]/(x^2)", 3, [0, 0, 1])):
        R = ring(expr)
        d = len(mod) - 1
        for a, b in itertools.product(range(R.size), repeat=2):
            fa, fb = R.coords(a), R.coords(b)
            prod = [0] * (2 * d - 1)
            for i, x in enumerate(fa):
                for j, y in enumerate(fb):
                    prod[i + j] += x * y
            for k in range(len(prod) - 1, d - 1, -1):
                c = prod[k]
                for i in range(d + 1):
                    prod[k - d + i] -= c * mod[i]
            assert R.coords(R.mul(a, b)) == tuple(c % n for c in prod[:d])


def test_product_units():
    assert make_product([make_zmod(2), make_zmod(2)]).size == 4
    assert len(units(make_product([make_zmod(2), make_zmod(2)]))) == 1
    P = ring("Z/2 * GF(4)")
    assert len(units(P)) == 3 == len(oracles.units_in(P, range(P.size)))
    assert len(units(ring("Z/3 * Z/3"))) == 4


def test_idealization():
    R = make_zmod(4)
    X = make_idealization(R, ideal_generated(R, [2]))
    assert X.size == 8
    assert len(units(X)) == 4 == len(oracles.units_in(X, range(X.size)))
    # (r, m) is a unit iff r is
    for u in units(X):
        r, _ = X.decode(u)
        assert int(r) in (1, 3)
    Z = make_idealization(make_zmod(2), ideal_generated(make_zmod(2), []))
    assert Z.size == 2
    with pytest.raises(InvalidIdeal):
        make_idealization(R, [0, 1])


def test_idealization_inverse_formula():
    R = make_zmod(8)
    X = make_idealization(R, ideal_generated(R, [2]))
    U = units(X)
    for u in U:
        r, m = (int(c) for c in X.decode(u))
        r_inv = pow(r, -1, 8)
        expected = X.encode(r_inv, (-r_inv * r_inv * m) % 8)
        assert U.inverse[u] == int(expected)


def test_units_of_worked_rings():
    S = ring("Z/2[t]/(t^4 + t)")
    R = ring("Z/2[y]/(y^3 + 1)")
    assert {S.format(u) for u in units(S)} == {"1", "1 + t + t^3", "1 + t^2 + t^3"}
    assert {R.format(u) for u in units(R)} == {"1", "y", "y^2"}
    for k in range(1, 5):
        assert units(build(" * ".join(["Z/2"] * k))).indices == (build(" * ".join(["Z/2"] * k)).one,)


def test_zerodivisors():
    assert zerodivisors(make_zmod(8)) == (0, 2, 4, 6)
    assert zerodivisors(ring("GF(4)")) == (0,)
    Z6 = make_zmod(6)
    assert zerodivisors(Z6) == (0, 2, 3, 4)
    assert set(zerodivisors(Z6)) == {x for x in range(6) if any(x * y % 6 == 0 for y in range(1, 6))}


def test_subring_generated():
    F4 = ring("GF(4)")
    assert subring_generated(F4, []).size == 2
    P = ring("Z/2 * Z/2")
    assert subring_generated(P, [P("(1, 0)")]).size == 4
    S = ring("Z/2[t]/(t^4 + t)")
    T = subring_generated(S, [S("1 + t + t^3")])
    assert T.size == 8 == ring("Z/2[y]/(y^3 + 1)").size
    assert set(T.members.tolist()) == oracles.closure(S, [S("1 + t + t^3").index])


def test_prime_subring():
    assert prime_subring(ring("GF(4)")).size == 2
    assert prime_subring(make_zmod(6)).size == 6
    P = ring("Z/2 * GF(4)")
    F = prime_subring(P)
    assert set(F.members.tolist()) == {0, P.one}


def test_element_sugar():
    R = ring("Z/4[x]/(x^2 + 2)")
    x = R("x")
    assert x * x == R(-2) == R(2)
    assert (1 + x) ** 2 == 1 + 2 * x + x * x
    assert -x + x == R(0)
    assert repr(R("1 + 3*x")) == "1 + 3*x"


# ---------------------------------------------------------------------------
# invariants


def _axioms(R):
    a = R.all
    add, mul = np.asarray(R.add(a[:, None], a[None, :])), np.asarray(R.mul(a[:, None], a[None, :]))
    assert (add == add.T).all() and (mul == mul.T).all()
    assert (add[0] == a).all() and (mul[R.one] == a).all()
    assert R.one != 0
    # associativity and distributivity through the tables
    for x in a:
        assert (mul[mul[x]] == mul[x][mul]).all()
        assert (add[add[x]] == add[x][add]).all()
        assert (mul[x][add] == add[mul[x][:, None], mul[x][None, :]]).all()
    assert (add[a, np.asarray(R.neg(a))] == 0).all()


@pytest.mark.parametrize("expr", EXPRS)
def test_ring_axioms_exhaustive(expr):
    R = ring(expr)
    assert R.size <= 256
    _axioms(R)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(EXPRS), st.data())
def test_units_and_zerodivisors_partition(expr, data):
    R = ring(expr)
    U = set(units(R).indices)
    Z = set(zerodivisors(R))
    assert not U & Z
    assert U | Z == set(range(R.size))
    x = data.draw(st.sampled_from(sorted(U)))
    assert R.mul(x, units(R).inverse[x]) == R.one
    assert U == oracles.units_in(R, range(R.size))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(["Z/2", "Z/3", "Z/4", "GF(4)", "Z/2[x]/(x^2)"]), min_size=1, max_size=3))
def test_product_units_are_products_of_units(atoms):
    factors = [ring(a) for a in atoms]
    P = make_product(factors)
    expected = {int(P.encode(list(c))) for c in itertools.product(*(units(f).indices for f in factors))}
    assert set(units(P).indices) == expected
    assert set(units(P, method="brute").indices) == expected


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(EXPRS), st.data())
def test_prime_subring_inside_every_subring(expr, data):
    R = ring(expr)
    seed = data.draw(st.lists(st.integers(0, R.size - 1), max_size=2))
    T = subring_generated(R, seed)
    assert set(prime_subring(R).members.tolist()) <= set(T.members.tolist())
    assert prime_subring(R).size == R.characteristic


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["Z/2[x]/(x^8 + x^4 + x^3 + x + 1)", "Z/4[x]/(x^4 + x + 1)", "Z/2 * Z/4 * GF(8)"]), st.data())
def test_ring_axioms_sampled_beyond_exhaustive(expr, data):
    R = ring(expr)
    el = st.integers(0, R.size - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert R.mul(a, R.mul(b, c)) == R.mul(R.mul(a, b), c)
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.add(a, R.add(b, c)) == R.add(R.add(a, b), c)
    assert R.mul(a, b) == R.mul(b, a)
