import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ringlab import (
    InvalidQuotient,
    build,
    idempotents,
    ideal_generated,
    j_regular_witness,
    jacobson,
    local_factors,
    maximal_ideals,
    nilradical,
    quotient,
    units,
)
from ringlab.ideals import all_ideals, is_semiprime
from ringlab.suite import CATALOG

EXPRS = list(CATALOG) + ["Z/2 * Z/3 * Z/4", "GF(9)", "Z/3[x]/(x^2)", "Z/2[x]/(x^3)"]
_CACHE = {}


def ring(expr):
    if expr not in _CACHE:
        _CACHE[expr] = build(expr)
    return _CACHE[expr]


def el(R, *lits):
    return {R(x).index for x in lits}


def is_field_quotient(R, M):
    t = oracles.tables(R)
    m = set(M.members)
    return len(m) < R.size and all(
        any(t.sub(t.mul[x][y], t.one) in m for y in range(R.size)) for x in range(R.size) if x not in m
    )


def test_ideal_generated():
    Z8 = ring("Z/8")
    assert ideal_generated(Z8, [2]).members == (0, 2, 4, 6)
    assert ideal_generated(Z8, []).members == (0,)
    P = ring("Z/2 * Z/2")
    assert set(ideal_generated(P, [P("(1, 0)")]).members) == el(P, "(0, 0)", "(1, 0)")


def test_nilradical():
    assert nilradical(ring("Z/8")).members == (0, 2, 4, 6)
    assert nilradical(ring("Z/2 * GF(4)")).members == (0,)
    R = ring("Z/4 * Z/2")
    assert set(nilradical(R).members) == el(R, "(0, 0)", "(2, 0)")


def test_jacobson():
    assert jacobson(ring("Z/8")).members == (0, 2, 4, 6)
    assert jacobson(ring("Z/3 * Z/3")).members == (0,)
    assert jacobson(ring("Z/2 * Z/2 * Z/2")).members == (0,)
    R = ring("Z/4 * Z/2")
    J = jacobson(R, method="definition")
    assert set(J.members) == el(R, "(0, 0)", "(2, 0)")
    assert J == jacobson(R, method="nil")


def test_idempotents():
    B = ring("Z/2 * Z/2 * Z/2")
    E, prim = idempotents(B)
    assert len(E) == 8 and len(prim) == 3
    assert idempotents(ring("Z/8")) == ((0, 1), (1,))
    assert idempotents(ring("Z/6")) == ((0, 1, 3, 4), (3, 4))


def test_maximal_ideals():
    assert [M.members for M in maximal_ideals(ring("Z/8"))] == [(0, 2, 4, 6)]
    S = ring("Z/2[t]/(t^4 + t)")
    assert sorted(M.residue_size for M in maximal_ideals(S)) == [2, 2, 4]
    R = ring("Z/2[y]/(y^3 + 1)")
    assert sorted(M.residue_size for M in maximal_ideals(R)) == [2, 4]


def test_quotient():
    Q, proj = quotient(ring("Z/8"), ideal_generated(ring("Z/8"), [2]))
    assert Q.size == 2 and len(units(Q)) == 1
    R = ring("Z/6")
    Q0, _ = quotient(R, ideal_generated(R, []))
    assert Q0.size == 6
    S = ring("Z/2[t]/(t^4 + t)")
    M = next(M for M in maximal_ideals(S) if M.residue_size == 4)
    F, p = quotient(S, M)
    assert F.size == 4 and len(units(F)) == 3
    assert p.surjective
    with pytest.raises(InvalidQuotient):
        quotient(R, ideal_generated(R, [1]))


def test_local_factors():
    dec = local_factors(ring("Z/6"))
    assert [(f.idempotent, f.ring.size) for f in dec.factors] == [(3, 2), (4, 3)]
    dec = local_factors(ring("Z/8"))
    assert [f.idempotent for f in dec.factors] == [1]
    dec = local_factors(ring("Z/2[t]/(t^4 + t)"))
    assert sorted(f.ring.size for f in dec.factors) == [2, 2, 4]


def test_j_regular_witness():
    ok, w = j_regular_witness(ring("Z/4"))
    assert ok and w[2] == 1
    F = ring("GF(4)")
    ok, w = j_regular_witness(F)
    # any unit serves for x = 0; the scan returns the least index
    assert ok and w[0] in units(F) and F.add(0, w[0]) in units(F)
    P = ring("Z/2 * Z/2")
    ok, w = j_regular_witness(P)
    assert w[P("(1, 0)").index] == P("(0, 1)").index


def test_semiprime():
    R = ring("Z/4")
    assert is_semiprime(R, ideal_generated(R, [2]))
    assert not is_semiprime(R, ideal_generated(R, []))


@pytest.mark.parametrize("expr", ["Z/4", "Z/6", "Z/2 * Z/2", "Z/2[x]/(x^2)", "Z/4 (+) ideal(2)"])
def test_all_ideals_against_closure(expr):
    # every ideal is a sum of principal ideals; enumerate those sums in plain Python
    R = ring(expr)
    t = oracles.tables(R)
    principal = {frozenset(t.mul[g][r] for r in range(R.size)) for g in range(R.size)}
    found = {frozenset([0])}
    frontier = list(found)
    while frontier:
        cur = frontier.pop()
        for p in principal:
            nxt = frozenset(t.add[a][b] for a in cur for b in p)
            if nxt not in found:
                found.add(nxt)
                frontier.append(nxt)
    assert {frozenset(I.members) for I in all_ideals(R)} == found


# ---------------------------------------------------------------------------
# invariants


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(EXPRS))
def test_jacobson_is_intersection_of_maximal_ideals(expr):
    R = ring(expr)
    members = range(R.size)
    J = set(jacobson(R).members)
    assert J == oracles.jacobson_in(R, members)
    inter = set(members)
    for M in maximal_ideals(R):
        inter &= set(M.members)
        assert is_field_quotient(R, M)
    assert J == inter
    maxes = [I for I in all_ideals(R) if is_field_quotient(R, I)]
    assert sorted(M.members for M in maxes) == [M.members for M in maximal_ideals(R)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(EXPRS))
def test_nilradical_inside_jacobson_and_reduced_quotient(expr):
    R = ring(expr)
    N, J = nilradical(R), jacobson(R)
    assert set(N.members) == oracles.nil_in(R, range(R.size))
    assert N <= J
    if len(N) > 1:
        Q, proj = quotient(R, N)
        assert nilradical(Q).members == (0,)
        assert set(jacobson(Q).members) == {int(proj.map[j]) for j in J.members}


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(EXPRS))
def test_semisimple_quotient_is_regular(expr):
    R = ring(expr)
    J = jacobson(R)
    Q = R if len(J) == 1 else quotient(R, J)[0]
    E, _ = idempotents(Q)
    U = units(Q).indices
    assert {Q.mul(e, u) for e in E for u in U} == set(range(Q.size))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(EXPRS))
def test_primitive_idempotents_split_one(expr):
    R = ring(expr)
    E, prim = idempotents(R)
    assert set(E) == oracles.idempotents_in(R, range(R.size))
    total = 0
    for e in prim:
        total = R.add(total, e)
    assert total == R.one
    for a, b in itertools.combinations(prim, 2):
        assert R.mul(a, b) == 0
    dec = local_factors(R)
    assert len(dec) == len(maximal_ideals(R))
    assert all(len(maximal_ideals(f.ring)) == 1 for f in dec.factors)
    size = 1
    for f in dec.factors:
        size *= f.ring.size
    assert size == R.size
