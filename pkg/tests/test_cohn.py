import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringlab import NotSemiprime, build, ideal_generated, jacobson, units
from ringlab.cohn import (
    CohnElement,
    bounded_units,
    check_ring_laws,
    lemma_1cohn_oracle,
    make_cohn,
    make_shifted,
    shifted_over_zero,
    shifted_sl_transfer,
    verify_conductor,
    verify_jacobson_membership,
    verify_reduced,
    verify_t_closed,
    verify_unit_rigidity,
    verify_zerodivisors,
)
from ringlab.ideals import zero_ideal
from ringlab.rings import subring_generated


def z4_shifted():
    R = build("Z/4")
    return R, make_shifted(R, ideal_generated(R, [2]))


def test_make_shifted():
    _, SR = z4_shifted()
    assert [s.ring.size for s in SR.slots] == [2]
    R = build("Z/2 * GF(4)")
    SR = make_shifted(R, zero_ideal(R))
    assert SR.slots[0].ring is R
    with pytest.raises(NotSemiprime):
        make_shifted(build("Z/4"), zero_ideal(build("Z/4")))


def test_make_cohn():
    assert [s.ring.size for s in make_cohn(build("Z/6")).slots] == [2, 3]
    F = build("GF(4)")
    SR = make_cohn(F)
    assert len(SR.slots) == 1 and SR.slots[0].ring is F
    assert [s.ring.size for s in make_cohn(build("Z/4")).slots] == [2]


def test_unit_rigidity():
    R, SR = z4_shifted()
    rep = verify_unit_rigidity(SR, 2)
    assert rep.ok and rep.details["units"] == ["1", "3"]
    F = build("GF(4)")
    assert verify_unit_rigidity(shifted_over_zero(F), 2).ok
    assert SR.mul(SR.one, SR.one) == SR.one


def test_unit_rigidity_matches_direct_search():
    R, SR = z4_shifted()
    found = bounded_units(SR, 2)
    assert {y.head for y in found} == {1, 3}
    assert all(not y.has_tail for y in found)


def test_lemma_1cohn():
    R = build("Z/4")
    I = ideal_generated(R, [2])
    # a = b = 1, f = g = 2: 2 + 2 + 4X = 0 lies in I[X] and so do f and g
    SR = make_shifted(R, I)
    assert lemma_1cohn_oracle(R, I, 2).ok
    P = build("Z/2 * Z/2")
    rep = lemma_1cohn_oracle(P, ideal_generated(P, [P("(1, 0)")]), 2)
    assert rep.ok and rep.counterexamples == []
    assert rep.checked == 4**6
    two = CohnElement(2, ((),))
    assert SR.mul(two, SR.gen()) == SR.zero


def test_conductor():
    R, SR = z4_shifted()
    assert verify_conductor(SR, 2).details["trace"] == ["0", "2"]
    C = make_cohn(build("Z/6"))
    rep = verify_conductor(C, 2)
    assert rep.ok and rep.details["trace"] == ["0"]
    F = build("Z/3 * Z/3")
    rep = verify_conductor(shifted_over_zero(F), 2)
    assert rep.ok and rep.details["trace"] == [F.format(0)]


def test_zerodivisors():
    w = verify_zerodivisors(make_cohn(build("Z/4"))).details["witnesses"]
    assert w["2"] == "x_(2)"
    rep = verify_zerodivisors(make_cohn(build("Z/6")))
    assert rep.ok and rep.details["witnesses"]["3"] == "x_(3)"
    assert "0" in rep.details["witnesses"]


def test_t_closed():
    _, SR = z4_shifted()
    assert verify_t_closed(SR, 2).ok
    assert verify_t_closed(shifted_over_zero(build("Z/2 * Z/3")), 1).ok


def test_jacobson_membership():
    R = build("Z/4")
    SR = make_shifted(R, jacobson(R))
    rep = verify_jacobson_membership(SR, 4)
    assert rep.ok and rep.details["trace"] == ["0", "2"]
    assert not SR.is_unit(SR.sub(SR.one, SR.gen()))


def _int_product(n, slots, y, z):
    """Oracle for Z/n based rings: heads multiply mod n, tails mod each slot modulus."""
    head = y[0] * z[0] % n
    tails = []
    for m, f, g in zip(slots, y[1], z[1]):
        size = max(len(f), len(g), 1) + len(f) + len(g)
        out = [0] * size
        for k, c in enumerate(g):
            out[k] += y[0] * c
        for k, c in enumerate(f):
            out[k] += z[0] * c
        for i, a in enumerate(f):
            for j, b in enumerate(g):
                out[i + j + 1] += a * b
        out = [c % m for c in out]
        while out and out[-1] == 0:
            out.pop()
        tails.append(tuple(out))
    return head, tuple(tails)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_multiplication_law_against_integer_oracle(data):
    n, slot_mods = data.draw(st.sampled_from([(4, (2,)), (6, (2, 3)), (8, (2,)), (12, (2, 3))]))
    R = build(f"Z/{n}")
    SR = make_cohn(R)
    assert [s.ring.size for s in SR.slots] == list(slot_mods)

    def draw():
        head = data.draw(st.integers(0, n - 1))
        tails = tuple(tuple(data.draw(st.lists(st.integers(0, m - 1), max_size=3))) for m in slot_mods)
        return head, tails

    y, z = draw(), draw()

    def lift(v):
        # slot quotients of Z/n are Z/m with the residue order
        return CohnElement(v[0], tuple(tuple(int(s.proj[c]) for c in t) for s, t in zip(SR.slots, v[1])))

    got = SR.mul(lift(y), lift(z))
    assert got == lift(_int_product(n, slot_mods, y, z))


@pytest.mark.parametrize("expr", ["Z/4", "Z/8", "Z/6", "Z/2 * GF(4)"])
def test_ring_laws_and_retraction(expr):
    R = build(expr)
    assert check_ring_laws(make_cohn(R), 2).ok
    SR = make_shifted(R, jacobson(R))
    assert check_ring_laws(SR, 2).ok
    for a in range(R.size):
        assert SR.head_projection(SR.embed(a)) == a


@pytest.mark.parametrize("expr", ["Z/2", "Z/3", "Z/2 * Z/2", "GF(4)", "Z/6"])
def test_reduced_base_gives_reduced_shifted_ring(expr):
    R = build(expr)
    assert verify_reduced(shifted_over_zero(R), 3).ok
    found = bounded_units(shifted_over_zero(R), 1)
    assert sorted(y.head for y in found) == list(units(R).indices)
    assert all(not y.has_tail for y in found)


def test_shifted_transfer():
    S = build("Z/2 * Z/2 * Z/2")
    R = subring_generated(S, [S("(1, 1, 0)")])
    for K in [zero_ideal(S), ideal_generated(S, [S("(1, 0, 0)")])]:
        res = shifted_sl_transfer(R, K)
        assert res["ok"] and res["base_SL"] and res["shifted_SL"]
    S = build("Z/3 * Z/3")
    R = subring_generated(S, [])
    res = shifted_sl_transfer(R, zero_ideal(S))
    assert res["ok"] and not res["base_SL"] and not res["shifted_SL"]


def test_elements_enumeration_size():
    _, SR = z4_shifted()
    assert len(list(SR.elements(2))) == SR.population(2) == 4 * 2**2
    assert len(set(itertools.islice(SR.elements(2), 16))) == 16
