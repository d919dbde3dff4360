import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringlab import RingSyntaxError, UnsupportedModulus, build, parse, parse_element, pretty, units
from ringlab.dsl import GF, Idealization, PolyQuot, Product, Zmod, gf_modulus, parse_elements


def test_parse_examples():
    assert parse("Z/2[x]/(x^4+x)") == PolyQuot(Zmod(2), "x", (0, 1, 0, 0, 1))
    assert parse("Z/2 * GF(4)") == Product((Zmod(2), GF(4)))
    assert parse("Z/4 (+) ideal(2)") == Idealization(Zmod(4), ("2",))


def test_product_flattening_and_nesting():
    assert parse("Z/2 * Z/3 * Z/4") == Product((Zmod(2), Zmod(3), Zmod(4)))
    nested = parse("(Z/2 * Z/3) * Z/4")
    assert nested == Product((Product((Zmod(2), Zmod(3))), Zmod(4)))
    assert pretty(nested) == "(Z/2 * Z/3) * Z/4"


def test_whitespace_insensitive():
    assert parse(" Z / 4 [ x ] / ( x ^ 2 + 2 ) ") == parse("Z/4[x]/(x^2+2)")


@pytest.mark.parametrize(
    "text, line, column",
    [("Z/", 1, 3), ("Z/2 *", 1, 6), ("GF(4", 1, 5), ("Z/2\n * Q", 2, 4), ("Z/2 [x]/(y^2)", 1, 10)],
)
def test_syntax_errors_carry_positions(text, line, column):
    with pytest.raises(RingSyntaxError) as exc:
        parse(text)
    assert (exc.value.line, exc.value.column) == (line, column)


def test_gf_requires_prime_power():
    with pytest.raises(RingSyntaxError):
        parse("GF(6)")


def test_gf_construction():
    assert gf_modulus(2, 2) == [1, 1, 1]
    assert gf_modulus(2, 3) == [1, 0, 1, 1]
    for q in (4, 8, 9, 16, 25):
        F = build(f"GF({q})")
        assert F.size == q and len(units(F)) == q - 1
    assert build("GF(7)").size == 7


def test_non_monic_modulus_rejected():
    with pytest.raises(UnsupportedModulus):
        build("Z/4[x]/(2*x^2 + 1)")


def test_element_literals():
    S = build("Z/2[t]/(t^4 + t)")
    assert S.format(parse_element(S, "t^3 + t + 1")) == "1 + t + t^3"
    P = build("Z/4 * Z/2[x]/(x^2)")
    e = parse_element(P, "(3, 1 + x)")
    assert P.format(e) == "(3, 1 + x)"
    X = build("Z/4 (+) ideal(2)")
    assert X.format(parse_element(X, "(1, 2)")) == "(1, 2)"
    with pytest.raises(RingSyntaxError):
        parse_element(X, "(1, 1)")
    assert parse_elements(S, "t, 1 + t^2") == [S("t").index, S("1 + t^2").index]


def test_nested_polynomial_literals_lift_through_bases():
    R = build("(Z/2[x]/(x^2))[y]/(y^2 + 1)")
    assert R.size == 16
    a = R("x*y + 1")
    assert a * a == R("x^2*y^2 + 1")


# ---------------------------------------------------------------------------
# round trip


def random_expr(rng, depth=0):
    roll = rng.random()
    if depth >= 3 or roll < 0.3:
        if rng.random() < 0.6:
            return Zmod(rng.randint(2, 40))
        return GF(rng.choice([2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49]))
    if roll < 0.55:
        deg = rng.randint(1, 4)
        coeffs = [rng.randint(-5, 5) for _ in range(deg)] + [rng.choice([1, 2, -1, 3])]
        return PolyQuot(random_expr(rng, depth + 1), rng.choice("xytuvw"), tuple(coeffs))
    if roll < 0.8:
        k = rng.randint(2, 4)
        factors = []
        for _ in range(k):
            f = random_expr(rng, depth + 1)
            factors.append(f)
        return Product(tuple(factors))
    gens = tuple(rng.choice(["0", "1", "2", "3", "(1,0)", "(0,2)", "x+1", "2*x"]) for _ in range(rng.randint(1, 2)))
    return Idealization(random_expr(rng, depth + 1), gens)


def test_round_trip_1000_seeded_expressions():
    rng = random.Random(20240601)
    for _ in range(1000):
        e = random_expr(rng)
        text = pretty(e)
        assert parse(text) == e, text
        assert pretty(parse(text)) == text


@st.composite
def exprs(draw):
    return random_expr(random.Random(draw(st.integers(0, 2**32))))


@settings(max_examples=300, deadline=None)
@given(exprs())
def test_round_trip_property(e):
    assert parse(pretty(e)) == e


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["Z/2", "Z/4", "Z/3", "GF(4)", "Z/2[x]/(x^2)"]), st.integers(1, 3))
def test_built_product_names_reparse(atom, k):
    R = build(" * ".join([atom] * k))
    assert build(R.name).size == R.size
