"""A small language for ring expressions and element literals.

Rings::

    ring  := term {('*' term) | ('(+)' 'ideal(' elem {',' elem} ')')}
    term  := atom {'[' IDENT ']/(' poly ')'}
    atom  := 'Z/' INT | 'GF(' INT ')' | '(' ring ')'

Products are left-associative and a chain ``A * B * C`` is one flat product;
a parenthesised product stays a single factor.  Elements are integer
expressions in the bound variables, with tuples for product and
idealization components, e.g. ``(1 + x, 2)`` or ``x^2 + 3``.
"""

from __future__ import annotations

import ast
import itertools
from dataclasses import dataclass

from .errors import RingSyntaxError, UnsupportedModulus
from . import rings as _rings
from .rings import (
    DEFAULT_CAP,
    PolyQuotient,
    ProductRing,
    QuotientRing,
    Subring,
    ZMod,
    make_idealization,
    make_product,
)

# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Zmod:
    n: int


@dataclass(frozen=True)
class GF:
    q: int


@dataclass(frozen=True)
class PolyQuot:
    base: object
    var: str
    coeffs: tuple  # integer coefficients, constant first


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Idealization:
    base: object
    gens: tuple  # element literals, whitespace stripped


RingExpr = Zmod | GF | PolyQuot | Product | Idealization


# ---------------------------------------------------------------------------
# pretty printing


def format_poly(coeffs, var):
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms) if terms else "0"


def _wrapped(node):
    s = pretty(node)
    return f"({s})" if isinstance(node, (Product, Idealization)) else s


def pretty(node):
    """Canonical text for an AST; ``parse(pretty(e)) == e``."""
    if isinstance(node, Zmod):
        return f"Z/{node.n}"
    if isinstance(node, GF):
        return f"GF({node.q})"
    if isinstance(node, PolyQuot):
        return f"{_wrapped(node.base)}[{node.var}]/({format_poly(node.coeffs, node.var)})"
    if isinstance(node, Product):
        return " * ".join(_wrapped(f) for f in node.factors)
    if isinstance(node, Idealization):
        return f"{_wrapped(node.base)} (+) ideal({', '.join(node.gens)})"
    raise TypeError(f"not a ring expression: {node!r}")


# ---------------------------------------------------------------------------
# parsing


def prime_power(q):
    """(p, k) with q = p^k, or None."""
    if q < 2:
        return None
    p = next(d for d in itertools.count(2) if q % d == 0)
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        raise RingSyntaxError(msg, line, col, self.text)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s):
        self.ws()
        return self.text.startswith(s, self.pos)

    def expect(self, s):
        if not self.peek(s):
            found = self.text[self.pos : self.pos + 1] or "end of input"
            self.error(f"expected '{s}', found '{found}'")
        self.pos += len(s)

    def integer(self):
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start : self.pos])

    def ident(self):
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        name = self.text[start : self.pos]
        if not name or not (name[0].isalpha() or name[0] == "_"):
            self.error("expected a variable name", start)
        return name

    # ring := term {...}
    def ring(self):
        left, closed = self.term()
        while True:
            if self.peek("(+)"):
                self.pos += 3
                self.expect("ideal")
                self.expect("(")
                left = Idealization(left, self.elements())
            elif self.peek("*"):
                self.pos += 1
                right, _ = self.term()
                if isinstance(left, Product) and not closed:
                    left = Product(left.factors + (right,))
                else:
                    left = Product((left, right))
            else:
                return left
            closed = False

    def term(self):
        node, closed = self.atom()
        while self.peek("["):
            self.pos += 1
            var = self.ident()
            self.expect("]")
            self.expect("/")
            self.expect("(")
            coeffs = self.poly(var)
            self.expect(")")
            node, closed = PolyQuot(node, var, coeffs), False
        return node, closed

    def atom(self):
        self.ws()
        start = self.pos
        if self.peek("Z"):
            self.pos += 1
            self.expect("/")
            n = self.integer()
            if n < 2:
                self.error(f"Z/{n} is not a nonzero ring", start)
            return Zmod(n), False
        if self.peek("GF"):
            self.pos += 2
            self.expect("(")
            q = self.integer()
            self.expect(")")
            if prime_power(q) is None:
                self.error(f"GF({q}) needs a prime power", start)
            return GF(q), False
        if self.peek("("):
            self.pos += 1
            node = self.ring()
            self.expect(")")
            return node, True
        self.error("expected 'Z/', 'GF(' or '('")

    def poly(self, var):
        """Integer polynomial in ``var``: signed terms ``[INT ['*']] [var ['^' INT]]``."""
        coeffs = {}
        first = True
        while True:
            self.ws()
            sign = 1
            if self.peek("+") or self.peek("-"):
                sign = -1 if self.text[self.pos] == "-" else 1
                self.pos += 1
            elif not first:
                break
            first = False
            self.ws()
            start = self.pos
            c = None
            if self.pos < len(self.text) and self.text[self.pos].isdigit():
                c = self.integer()
                if self.peek("*"):
                    self.pos += 1
                    self.ws()
                    if not self.text.startswith(var, self.pos):
                        self.error(f"expected '{var}' after '*'")
            k = 0
            self.ws()
            if self._at_var(var):
                self.pos += len(var)
                k = 1
                if self.peek("^"):
                    self.pos += 1
                    k = self.integer()
            elif c is None:
                self.error(f"expected a term in '{var}'", start)
            coeffs[k] = coeffs.get(k, 0) + sign * (1 if c is None else c)
        deg = max(coeffs)
        out = [coeffs.get(k, 0) for k in range(deg + 1)]
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return tuple(out)

    def _at_var(self, var):
        end = self.pos + len(var)
        if not self.text.startswith(var, self.pos):
            return False
        return end >= len(self.text) or not (self.text[end].isalnum() or self.text[end] == "_")

    def elements(self):
        """Comma separated element literals up to the closing parenthesis."""
        gens = []
        while True:
            self.ws()
            start = self.pos
            depth = 0
            while self.pos < len(self.text):
                ch = self.text[self.pos]
                if ch in "([":
                    depth += 1
                elif ch in ")]":
                    if depth == 0:
                        break
                    depth -= 1
                elif ch == "," and depth == 0:
                    break
                self.pos += 1
            if self.pos >= len(self.text):
                self.error("unclosed 'ideal('")
            raw = self.text[start : self.pos]
            if not raw.strip():
                self.error("empty element", start)
            _check_literal(raw, self, start)
            gens.append("".join(raw.split()))
            if self.text[self.pos] == ")":
                self.pos += 1
                return tuple(gens)
            self.pos += 1


def parse(text):
    """Parse a ring expression into its AST; raises RingSyntaxError."""
    p = _Parser(text)
    node = p.ring()
    p.ws()
    if p.pos != len(text):
        p.error(f"unexpected '{text[p.pos]}'")
    return node


# ---------------------------------------------------------------------------
# element literals

_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Pow)


def _literal_tree(text):
    try:
        return ast.parse(text.replace("^", "**").strip(), mode="eval").body
    except SyntaxError as exc:
        raise RingSyntaxError(f"bad element literal {text!r}", 1, exc.offset or 1, text) from None


def _check_literal(text, parser=None, offset=0):
    try:
        tree = _literal_tree(text)
        for node in ast.walk(tree):
            ok = isinstance(node, (ast.Constant, ast.Name, ast.BinOp, ast.UnaryOp, ast.Tuple, ast.Load))
            ok = ok or isinstance(node, (*_BINOPS, ast.USub, ast.UAdd))
            if isinstance(node, ast.Constant) and (type(node.value) is not int):
                ok = False
            if not ok:
                raise RingSyntaxError("unsupported construct in element literal", 1, getattr(node, "col_offset", 0) + 1, text)
    except RingSyntaxError as exc:
        if parser is None:
            raise
        parser.error(str(exc).split(" at line")[0], offset + exc.column - 1)


def _lift(ring, name, col, text):
    """Index of the variable ``name`` in ``ring``, searching coefficient rings."""
    if isinstance(ring, PolyQuotient):
        if name == ring.var:
            return int(ring.gen())
        b = _lift(ring.base, name, col, text)
        return int(ring.from_coeffs([b]))
    raise RingSyntaxError(f"unknown variable '{name}'", 1, col, text)


def _from_ambient(ring, a, text):
    if isinstance(ring, Subring):
        i = int(ring.from_ambient(a))
        if i < 0:
            raise RingSyntaxError(f"{text!r} is not in the subring", 1, 1, text)
        return i
    return int(ring.project(a))


def _eval(ring, node, text):
    col = getattr(node, "col_offset", 0) + 1
    if isinstance(ring, (Subring, QuotientRing)):
        # literals of a subring or quotient are written in the ambient ring
        return _from_ambient(ring, _eval(ring.ambient, node, text), text)
    if isinstance(node, ast.Constant):
        return ring.from_int(node.value)
    if isinstance(node, ast.Name):
        return _lift(ring, node.id, col, text)
    if isinstance(node, ast.UnaryOp):
        v = _eval(ring, node.operand, text)
        return int(ring.neg(v)) if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            e = node.right
            if not (isinstance(e, ast.Constant) and type(e.value) is int and e.value >= 0):
                raise RingSyntaxError("exponent must be a non-negative integer", 1, col, text)
            return int(ring.pow(_eval(ring, node.left, text), e.value))
        a, b = _eval(ring, node.left, text), _eval(ring, node.right, text)
        if isinstance(node.op, ast.Add):
            return int(ring.add(a, b))
        if isinstance(node.op, ast.Sub):
            return int(ring.sub(a, b))
        if isinstance(node.op, ast.Mult):
            return int(ring.mul(a, b))
    if isinstance(node, ast.Tuple):
        parts = node.elts
        if isinstance(ring, ProductRing):
            if len(parts) != len(ring.factors):
                raise RingSyntaxError(f"expected {len(ring.factors)} components", 1, col, text)
            return int(ring.encode([_eval(f, p, text) for f, p in zip(ring.factors, parts)]))
        if isinstance(ring, _rings.Idealization):
            if len(parts) != 2:
                raise RingSyntaxError("expected a pair (r, m)", 1, col, text)
            r, m = (_eval(ring.base, p, text) for p in parts)
            if ring._pos[m] < 0:
                raise RingSyntaxError("second component is not in the module", 1, col, text)
            return int(ring.encode(r, m))
        raise RingSyntaxError(f"tuples are not elements of {ring.name}", 1, col, text)
    raise RingSyntaxError("unsupported construct in element literal", 1, col, text)


def parse_element(ring, text):
    """Index of the element written as ``text`` in ``ring``."""
    _check_literal(text)
    return _eval(ring, _literal_tree(text), text)


# ---------------------------------------------------------------------------
# building rings


def gf_modulus(p, k):
    """Lexicographically first monic irreducible of degree k over Z/p (constant first)."""
    from .poly import is_irreducible

    base = ZMod(p)
    for tail in itertools.product(range(p), repeat=k):
        f = list(tail) + [1]
        if is_irreducible(base, f):
            return f
    raise AssertionError("no irreducible polynomial found")


def gf(q, cap=DEFAULT_CAP):
    p, k = prime_power(q)
    if k == 1:
        return ZMod(p)
    return PolyQuotient(ZMod(p), gf_modulus(p, k), var="a", cap=cap)


def build(node, cap=DEFAULT_CAP):
    """Construct the finite ring described by an AST (or by source text)."""
    if isinstance(node, str):
        node = parse(node)
    if isinstance(node, Zmod):
        return ZMod(node.n)
    if isinstance(node, GF):
        return gf(node.q, cap)
    if isinstance(node, PolyQuot):
        base = build(node.base, cap)
        coeffs = [base.from_int(c) for c in node.coeffs]
        if len(coeffs) < 2 or coeffs[-1] != base.one:
            raise UnsupportedModulus(f"modulus {format_poly(node.coeffs, node.var)} is not monic of degree >= 1")
        return PolyQuotient(base, coeffs, var=node.var, cap=cap)
    if isinstance(node, Product):
        return make_product([build(f, cap) for f in node.factors], cap=cap)
    if isinstance(node, Idealization):
        from .ideals import ideal_generated

        base = build(node.base, cap)
        I = ideal_generated(base, [parse_element(base, g) for g in node.gens])
        return make_idealization(base, I, cap=cap)
    raise TypeError(f"not a ring expression: {node!r}")


def parse_elements(ring, text):
    """Split a comma separated list of literals (respecting brackets) and parse each."""
    if not text.strip():
        return []
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append(text[start:i])
            start = i + 1
    out.append(text[start:])
    return [parse_element(ring, s) for s in out]
