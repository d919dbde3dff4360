"""Dense univariate polynomial arithmetic on coefficient lists.

Coefficients are element indices of a base ``FiniteRing`` (index 0 is the
zero element of every ring), constant term first.  Nothing here reduces
modulo anything; callers decide that.
"""

from __future__ import annotations


def trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def degree(c):
    return len(trim(c)) - 1


def p_add(base, f, g):
    add = base.sadd
    n = max(len(f), len(g))
    out = [add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n)]
    return trim(out)


def p_neg(base, f):
    return trim([base.sneg(a) for a in f])


def p_sub(base, f, g):
    return p_add(base, f, p_neg(base, g))


def p_scale(base, a, f):
    mul = base.smul
    return trim([mul(a, c) for c in f])


def p_mul(base, f, g):
    if not f or not g:
        return []
    add, mul = base.sadd, base.smul
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = add(out[i + j], mul(a, b))
    return trim(out)


def p_shift(f, k=1):
    f = trim(f)
    return [0] * k + f if f else []


def p_divmod(base, f, g, lead_inv=None):
    """Divide ``f`` by ``g`` whose leading coefficient is invertible.

    ``lead_inv`` is the inverse of the leading coefficient; it defaults to
    requiring a monic divisor.
    """
    g = trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if lead_inv is None:
        if g[-1] != base.one:
            raise ValueError("divisor is not monic")
        lead_inv = base.one
    add, mul, neg = base.sadd, base.smul, base.sneg
    r = trim(f)
    dg = len(g) - 1
    q = [0] * max(len(r) - dg, 0)
    while len(r) - 1 >= dg and r:
        shift = len(r) - 1 - dg
        c = mul(r[-1], lead_inv)
        q[shift] = c
        for i, b in enumerate(g):
            r[i + shift] = add(r[i + shift], neg(mul(c, b)))
        r = trim(r)
    return trim(q), r


def p_mod(base, f, g, lead_inv=None):
    return p_divmod(base, f, g, lead_inv)[1]


def p_eval(base, f, x):
    add, mul = base.sadd, base.smul
    acc = 0
    for c in reversed(f):
        acc = add(mul(acc, x), c)
    return acc


def p_monic(base, f, inv):
    """Scale ``f`` over a field to be monic; ``inv`` maps units to inverses."""
    f = trim(f)
    if not f:
        return f
    return p_scale(base, inv[f[-1]], f)


def p_xgcd(base, f, g, inv):
    """Extended Euclid over a field: returns (d, s, t) with s*f + t*g = d monic."""
    r0, r1 = trim(f), trim(g)
    s0, s1 = [base.one], []
    t0, t1 = [], [base.one]
    while r1:
        q, r = p_divmod(base, r0, r1, inv[r1[-1]])
        r0, r1 = r1, r
        s0, s1 = s1, p_sub(base, s0, p_mul(base, q, s1))
        t0, t1 = t1, p_sub(base, t0, p_mul(base, q, t1))
    if not r0:
        return [], s0, t0
    c = inv[r0[-1]]
    return p_scale(base, c, r0), p_scale(base, c, s0), p_scale(base, c, t0)
