"""Arithmetic inside a fixed number field Q[x]/(m(x)).

Elements are tuples of Fractions (coordinates in the power basis of one
fixed irreducible minimal polynomial).  Unlike the generic resultant
arithmetic, operations here never grow the degree, which is what the
determinant evaluations at specific algebraic points need.
"""

from __future__ import annotations

from fractions import Fraction

from . import intpoly as ip
from .intpoly import Poly

Vec = tuple[Fraction, ...]


def element(coeffs, minpoly: Poly) -> Vec:
    """Reduce a rational coefficient list modulo the field polynomial."""
    n = ip.degree(minpoly)
    cs = [Fraction(c) for c in coeffs]
    lead = Fraction(minpoly[-1])
    # reduce from the top: x^k = -(lower terms)/lc * x^(k-n) ...
    while len(cs) > n:
        top = cs.pop()
        if top == 0:
            continue
        k = len(cs) - n  # exponent offset after removing x^(len)
        f = top / lead
        for i in range(n):
            cs[k + i] -= f * minpoly[i]
    cs += [Fraction(0)] * (n - len(cs))
    return tuple(cs)


def zero(minpoly: Poly) -> Vec:
    return tuple([Fraction(0)] * ip.degree(minpoly))


def one(minpoly: Poly) -> Vec:
    return element([1], minpoly)


def is_zero(a: Vec) -> bool:
    return all(c == 0 for c in a)


def add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def mul(a: Vec, b: Vec, minpoly: Poly) -> Vec:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return element(out, minpoly)


def scale(a: Vec, c: Fraction) -> Vec:
    return tuple(x * c for x in a)


def inverse(a: Vec, minpoly: Poly) -> Vec:
    """Inverse modulo the field polynomial by the extended Euclid algorithm."""
    if is_zero(a):
        raise ZeroDivisionError("inverse of zero in number field")
    # work over Q[x]
    r0 = [Fraction(c) for c in minpoly]
    r1 = list(a)
    while r1 and r1[-1] == 0:
        r1.pop()
    s0, s1 = [Fraction(0)], [Fraction(1)]

    def poly_trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def poly_sub(p, q):
        out = [Fraction(0)] * max(len(p), len(q))
        for i, c in enumerate(p):
            out[i] += c
        for i, c in enumerate(q):
            out[i] -= c
        return poly_trim(out)

    def poly_mul(p, q):
        if not p or not q:
            return []
        out = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, c in enumerate(p):
            if c:
                for j, d in enumerate(q):
                    out[i + j] += c * d
        return poly_trim(out)

    def poly_divmod(p, q):
        p = list(p)
        quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
        while len(p) >= len(q) and poly_trim(p):
            k = len(p) - len(q)
            f = p[-1] / q[-1]
            quo[k] = f
            for i in range(len(q)):
                p[k + i] -= f * q[i]
            poly_trim(p)
        return poly_trim(quo), poly_trim(p)

    while poly_trim(r1):
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is a zero divisor (minimal polynomial reducible?)")
    inv_lead = 1 / r0[0]
    return element([c * inv_lead for c in s0], minpoly)


def div(a: Vec, b: Vec, minpoly: Poly) -> Vec:
    return mul(a, inverse(b, minpoly), minpoly)


def to_algebraic(a: Vec, generator):
    """Evaluate the coordinate vector at an exact generator value."""
    import math

    from .algebraic import AlgebraicReal

    den = math.lcm(*(c.denominator for c in a)) if a else 1
    ints = ip.poly(int(c * den) for c in a)
    if not ints:
        return AlgebraicReal.from_rational(0)
    img = generator.poly_image(ints)
    return img * Fraction(1, den)


def poly_gcd_in_t(p: list[Vec], q: list[Vec], minpoly: Poly) -> list[Vec]:
    """Monic gcd of two polynomials in t whose coefficients live in the field.

    Inputs are coefficient lists (low first) of field elements; the result
    is monic (leading coefficient = field one).
    """

    def trim(u: list[Vec]) -> list[Vec]:
        while u and is_zero(u[-1]):
            u.pop()
        return u

    def make_monic(u: list[Vec]) -> list[Vec]:
        inv = inverse(u[-1], minpoly)
        return [mul(c, inv, minpoly) for c in u]

    a = trim(list(p))
    b = trim(list(q))
    while b:
        # remainder of a modulo b
        a = list(a)
        while len(a) >= len(b) and trim(a):
            k = len(a) - len(b)
            f = div(a[-1], b[-1], minpoly)
            for i in range(len(b)):
                a[k + i] = sub(a[k + i], mul(f, b[i], minpoly))
            trim(a)
        a, b = b, trim(a)
    return make_monic(a) if a else []
