"""Dense univariate integer polynomials.

A polynomial is a tuple of arbitrary-precision ints, lowest degree first,
with no trailing zero (the zero polynomial is the empty tuple).  All
routines are exact; anything that would need a fraction returns one.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Poly = tuple[int, ...]

ZERO: Poly = ()
ONE: Poly = (1,)
X: Poly = (0, 1)


def poly(coeffs) -> Poly:
    """Build a polynomial from any iterable of ints, stripping trailing zeros."""
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    for a in c:
        if not isinstance(a, int):
            raise TypeError(f"integer coefficient expected, got {type(a).__name__}")
    return tuple(c)


def degree(p: Poly) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(p) - 1


def is_zero(p: Poly) -> bool:
    return not p


def leading(p: Poly) -> int:
    if not p:
        raise ValueError("zero polynomial has no leading coefficient")
    return p[-1]


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def sub(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly((p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n))


def neg(p: Poly) -> Poly:
    return tuple(-a for a in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly(out)


def scale(p: Poly, c: int) -> Poly:
    if c == 0:
        return ZERO
    return tuple(a * c for a in p)


def pow_poly(p: Poly, n: int) -> Poly:
    out = ONE
    base = p
    while n:
        if n & 1:
            out = mul(out, base)
        base = mul(base, base)
        n >>= 1
    return out


def compose(p: Poly, q: Poly) -> Poly:
    """p(q(x)) by Horner over polynomials."""
    out: Poly = ZERO
    for a in reversed(p):
        out = add(mul(out, q), (a,) if a else ZERO)
    return out


def derivative(p: Poly) -> Poly:
    return poly(i * p[i] for i in range(1, len(p)))


def eval_at(p: Poly, x: Fraction | int) -> Fraction | int:
    out: Fraction | int = 0
    for a in reversed(p):
        out = out * x + a
    return out


def sign_at(p: Poly, x: Fraction | int) -> int:
    v = eval_at(p, x)
    return (v > 0) - (v < 0)


def content(p: Poly) -> int:
    g = 0
    for a in p:
        g = gcd(g, a)
        if g == 1:
            return 1
    return g


def primitive(p: Poly) -> Poly:
    """Primitive part with positive leading coefficient."""
    if not p:
        return ZERO
    g = content(p)
    if p[-1] < 0:
        g = -g
    return tuple(a // g for a in p)


def divmod_exact(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Division over the rationals, returned as (quotient, remainder) with
    Fraction arithmetic cleared only when exact; raises if inputs are not ints."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(a) for a in p]
    qc = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    dq = len(q) - 1
    lc = Fraction(q[-1])
    while len(rem) - 1 >= dq and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dq:
            break
        k = len(rem) - 1 - dq
        f = rem[-1] / lc
        qc[k] = f
        for i in range(len(q)):
            rem[k + i] -= f * q[i]
        rem.pop()
    while rem and rem[-1] == 0:
        rem.pop()
    return tuple(qc), tuple(rem)


def div_exact(p: Poly, q: Poly) -> Poly:
    """Exact division p / q over the integers; raises ValueError on nonzero remainder."""
    quo, rem = divmod_exact(p, q)
    if rem:
        raise ValueError("inexact polynomial division")
    out = []
    for c in quo:
        if c.denominator != 1:
            raise ValueError("quotient not integral")
        out.append(int(c))
    return poly(out)


def divides(q: Poly, p: Poly) -> bool:
    try:
        div_exact(p, q)
        return True
    except ValueError:
        return False


def gcd_poly(p: Poly, q: Poly) -> Poly:
    """Primitive gcd via a primitive remainder sequence."""
    a, b = primitive(p), primitive(q)
    if not a:
        return b
    if not b:
        return a
    while b:
        # fraction-free pseudo-remainder, then strip content
        d = degree(a) - degree(b)
        if d < 0:
            a, b = b, a
            continue
        lead = b[-1]
        r = tuple(c * lead ** (d + 1) for c in a)
        _, rem = divmod_exact(r, b)
        rem_int = poly(int(c) for c in rem)
        a, b = b, primitive(rem_int)
    return primitive(a)


def squarefree_part(p: Poly) -> Poly:
    """p with repeated roots collapsed to simple ones (primitive)."""
    if degree(p) <= 1:
        return primitive(p)
    g = gcd_poly(p, derivative(p))
    if degree(g) == 0:
        return primitive(p)
    return primitive(div_exact(primitive(p), g))


def compose_linear(p: Poly, a: int, b: int, c: int = 1) -> Poly:
    """c^deg(p) * p((a*x + b) / c) as an integer polynomial.

    Used for exact shifts and rescalings of minimal polynomials: the image
    of an irreducible polynomial under an invertible affine substitution
    stays irreducible.
    """
    if c == 0 or a == 0:
        raise ValueError("substitution must be invertible")
    n = degree(p)
    if n < 0:
        return ZERO
    out: Poly = ZERO
    lin: Poly = (b, a)
    cp = 1
    for k in range(n, -1, -1):
        out = mul(out, lin)
        if p[k]:
            out = add(out, (p[k] * cp,))
        cp *= c
    return out


def reverse(p: Poly) -> Poly:
    """x^deg(p) * p(1/x); maps roots to their inverses."""
    return poly(reversed(p))


def monicize(p: Poly) -> tuple[Poly, int]:
    """Return (q, lc) where q is monic with integer coefficients and the
    roots of q are exactly lc * (roots of p)."""
    n = degree(p)
    if n < 0:
        raise ValueError("zero polynomial")
    lc = p[-1]
    if lc == 1:
        return p, 1
    q = [p[i] * lc ** (n - 1 - i) for i in range(n)]
    q.append(1)
    return poly(q), lc


def sylvester_resultant(p: Poly, q: Poly) -> int:
    """Resultant of two integer polynomials via fraction-free Bareiss."""
    m, n = degree(p), degree(q)
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return p[0] ** n
    if n == 0:
        return q[0] ** m
    size = m + n
    rows: list[list[int]] = []
    pc = list(reversed(p))
    qc = list(reversed(q))
    for i in range(n):
        rows.append([0] * i + pc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qc + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def _bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every real root lies in (-B, B)."""
    if degree(p) < 0:
        raise ValueError("zero polynomial")
    lc = abs(p[-1])
    m = max((abs(a) for a in p[:-1]), default=0)
    return Fraction(m, lc) + 1


def to_string(p: Poly, var: str = "x") -> str:
    if not p:
        return "0"
    parts = []
    for i in range(degree(p), -1, -1):
        a = p[i]
        if a == 0:
            continue
        if i == 0:
            term = str(abs(a))
        else:
            coeff = "" if abs(a) == 1 else f"{abs(a)}*"
            term = f"{coeff}{var}" + (f"^{i}" if i > 1 else "")
        if not parts:
            parts.append(("-" if a < 0 else "") + term)
        else:
            parts.append(("- " if a < 0 else "+ ") + term)
    return " ".join(parts)
