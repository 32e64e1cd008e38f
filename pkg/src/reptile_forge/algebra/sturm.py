"""Real root counting and isolation via Sturm sequences.

Sequences are kept as primitive integer polynomials; each pseudo-remainder
step divides out content (a positive factor, so the sign pattern that
Sturm's theorem relies on is untouched).
"""

from __future__ import annotations

from fractions import Fraction

from . import intpoly as ip
from .intpoly import Poly


def _strip_content(p: Poly) -> Poly:
    """Divide out the (positive) content; unlike primitive() the sign of the
    leading coefficient is preserved, which Sturm chains depend on."""
    if not p:
        return p
    g = ip.content(p)
    return tuple(a // g for a in p)


def sturm_sequence(p: Poly) -> list[Poly]:
    """Sturm chain of the squarefree part of p."""
    f = ip.squarefree_part(p)
    seq = [f, _strip_content(ip.derivative(f))]
    while seq[-1]:
        a, b = seq[-2], seq[-1]
        d = ip.degree(a) - ip.degree(b)
        if d < 0:
            raise AssertionError("degree must drop along the chain")
        lead = b[-1]
        # multiply by an even power of the leading coefficient so the
        # remainder keeps the sign of the exact rational remainder
        k = d + 1 if (d + 1) % 2 == 0 else d + 2
        r = tuple(c * lead**k for c in a)
        _, rem = ip.divmod_exact(r, b)
        rem_int = ip.poly(int(c) for c in rem)
        seq.append(_strip_content(ip.neg(rem_int)))
    seq.pop()
    return seq


def _variations(values: list[int]) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def variations_at(seq: list[Poly], x: Fraction) -> int:
    return _variations([ip.sign_at(q, x) for q in seq])


def count_roots(seq: list[Poly], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of the chain's polynomial in (lo, hi]."""
    if lo >= hi:
        return 0
    return variations_at(seq, lo) - variations_at(seq, hi)


def isolate_roots(
    p: Poly,
    lo: Fraction | None = None,
    hi: Fraction | None = None,
) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals, one per distinct real root of p in the
    open range (lo, hi); unbounded sides default to a Cauchy bound.

    A rational root r is reported as the degenerate interval (r, r); any
    other interval (a, b) has p(a) != 0 != p(b) and exactly one root inside.
    """
    if ip.is_zero(p):
        raise ValueError("undefined root set: zero polynomial")
    if ip.degree(p) == 0:
        return []
    f = ip.squarefree_part(p)
    bound = ip.root_bound(f)
    left = -bound if lo is None else Fraction(lo)
    right = bound if hi is None else Fraction(hi)
    if left >= right:
        return []
    seq = sturm_sequence(f)

    out: set[tuple[Fraction, Fraction]] = set()

    def walk(a: Fraction, b: Fraction, va: int, vb: int) -> None:
        # roots of f in the half-open interval (a, b]
        n = va - vb
        if n == 0:
            return
        if n == 1:
            if ip.sign_at(f, b) == 0:
                out.add((b, b))
                return
            while ip.sign_at(f, a) == 0:
                m = (a + b) / 2
                sm = ip.sign_at(f, m)
                if sm == 0:
                    out.add((m, m))
                    return
                vm = variations_at(seq, m)
                if vm - vb == 1:
                    a, va = m, vm
                else:
                    b, vb = m, vm
            out.add((a, b))
            return
        m = (a + b) / 2
        vm = variations_at(seq, m)
        walk(a, m, va, vm)
        walk(m, b, vm, vb)

    walk(left, right, variations_at(seq, left), variations_at(seq, right))
    # roots exactly at the requested endpoints are excluded (open range)
    return sorted(
        (a, b) for a, b in out if not (a == b and (a == left or a == right))
    )


def refine_root(p: Poly, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval of p below the requested width."""
    if lo == hi:
        return lo, hi
    slo = ip.sign_at(p, lo)
    shi = ip.sign_at(p, hi)
    if slo == 0 or shi == 0 or slo == shi:
        raise ValueError("not a sign-isolating interval")
    while hi - lo >= width:
        m = (lo + hi) / 2
        sm = ip.sign_at(p, m)
        if sm == 0:
            return m, m
        if sm == slo:
            lo = m
        else:
            hi = m
    return lo, hi


def simplest_in(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator (then numerator) in [lo, hi]."""
    if lo > hi:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_in(-hi, -lo)

    def rec(a: Fraction, b: Fraction) -> Fraction:
        ia = a.numerator // a.denominator
        if a.numerator % a.denominator == 0:
            return Fraction(ia)
        if ia < b.numerator // b.denominator or b.numerator % b.denominator == 0:
            return Fraction(ia + 1)
        fa = a - ia
        fb = b - ia
        return ia + 1 / rec(1 / fb, 1 / fa)

    return rec(lo, hi)


def rational_roots(p: Poly) -> list[Fraction]:
    """All rational roots of p, found exactly.

    Any rational root of the primitive part has denominator dividing the
    leading coefficient, so inside a sufficiently narrow isolating interval
    the simplest rational either is the root or proves there is none.
    """
    f = ip.squarefree_part(p)
    if ip.degree(f) < 1:
        return []
    den_bound = abs(f[-1])
    width = Fraction(1, 2 * den_bound * den_bound)
    roots = []
    for lo, hi in isolate_roots(f):
        if lo == hi:
            roots.append(lo)
            continue
        lo, hi = refine_root(f, lo, hi, width)
        if lo == hi:
            roots.append(lo)
            continue
        cand = simplest_in(lo, hi)
        if cand.denominator <= den_bound and ip.eval_at(f, cand) == 0:
            roots.append(cand)
    return roots
