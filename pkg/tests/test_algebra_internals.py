"""Direct coverage for the field helpers behind the audit machinery."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reptile_forge.algebra import INV_PHI, INV_PHI2, PHI, AlgebraicReal, Golden, MPoly
from reptile_forge.algebra import numberfield as nf
from reptile_forge.algebra.enclosure import acos_fraction_bounds, cos_bounds, pi_bounds

SQRT2_MP = (-2, 0, 1)
GOLDEN_MP = (-1, -1, 1)


class TestNumberField:
    def test_reduction(self):
        # x^2 reduces to 2 in Q[x]/(x^2 - 2)
        assert nf.element([0, 0, 1], SQRT2_MP) == (Fraction(2), Fraction(0))
        # x^3 = 2x
        assert nf.element([0, 0, 0, 1], SQRT2_MP) == (Fraction(0), Fraction(2))

    def test_mul_inverse(self):
        a = nf.element([1, 1], SQRT2_MP)  # 1 + sqrt2
        inv = nf.inverse(a, SQRT2_MP)
        assert nf.mul(a, inv, SQRT2_MP) == nf.one(SQRT2_MP)
        # (1 + sqrt2)^-1 = sqrt2 - 1
        assert inv == (Fraction(-1), Fraction(1))

    def test_division(self):
        a = nf.element([0, 1], GOLDEN_MP)  # phi
        b = nf.element([1, 1], GOLDEN_MP)  # 1 + phi = phi^2
        assert nf.div(b, a, GOLDEN_MP) == a  # phi^2 / phi = phi

    def test_zero_inverse_rejected(self):
        with pytest.raises(ZeroDivisionError):
            nf.inverse(nf.zero(SQRT2_MP), SQRT2_MP)

    def test_to_algebraic(self):
        gen = AlgebraicReal.sqrt_rational(2)
        val = nf.to_algebraic(nf.element([Fraction(1, 2), Fraction(3)], SQRT2_MP), gen)
        # 1/2 + 3 sqrt2
        assert float(val) == pytest.approx(0.5 + 3 * 2**0.5, abs=1e-12)

    def test_poly_gcd_picks_shared_conjugate(self):
        # D(t) = t - phi over Q(phi): gcd with t^2 - t - 1 is t - phi
        phi_elt = nf.element([0, 1], GOLDEN_MP)
        d = [tuple(-c for c in phi_elt), nf.one(GOLDEN_MP)]
        m = [nf.element([c], GOLDEN_MP) for c in GOLDEN_MP]
        g = nf.poly_gcd_in_t(d, m, GOLDEN_MP)
        assert len(g) == 2  # linear
        assert g[1] == nf.one(GOLDEN_MP)
        assert g[0] == tuple(-c for c in phi_elt)

    def test_poly_gcd_trivial_when_no_shared_root(self):
        d = [nf.element([5], GOLDEN_MP), nf.one(GOLDEN_MP)]  # t + 5
        m = [nf.element([c], GOLDEN_MP) for c in GOLDEN_MP]
        g = nf.poly_gcd_in_t(d, m, GOLDEN_MP)
        assert len(g) == 1

    @settings(max_examples=60, deadline=None)
    @given(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))
    def test_field_axioms_sample(self, a0, a1, b0, b1):
        a = nf.element([a0, a1], SQRT2_MP)
        b = nf.element([b0, b1], SQRT2_MP)
        assert nf.mul(a, b, SQRT2_MP) == nf.mul(b, a, SQRT2_MP)
        if not nf.is_zero(b):
            q = nf.div(a, b, SQRT2_MP)
            assert nf.mul(q, b, SQRT2_MP) == a


class TestGolden:
    def test_defining_identity(self):
        assert PHI * PHI == PHI + 1
        assert INV_PHI == PHI - 1
        assert INV_PHI2 == 1 / (PHI * PHI)

    def test_sign_near_zero(self):
        tiny = Golden(Fraction(-1), Fraction(10**9, 1618033989))  # close to 0
        assert tiny.sign() in (-1, 0, 1)
        assert Golden(Fraction(0), Fraction(0)).sign() == 0
        # b*phi + a = 0 only for a = b = 0
        assert Golden(Fraction(-8), Fraction(5)).sign() == (1 if 5 * 1.618 > 8 else -1)

    def test_to_algebraic_round_trip(self):
        g = Golden(Fraction(2), Fraction(-3, 2))
        x = g.to_algebraic()
        assert float(x) == pytest.approx(float(g), abs=1e-12)

    def test_json_round_trip(self):
        g = Golden(Fraction(-7, 3), Fraction(5, 11))
        assert Golden.from_json(g.to_json()) == g

    @settings(max_examples=80, deadline=None)
    @given(
        st.fractions(-5, 5, max_denominator=40),
        st.fractions(-5, 5, max_denominator=40),
        st.fractions(-5, 5, max_denominator=40),
        st.fractions(-5, 5, max_denominator=40),
    )
    def test_field_ops_match_floats(self, a, b, c, d):
        x, y = Golden(a, b), Golden(c, d)
        assert float(x + y) == pytest.approx(float(x) + float(y), rel=1e-9, abs=1e-9)
        assert float(x * y) == pytest.approx(float(x) * float(y), rel=1e-9, abs=1e-9)
        if y and abs(float(y)) > 1e-6:
            assert float(x / y) == pytest.approx(float(x) / float(y), rel=1e-6, abs=1e-6)


class TestMPoly:
    V = ("s", "t")

    def test_ring_identities(self):
        s = MPoly.variable(self.V, "s")
        t = MPoly.variable(self.V, "t")
        one = MPoly.constant(self.V, Fraction(1))
        assert (s + t) ** 2 == s**2 + 2 * s * t + t**2
        assert (s - s).is_zero
        assert (s + one) * (s - one) == s**2 - one

    def test_substitute_partial(self):
        s = MPoly.variable(self.V, "s")
        t = MPoly.variable(self.V, "t")
        p = s**2 + t
        q = p.substitute({"t": Fraction(3)})
        assert q == s**2 + MPoly.constant(self.V, Fraction(3))

    def test_evaluate_requires_all_vars(self):
        s = MPoly.variable(self.V, "s")
        with pytest.raises(ValueError, match="unbound"):
            s.evaluate({"s": Fraction(1)} | {})
        # both bound works
        t = MPoly.variable(self.V, "t")
        assert (s * t).evaluate({"s": Fraction(2), "t": Fraction(5)}) == 10

    def test_coefficients_in(self):
        s = MPoly.variable(self.V, "s")
        t = MPoly.variable(self.V, "t")
        p = s**2 * t + s * t + MPoly.constant(self.V, Fraction(7))
        coeffs = p.coefficients_in("s")
        assert len(coeffs) == 3
        assert coeffs[0] == MPoly.constant(("t",), Fraction(7))

    def test_mixed_variable_sets_rejected(self):
        s = MPoly.variable(("s",), "s")
        t = MPoly.variable(("t",), "t")
        with pytest.raises(ValueError, match="mixed"):
            s + t


class TestEnclosures:
    def test_pi_tightens(self):
        w1 = pi_bounds(Fraction(1, 10**6))
        w2 = pi_bounds(Fraction(1, 10**30))
        assert w2[1] - w2[0] < Fraction(1, 10**30)
        assert w1[0] <= w2[0] and w2[1] <= w1[1]

    def test_cos_bracket_contains_truth(self):
        import math

        for num, den in [(1, 3), (7, 5), (22, 7), (-3, 2)]:
            lo, hi = cos_bounds(Fraction(num, den), Fraction(1, 10**12))
            assert float(lo) <= math.cos(num / den) <= float(hi)

    def test_acos_near_minus_one(self):
        import math

        lo, hi = acos_fraction_bounds(Fraction(-999999, 10**6), Fraction(1, 10**4))
        assert float(lo) <= math.acos(-0.999999) <= float(hi)

    def test_acos_endpoints(self):
        assert acos_fraction_bounds(Fraction(1), Fraction(1, 100)) == (0, 0)
        lo, hi = acos_fraction_bounds(Fraction(-1), Fraction(1, 100))
        import math

        assert float(lo) <= math.pi <= float(hi)
