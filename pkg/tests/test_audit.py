"""The machine-checked case analysis: steps, certificates, replay."""

from fractions import Fraction

import pytest

from reptile_forge.algebra import Golden, MPoly, PHI
from reptile_forge.audit import (
    AuditStep,
    beta_constraints_step,
    bound_chain_step,
    canonical_json,
    exclude_pi_over_5_step,
    final_cases_step,
    hill_construction_step,
    is_perfect_cube,
    multiples_case_step,
    path_complement_step,
    path_det_factorization_step,
    rho_degree_step,
    run_full_audit,
    run_step,
    tripod_identity_step,
    two_length_step,
    verify_report,
    verify_step,
)
from reptile_forge.fiedler import multiples_matrix_symbolic, tripod_matrix_symbolic


class TestRhoDegree:
    def test_k2_pass(self):
        s = rho_degree_step(2)
        assert s.verdict == "pass" and s.certificate["irreducible"]

    def test_k8_inapplicable(self):
        s = rho_degree_step(8)
        assert s.verdict == "inapplicable"
        assert s.certificate["cube_root"] == 2

    def test_k7_pass(self):
        # oracle: no rational root among the divisor candidates +-1, +-1/7
        for cand in (1, -1, Fraction(1, 7), Fraction(-1, 7)):
            assert 7 * cand**3 - 1 != 0
        s = rho_degree_step(7)
        assert s.verdict == "pass"

    def test_verifier(self):
        assert verify_step(rho_degree_step(5))
        assert verify_step(rho_degree_step(27))


class TestTwoLength:
    def test_k2_bound_10(self):
        s = two_length_step(2, 10)
        assert s.verdict == "pass"
        assert s.certificate["systems_checked"] + s.certificate["degenerate_skipped"] == 11**4
        assert Fraction(s.certificate["min_abs_residual"]) > 0

    def test_k5_bound_6(self):
        s = two_length_step(5, 6)
        assert s.verdict == "pass"

    def test_cube_rejected(self):
        with pytest.raises(ValueError):
            two_length_step(8)

    def test_verifier(self):
        assert verify_step(two_length_step(3, 6))


class TestSymbolicSteps:
    def test_tripod_identity(self):
        s = tripod_identity_step()
        assert s.verdict == "pass" and s.certificate["identical"]
        assert s.certificate["spot_values"][0] == s.certificate["spot_values"][1]

    def test_tripod_negative_control(self):
        rows = tripod_matrix_symbolic()
        vars = rows[0][0].vars
        t = MPoly.variable(vars, "t", Golden.of(1))
        rows[0][1] = -t
        rows[1][0] = -t
        s = tripod_identity_step(rows)
        assert s.verdict == "fail"

    def test_multiples_case(self):
        s = multiples_case_step()
        assert s.verdict == "pass"
        assert s.certificate["forced_multiplier"]["4"] == [3]
        assert s.certificate["single_vertex_subcase"]["holds"]

    def test_multiples_negative_control(self):
        rows = multiples_matrix_symbolic()
        vars = rows[0][0].vars
        one = MPoly.constant(vars, Golden.of(1))
        rows[0][0] = one  # break the diagonal
        s = multiples_case_step(rows)
        assert s.verdict == "fail"

    def test_path_complement(self):
        s = path_complement_step()
        assert s.verdict == "pass"
        assert s.certificate["spot_check"]["row_sum"][1] == "-1/3+0*phi"

    def test_beta_constraints(self):
        s = beta_constraints_step()
        assert s.verdict == "pass"
        cases = {(c["n1"], c["n2"]): c["feasible"] for c in s.certificate["cases"]}
        assert cases[(1, 2)] is False
        assert cases[(2, 1)] is False
        assert s.certificate["survivor"]["feasible"] is True

    def test_path_det_factorization(self):
        s = path_det_factorization_step()
        assert s.verdict == "pass"
        assert s.certificate["identity_cleared_form"]
        assert s.certificate["identity_eigen_form"]
        assert s.certificate["lambda1_divides_charpoly"]
        assert s.certificate["lambda1_at_pi5_point"] == "-1/2+0*phi"

    def test_verifiers(self):
        for step in (
            tripod_identity_step(),
            multiples_case_step(),
            path_complement_step(),
            beta_constraints_step(),
            path_det_factorization_step(),
        ):
            assert verify_step(step), step.id


class TestBoundChain:
    def test_pass_and_enclosure(self):
        s = bound_chain_step()
        assert s.verdict == "pass"
        lo, hi = (Fraction(x) for x in s.certificate["bound_enclosure"])
        assert Fraction(-428, 1000) < lo < hi < Fraction(-427, 1000)
        assert s.certificate["bound_minpoly"] == [-5, -10, 4]  # 4x^2 - 10x - 5
        assert s.certificate["n_candidates"] == [3, 4, 5]
        assert verify_step(s)

    def test_exact_bound_value(self):
        s = bound_chain_step()
        g = Golden.from_json(s.certificate["exact_bound"])
        assert g == Golden.of(2) - PHI * Fraction(3, 2)


class TestExcludePiOver5:
    def test_pass(self):
        s = exclude_pi_over_5_step()
        assert s.verdict == "pass"
        assert s.certificate["t_minpoly"] == [-1, -2, 4]
        assert s.certificate["boundary_is_zero"]
        assert verify_step(s)

    def test_negative_control_half(self):
        # with t = 1/2 the eigenvalue at the threshold is not zero, so the
        # same argument cannot force a contradiction there
        from reptile_forge.fiedler import path_eigenvalue_symbolic

        lam1 = path_eigenvalue_symbolic(("s", "t"))
        inv2phi = Golden.of(Fraction(1, 2)) - PHI * Fraction(1, 2)  # (1-phi)/2 = -1/(2phi)
        val = lam1.evaluate({"s": inv2phi, "t": Golden.of(Fraction(1, 2))})
        assert val  # nonzero


class TestFinalCases:
    def test_all_three_t_values(self):
        s = final_cases_step()
        assert s.verdict == "pass"
        by_t = {c["t"]: c for c in s.certificate["cases"]}
        assert set(by_t) == {"0", "1/2", "1/sqrt2"}
        for case in by_t.values():
            assert case["root_count_ok"] and len(case["roots"]) == 2
            for rec in case["roots"]:
                assert rec["within_0.001"]
                assert rec["rational_angle_match"] is None
                assert Fraction(rec["min_catalog_gap"]) > 0

    def test_t0_roots_are_golden(self):
        s = final_cases_step()
        case = next(c for c in s.certificate["cases"] if c["t"] == "0")
        mps = sorted(tuple(r["minpoly"]) for r in case["roots"])
        assert mps == [(-1, -1, 1), (-1, 1, 1)]  # x^2 +- x - 1

    def test_quartic_case_degrees(self):
        s = final_cases_step()
        case = next(c for c in s.certificate["cases"] if c["t"] == "1/sqrt2")
        for rec in case["roots"]:
            assert len(rec["minpoly"]) == 5  # quartic irrationalities

    def test_verifier(self):
        assert verify_step(final_cases_step())


class TestHillConstruction:
    def test_k8(self):
        s = hill_construction_step(8)
        assert s.verdict == "pass"
        assert s.certificate["reptile_report"]["all_ok"]
        assert verify_step(s)

    def test_non_cube_rejected(self):
        with pytest.raises(ValueError):
            hill_construction_step(7)


class TestFullAudit:
    def test_kmax_7_all_excluded(self):
        reports = run_full_audit(7)
        assert [r.k for r in reports] == [2, 3, 4, 5, 6, 7]
        assert all(r.conclusion == "excluded" for r in reports)
        for r in reports:
            assert all(s.verdict == "pass" for s in r.steps)

    def test_kmax_8_annotates_cube(self):
        reports = run_full_audit(8)
        cube = reports[-1]
        assert cube.k == 8
        assert "2^3" in cube.conclusion
        assert any(s.id == "hill-construction" and s.verdict == "pass" for s in cube.steps)

    def test_kmax_10_mixed_range(self):
        reports = {r.k: r for r in run_full_audit(10)}
        assert reports[9].conclusion == "excluded"
        assert reports[10].conclusion == "excluded"
        assert "2^3" in reports[8].conclusion

    def test_range_guard(self):
        with pytest.raises(ValueError, match="empty audit range"):
            run_full_audit(1)

    def test_deterministic_output(self):
        a = canonical_json([r.to_json() for r in run_full_audit(5)])
        b = canonical_json([r.to_json() for r in run_full_audit(5)])
        assert a == b

    def test_independent_checker_validates_everything(self):
        for r in run_full_audit(8):
            assert verify_report(r), r.k

    def test_assumption_recorded(self):
        reports = run_full_audit(3)
        assert any("rational multiple of pi" in a for a in reports[0].assumptions)


class TestRunStep:
    def test_dispatch(self):
        s = run_step("tripod-identity")
        assert s.id == "tripod-identity"
        s = run_step("rho-degree", k=5)
        assert s.inputs["k"] == 5

    def test_k_required(self):
        with pytest.raises(ValueError, match="needs k"):
            run_step("two-length")

    def test_unknown_id(self):
        with pytest.raises(ValueError, match="unknown step"):
            run_step("no-such-step")


class TestCubeDetection:
    @pytest.mark.parametrize("k,expect", [(2, False), (7, False), (8, True), (27, True), (26, False), (1000, True)])
    def test_is_perfect_cube(self, k, expect):
        assert is_perfect_cube(k) is expect


class TestIdentitiesAtRandomPoints:
    def test_twenty_random_rational_points(self):
        import random

        from reptile_forge.algebra import INV_PHI, INV_PHI2, determinant
        from reptile_forge.fiedler import (
            char_poly_symbolic,
            path_eigenvalue_symbolic,
            path_matrix_symbolic,
        )

        rng = random.Random(424242)
        vars = ("s", "t", "L")
        tripod = tripod_matrix_symbolic(vars)
        tripod_det = __import__("reptile_forge.algebra", fromlist=["determinant"]).determinant(
            tripod
        )
        path = path_matrix_symbolic(vars)
        path_det = determinant(path)
        cp = char_poly_symbolic(path, "L")
        lam1 = path_eigenvalue_symbolic(vars)
        from reptile_forge.algebra import MPoly, PHI

        s_var = MPoly.variable(vars, "s", Golden.of(1))
        t_var = MPoly.variable(vars, "t", Golden.of(1))
        one = MPoly.constant(vars, Golden.of(1))
        f1 = s_var**2 + t_var**2 + s_var * t_var + s_var + t_var - one
        f2 = s_var - MPoly.constant(vars, INV_PHI2) * t_var + MPoly.constant(vars, INV_PHI)
        f3 = t_var - MPoly.constant(vars, INV_PHI2) * s_var + MPoly.constant(vars, INV_PHI)
        phi2 = MPoly.constant(vars, PHI * PHI)
        rhs_path = -(phi2 * f1 * f2 * f3)
        for _ in range(20):
            s0 = Golden.of(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
            t0 = Golden.of(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
            at = {"s": s0, "t": t0, "L": Golden.of(0)}
            # tripod determinant factorization
            lhs = tripod_det.evaluate(at)
            rhs = ((one + s_var) ** 2 * (one - 2 * s_var - 3 * t_var**2)).evaluate(at)
            assert lhs == rhs
            # path determinant factorization
            assert path_det.evaluate(at) == rhs_path.evaluate(at)
            # the eigenvalue is a characteristic-polynomial root
            lam_val = lam1.evaluate(at)
            assert not cp.evaluate({"s": s0, "t": t0, "L": lam_val})
