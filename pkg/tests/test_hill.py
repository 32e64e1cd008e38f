"""Hill simplices, subdivisions, the exact reptile verifier, growth."""

import random
from fractions import Fraction

import pytest

from reptile_forge.hill import (
    GrowthReport,
    HillSpec,
    Subdivision,
    grow_space_tiling,
    hill_simplex,
    interiors_disjoint,
    subdivide,
    verify_reptile,
)
from reptile_forge.simplex import Simplex, congruent, dihedral_data, orthoscheme, similar, volume


def random_rational_hill_spec(rng: random.Random) -> HillSpec:
    """Cyclic integer triples give rational Hill bases with a shared angle."""
    while True:
        a, b, c = (rng.randint(0, 5) for _ in range(3))
        basis = [(a, b, c), (c, a, b), (b, c, a)]
        try:
            return HillSpec.from_basis(basis)
        except ValueError:
            continue


class TestHillSpec:
    def test_orthonormal(self):
        spec = HillSpec.from_pair_cos(3, Fraction(0))
        assert spec.mode == "exact" and spec.pair_cos == 0

    def test_rational_circulant_for_half(self):
        spec = HillSpec.from_pair_cos(3, Fraction(1, 2))
        assert spec.mode == "exact" and spec.pair_cos == Fraction(1, 2)

    def test_float_fallback(self):
        spec = HillSpec.from_pair_cos(3, Fraction(1, 3))
        assert spec.mode == "float"
        assert spec.pair_cos == pytest.approx(1 / 3)

    def test_boundary_angle_rejected(self):
        with pytest.raises(ValueError, match="2\\*pi/3|positive definite"):
            HillSpec.from_pair_cos(3, Fraction(-1, 2))
        with pytest.raises(ValueError):
            HillSpec.from_pair_cos(3, Fraction(1))

    def test_unequal_lengths_rejected(self):
        with pytest.raises(ValueError, match="equal length"):
            HillSpec.from_basis([(1, 0, 0), (0, 2, 0), (0, 0, 1)])

    def test_hill_simplex_is_orthoscheme_for_standard_basis(self):
        s = hill_simplex(HillSpec.from_pair_cos(3, Fraction(0)))
        assert s.vertices == orthoscheme(3).vertices


class TestSubdivide:
    def test_eight_pieces(self):
        sub = subdivide(HillSpec.from_pair_cos(3, Fraction(0)), 2)
        assert len(sub.pieces) == 8
        assert all(volume(p) == Fraction(1, 48) for p in sub.pieces)

    def test_27_pieces(self):
        sub = subdivide(HillSpec.from_pair_cos(3, Fraction(0)), 3)
        assert len(sub.pieces) == 27
        assert all(volume(p) == Fraction(1, 162) for p in sub.pieces)

    def test_d2_classic_four_reptile(self):
        sub = subdivide(HillSpec.from_pair_cos(2, Fraction(0)), 2)
        assert len(sub.pieces) == 4

    def test_m_guard(self):
        with pytest.raises(ValueError):
            subdivide(HillSpec.from_pair_cos(3, Fraction(0)), 1)

    def test_json_round_trip(self):
        sub = subdivide(HillSpec.from_pair_cos(3, Fraction(0)), 2)
        again = Subdivision.from_json(sub.to_json())
        assert again.m == 2
        assert again.parent.vertices == sub.parent.vertices
        assert [p.vertices for p in again.pieces] == [p.vertices for p in sub.pieces]


class TestVerifyReptile:
    @pytest.mark.parametrize("dim,m", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3)])
    def test_orthonormal_bases_pass(self, dim, m):
        sub = subdivide(HillSpec.from_pair_cos(dim, Fraction(0)), m)
        rep = verify_reptile(sub)
        assert rep.all_ok, rep.witnesses
        assert rep.piece_count == m**dim
        assert rep.measured_ratio == Fraction(1, m)

    def test_random_rational_hill_bases(self):
        rng = random.Random(12)
        for i in range(5):
            spec = random_rational_hill_spec(rng)
            for m in (2, 3) if i < 2 else (2,):
                rep = verify_reptile(subdivide(spec, m))
                assert rep.all_ok, (spec, m, rep.witnesses)

    def test_pieces_share_parent_angles(self):
        sub = subdivide(HillSpec.from_pair_cos(3, Fraction(1, 2)), 2)
        parent_angles = sorted(float(c) for c in dihedral_data(sub.parent).facet_cos.values())
        for p in sub.pieces[:3]:
            angles = sorted(float(c) for c in dihedral_data(p).facet_cos.values())
            assert angles == pytest.approx(parent_angles, abs=1e-12)

    def test_corrupted_piece_caught(self):
        sub = subdivide(HillSpec.from_pair_cos(3, Fraction(0)), 2)
        pieces = list(sub.pieces)
        verts = [list(v) for v in pieces[5].vertices]
        verts[1][2] += Fraction(1, 13)
        pieces[5] = Simplex.exact(verts)
        rep = verify_reptile(Subdivision(sub.parent, tuple(pieces), 2))
        assert not rep.all_ok
        assert rep.witnesses

    def test_overlapping_pieces_witnessed(self):
        sub = subdivide(HillSpec.from_pair_cos(3, Fraction(0)), 2)
        pieces = list(sub.pieces)
        pieces[1] = pieces[0].translated((Fraction(1, 100), 0, 0))
        rep = verify_reptile(Subdivision(sub.parent, tuple(pieces), 2))
        assert not rep.disjointness_ok
        assert "interior_disjointness" in rep.witnesses

    def test_float_mode_verification(self):
        spec = HillSpec.from_pair_cos(3, Fraction(1, 3))
        rep = verify_reptile(subdivide(spec, 2))
        assert rep.all_ok and rep.mode == "float"

    def test_chirality_split_recorded(self):
        rep = verify_reptile(subdivide(HillSpec.from_pair_cos(3, Fraction(0)), 2))
        split = rep.chirality
        assert split["orientation_preserving"] + split["mirrored"] == 8
        assert split["mirrored"] > 0  # the staircase scheme uses mirrored cells


class TestInteriorsDisjoint:
    def test_far_apart(self):
        a = orthoscheme(3)
        b = a.translated((10, 0, 0))
        assert interiors_disjoint(a, b) == (True, None)

    def test_face_neighbors(self):
        sub = subdivide(HillSpec.from_pair_cos(3, Fraction(0)), 2)
        ok, _ = interiors_disjoint(sub.pieces[0], sub.pieces[1])
        assert ok

    def test_overlap_witness_point(self):
        a = orthoscheme(3)
        b = a.translated((Fraction(1, 50), 0, 0))
        ok, point = interiors_disjoint(a, b)
        assert not ok
        assert a.contains_point(point, strict=True)
        assert b.contains_point(point, strict=True)

    def test_self_overlap(self):
        a = orthoscheme(3)
        ok, point = interiors_disjoint(a, a)
        assert not ok and point is not None


class TestGrow:
    def test_one_generation_matches_subdivide(self):
        spec = HillSpec.from_pair_cos(3, Fraction(0))
        cells, rep = grow_space_tiling(spec, 1, m=2)
        sub = subdivide(spec, 2)
        assert len(cells) == 8
        # generation cells are the subdivision scaled back to parent size
        assert congruent(cells[0].scaled(Fraction(1, 2)), sub.pieces[0])
        assert rep.cell_total == 8 and not rep.truncated

    def test_two_generations(self):
        spec = HillSpec.from_pair_cos(3, Fraction(0))
        cells, rep = grow_space_tiling(spec, 2, m=2)
        assert rep.cell_total == 64 and rep.cells_emitted == 64
        assert rep.volume_emitted == rep.volume_expected
        assert rep.sampled_disjoint_ok
        assert rep.adjacency["touching"] + rep.adjacency["separated"] == rep.sampled_pairs

    def test_budget_truncation(self):
        spec = HillSpec.from_pair_cos(3, Fraction(0))
        cells, rep = grow_space_tiling(spec, 2, m=2, budget=10)
        assert rep.truncated and rep.cells_emitted == 10

    def test_four_generations_sampled(self):
        spec = HillSpec.from_pair_cos(3, Fraction(0))
        cells, rep = grow_space_tiling(spec, 4, m=2, budget=500, sample_pairs=100)
        assert rep.cell_total == 4096
        assert rep.truncated and rep.cells_emitted == 500
        assert rep.sampled_disjoint_ok
