"""Hill simplices and their m^d reptile subdivisions, with an exact verifier.

A Hill simplex is the convex hull of the prefix sums of d equal-length
vectors sharing one pairwise angle in (0, 2*pi/3).  In basis coordinates
it is the order region {1 >= y_1 >= ... >= y_d >= 0}; cutting by the
hyperplane families y_i = j/m and y_i - y_j = l/m tiles it with m^d
staircase cells, each similar to the parent with ratio 1/m.  The verifier,
not the generator, carries the correctness burden: volume accounting,
similarity, mutual congruence, pairwise interior disjointness (an exact
rational feasibility program per pair), and containment are all certified.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product

from .simplex import FLOAT_TOL, Simplex, congruent, similar, volume


@dataclass(frozen=True)
class HillSpec:
    """Basis data for a Hill simplex.

    All basis vectors share one squared length and one pairwise inner
    product; the common angle must lie strictly inside (0, 2*pi/3) and the
    Gram matrix must be positive definite.
    """

    dim: int
    basis: tuple
    mode: str = "exact"

    def __post_init__(self):
        d = self.dim
        if not 2 <= d <= 4:
            raise ValueError("supported dimensions are 2, 3, 4")
        if len(self.basis) != d or any(len(b) != d for b in self.basis):
            raise ValueError("need d basis vectors of arity d")
        norms = [sum(x * x for x in b) for b in self.basis]
        dots = [
            sum(x * y for x, y in zip(self.basis[i], self.basis[j]))
            for i, j in combinations(range(d), 2)
        ]
        if self.mode == "exact":
            if any(n != norms[0] for n in norms):
                raise ValueError("basis vectors must have equal length")
            if any(p != dots[0] for p in dots):
                raise ValueError("basis vectors must share one pairwise angle")
        else:
            tol = FLOAT_TOL * (abs(float(norms[0])) + 1)
            if any(abs(float(n - norms[0])) > tol for n in norms):
                raise ValueError("basis vectors must have equal length")
            if any(abs(float(p - dots[0])) > tol for p in dots):
                raise ValueError("basis vectors must share one pairwise angle")
        c = Fraction(dots[0], norms[0]) if self.mode == "exact" else dots[0] / norms[0]
        if not (-Fraction(1, 2) < c < 1 if self.mode == "exact" else -0.5 < c < 1):
            raise ValueError("pairwise angle must lie strictly inside (0, 2*pi/3)")
        # positive definiteness of (N - p) I + p J
        if not (norms[0] - dots[0] > 0 and norms[0] + (d - 1) * dots[0] > 0):
            raise ValueError("Gram matrix is not positive definite")

    @property
    def pair_cos(self):
        n0 = sum(x * x for x in self.basis[0])
        p = sum(x * y for x, y in zip(self.basis[0], self.basis[1]))
        return p / n0 if self.mode == "float" else Fraction(p, n0)

    @staticmethod
    def from_basis(vectors) -> "HillSpec":
        vs = [list(v) for v in vectors]
        exact = all(isinstance(x, (int, Fraction)) for v in vs for x in v)
        if exact:
            basis = tuple(tuple(Fraction(x) for x in v) for v in vs)
            return HillSpec(len(vs), basis, "exact")
        basis = tuple(tuple(float(x) for x in v) for v in vs)
        return HillSpec(len(vs), basis, "float")

    @staticmethod
    def from_pair_cos(dim: int, c) -> "HillSpec":
        """Build a basis realizing the requested common cosine.

        Rational coordinates are found where a two-term cyclic construction
        admits them; otherwise the Gram matrix is factored in floats.
        """
        c = Fraction(c) if not isinstance(c, float) else c
        if isinstance(c, Fraction) and c == 0:
            basis = tuple(
                tuple(Fraction(1) if i == j else Fraction(0) for j in range(dim))
                for i in range(dim)
            )
            return HillSpec(dim, basis, "exact")
        if isinstance(c, Fraction) and dim in (2, 3):
            found = _rational_cyclic_basis(dim, c)
            if found is not None:
                return HillSpec(dim, found, "exact")
        return HillSpec(dim, _float_gram_basis(dim, float(c)), "float")


def _rational_square_root(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def _rational_cyclic_basis(dim: int, c: Fraction):
    """Cyclic shifts of a short pattern vector, when a rational one exists."""
    if dim == 2:
        # (a, b), (b, a): cos = 2ab / (a^2 + b^2); a/b = (1 +- sqrt(1-c^2))/c
        r = _rational_square_root(1 - c * c)
        if r is None:
            return None
        x = (1 + r) / c
    else:
        # (a, b, 0) cyclic: cos = ab / (a^2 + b^2); a/b = (1 +- sqrt(1-4c^2))/(2c)
        r = _rational_square_root(1 - 4 * c * c)
        if r is None:
            return None
        x = (1 + r) / (2 * c)
    a, b = x.numerator, x.denominator
    pattern = [Fraction(a), Fraction(b)] + [Fraction(0)] * (dim - 2)
    basis = []
    for i in range(dim):
        basis.append(tuple(pattern[(j - i) % dim] for j in range(dim)))
    # cyclic shifts only share one dot product when the pattern has
    # support 2 and dim <= 3; the HillSpec validator re-checks anyway
    return tuple(basis)


def _float_gram_basis(dim: int, c: float):
    import numpy as np

    g = np.full((dim, dim), c, dtype=float)
    np.fill_diagonal(g, 1.0)
    chol = np.linalg.cholesky(g)
    return tuple(tuple(float(x) for x in row) for row in chol)


def hill_simplex(spec: HillSpec) -> Simplex:
    """conv{0, b1, b1+b2, ..., b1+...+bd}."""
    d = spec.dim
    zero = [Fraction(0)] * d if spec.mode == "exact" else [0.0] * d
    verts = [tuple(zero)]
    acc = list(zero)
    for b in spec.basis:
        acc = [x + y for x, y in zip(acc, b)]
        verts.append(tuple(acc))
    if spec.mode == "exact":
        return Simplex.exact(verts)
    return Simplex.floating(verts)


@dataclass(frozen=True)
class Subdivision:
    """A parent simplex cut into m^d candidate reptile pieces."""

    parent: Simplex
    pieces: tuple
    m: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(1, self.m)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "parent": self.parent.to_json(),
            "pieces": [p.to_json() for p in self.pieces],
        }

    @staticmethod
    def from_json(obj: dict) -> "Subdivision":
        return Subdivision(
            Simplex.from_json(obj["parent"]),
            tuple(Simplex.from_json(p) for p in obj["pieces"]),
            int(obj["m"]),
        )


def _staircase_cells(dim: int, m: int):
    """Yield the vertex tuples (in basis coordinates, scaled by m) of the
    staircase cells inside the order region.

    Each cell is (a, sigma): start at a, step by unit vectors in the order
    sigma; it belongs to the parent iff every vertex y satisfies
    m >= y_1 >= ... >= y_d >= 0.
    """

    def admissible(y) -> bool:
        prev = m
        for v in y:
            if v > prev:
                return False
            prev = v
        return y[-1] >= 0

    for a in product(range(m), repeat=dim):
        for sigma in permutations(range(dim)):
            verts = [tuple(a)]
            cur = list(a)
            ok = admissible(tuple(cur))
            for k in sigma:
                cur[k] += 1
                verts.append(tuple(cur))
                ok = ok and admissible(tuple(cur))
            if ok:
                yield verts


def subdivide(spec: HillSpec, m: int) -> Subdivision:
    """Cut the Hill simplex into m^d pieces similar to it with ratio 1/m."""
    if m < 2:
        raise ValueError("m must be at least 2")
    d = spec.dim
    parent = hill_simplex(spec)
    basis = spec.basis
    mf = Fraction(m) if spec.mode == "exact" else float(m)

    def to_space(y):
        # x = sum (y_i / m) * b_i
        out = [Fraction(0) if spec.mode == "exact" else 0.0] * d
        for yi, b in zip(y, basis):
            for k in range(d):
                out[k] += yi * b[k] / mf
        return tuple(out)

    pieces = []
    for cell in _staircase_cells(d, m):
        verts = [to_space(y) for y in cell]
        pieces.append(
            Simplex.exact(verts) if spec.mode == "exact" else Simplex.floating(verts)
        )
    if len(pieces) != m**d:
        raise AssertionError(f"staircase cell count {len(pieces)} != m^d = {m**d}")
    return Subdivision(parent, tuple(pieces), m)


# ---------------------------------------------------------------------------
# exact interior-disjointness of convex pieces
# ---------------------------------------------------------------------------


def _facet_inequalities(s: Simplex) -> list[tuple[tuple, object]]:
    """(inward normal, offset) pairs: interior points satisfy n.x > b."""
    out = []
    for i in range(s.dim + 1):
        n = s.facet_normal(i)
        base = s.vertices[(i + 1) % (s.dim + 1)]
        out.append((tuple(n), sum(a * b for a, b in zip(n, base))))
    return out


def _plane_separates(facets, other: Simplex, tol) -> bool:
    for n, b in facets:
        if all(
            sum(x * y for x, y in zip(n, v)) <= b + (tol or 0) for v in other.vertices
        ):
            return True
    return False


def _bbox_disjoint(s1: Simplex, s2: Simplex) -> bool:
    for k in range(s1.dim):
        a1 = [v[k] for v in s1.vertices]
        a2 = [v[k] for v in s2.vertices]
        if max(a1) <= min(a2) or max(a2) <= min(a1):
            return True
    return False


def _max_margin_point(constraints: list[tuple[tuple, object]], dim: int, exact: bool):
    """Maximize tau subject to n.x - tau >= b over all constraints.

    Returns (tau, x) at the optimum; the polyhedron is pointed and bounded
    above in tau, so basic-solution enumeration is complete.
    """
    nvar = dim + 1
    rows = [list(n) + [-1, b] for n, b in constraints]
    best = None
    for subset in combinations(range(len(rows)), nvar):
        mat = [rows[i][:nvar] for i in subset]
        rhs = [rows[i][nvar] for i in subset]
        sol = _solve_square(mat, rhs, exact)
        if sol is None:
            continue
        feasible = True
        for r in rows:
            lhs = sum(c * v for c, v in zip(r[:nvar], sol))
            if exact:
                if lhs < r[nvar]:
                    feasible = False
                    break
            elif lhs < r[nvar] - 1e-9:
                feasible = False
                break
        if not feasible:
            continue
        tau = sol[dim]
        if best is None or tau > best[0]:
            best = (tau, tuple(sol[:dim]))
    if best is None:
        raise AssertionError("margin program has no basic feasible point")
    return best


def _solve_square(mat, rhs, exact: bool):
    n = len(mat)
    a = [list(map(Fraction, row)) + [Fraction(rhs[i])] for i, row in enumerate(mat)] if exact else [
        [float(x) for x in row] + [float(rhs[i])] for i, row in enumerate(mat)
    ]
    for k in range(n):
        piv = None
        for i in range(k, n):
            if (a[i][k] != 0) if exact else abs(a[i][k]) > 1e-12:
                piv = i
                break
        if piv is None:
            return None
        a[k], a[piv] = a[piv], a[k]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k] / a[k][k]
                for j in range(k, n + 1):
                    a[i][j] -= f * a[k][j]
    try:
        return [a[i][n] / a[i][i] for i in range(n)]
    except ZeroDivisionError:
        return None


def interiors_disjoint(s1: Simplex, s2: Simplex) -> tuple[bool, tuple | None]:
    """Exact decision whether two simplices have disjoint interiors.

    Returns (disjoint, witness_point): the witness is a common interior
    point when they overlap.
    """
    exact = s1.mode == "exact" and s2.mode == "exact"
    tol = None if exact else max(s1.tol, s2.tol)
    if _bbox_disjoint(s1, s2):
        return True, None
    f1, f2 = _facet_inequalities(s1), _facet_inequalities(s2)
    if _plane_separates(f1, s2, tol) or _plane_separates(f2, s1, tol):
        return True, None
    tau, x = _max_margin_point(f1 + f2, s1.dim, exact)
    if exact:
        return (tau <= 0), (x if tau > 0 else None)
    scale = max(abs(float(v)) for s in (s1, s2) for vert in s.vertices for v in vert) + 1
    return (float(tau) <= (tol or FLOAT_TOL) * scale), (x if float(tau) > (tol or FLOAT_TOL) * scale else None)


# ---------------------------------------------------------------------------
# the verifier
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReptileReport:
    """Certificate log for one candidate reptile subdivision."""

    piece_count: int
    m: int
    volume_ok: bool
    similarity_ok: bool
    congruence_ok: bool
    disjointness_ok: bool
    containment_ok: bool
    union_ok: bool
    measured_ratio: object
    chirality: dict
    witnesses: dict
    mode: str

    @property
    def all_ok(self) -> bool:
        return (
            self.volume_ok
            and self.similarity_ok
            and self.congruence_ok
            and self.disjointness_ok
            and self.containment_ok
            and self.union_ok
        )

    def to_json(self) -> dict:
        return {
            "piece_count": self.piece_count,
            "m": self.m,
            "checks": {
                "volume": self.volume_ok,
                "similarity": self.similarity_ok,
                "congruence": self.congruence_ok,
                "interior_disjointness": self.disjointness_ok,
                "containment": self.containment_ok,
                "union": self.union_ok,
            },
            "all_ok": self.all_ok,
            "measured_ratio": str(self.measured_ratio),
            "chirality": self.chirality,
            "witnesses": {k: str(v) for k, v in self.witnesses.items()},
            "mode": self.mode,
        }


def verify_reptile(sub: Subdivision) -> ReptileReport:
    """Certify the reptile property of a subdivision, check by check.

    Exact in exact mode: volume sum, similarity ratio, congruence matching,
    pairwise interior disjointness, and containment; the union equality
    follows from volume + disjointness + containment for closed pieces.
    """
    parent, pieces, m = sub.parent, sub.pieces, sub.m
    exact = parent.mode == "exact" and all(p.mode == "exact" for p in pieces)
    tol = None if exact else FLOAT_TOL
    witnesses: dict = {}

    vol_parent = volume(parent)
    vol_sum = sum(volume(p) for p in pieces)
    if exact:
        volume_ok = vol_sum == vol_parent
    else:
        volume_ok = abs(vol_sum - vol_parent) <= FLOAT_TOL * max(abs(vol_parent), 1.0)
    if not volume_ok:
        witnesses["volume"] = (vol_sum, vol_parent)

    expected = Fraction(1, m)
    similarity_ok = True
    measured = None
    for idx, p in enumerate(pieces):
        r = similar(parent, p)
        if measured is None:
            measured = r
        good = (r == expected) if exact else (r is not None and abs(r - 1 / m) < FLOAT_TOL)
        if not good:
            similarity_ok = False
            witnesses["similarity"] = {"piece": idx, "ratio": r}
            break

    congruence_ok = True
    for idx in range(1, len(pieces)):
        if not congruent(pieces[0], pieces[idx]):
            congruence_ok = False
            witnesses["congruence"] = {"pieces": (0, idx)}
            break

    containment_ok = True
    parent_facets = _facet_inequalities(parent)
    for idx, p in enumerate(pieces):
        for v in p.vertices:
            for n, b in parent_facets:
                s = sum(a * c for a, c in zip(n, v))
                bad = (s < b) if exact else (float(s) < float(b) - FLOAT_TOL)
                if bad:
                    containment_ok = False
                    witnesses["containment"] = {"piece": idx, "vertex": v}
                    break
            if not containment_ok:
                break
        if not containment_ok:
            break

    disjointness_ok = True
    for i, j in combinations(range(len(pieces)), 2):
        ok, point = interiors_disjoint(pieces[i], pieces[j])
        if not ok:
            disjointness_ok = False
            witnesses["interior_disjointness"] = {"pieces": (i, j), "point": point}
            break

    union_ok = volume_ok and disjointness_ok and containment_ok

    base_sign = _det_sign(parent)
    proper = sum(1 for p in pieces if _det_sign(p) == base_sign)
    chirality = {"orientation_preserving": proper, "mirrored": len(pieces) - proper}

    return ReptileReport(
        piece_count=len(pieces),
        m=m,
        volume_ok=volume_ok,
        similarity_ok=similarity_ok,
        congruence_ok=congruence_ok,
        disjointness_ok=disjointness_ok,
        containment_ok=containment_ok,
        union_ok=union_ok,
        measured_ratio=measured,
        chirality=chirality,
        witnesses=witnesses,
        mode="exact" if exact else "float",
    )


def _det_sign(s: Simplex) -> int:
    from .simplex import _det

    d = _det(s.edge_matrix())
    return (d > 0) - (d < 0)


# ---------------------------------------------------------------------------
# iterated growth
# ---------------------------------------------------------------------------


@dataclass
class GrowthReport:
    generations: int
    m: int
    cell_total: int
    cells_emitted: int
    truncated: bool
    volume_emitted: object
    volume_expected: object
    sampled_pairs: int
    sampled_disjoint_ok: bool
    adjacency: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "generations": self.generations,
            "m": self.m,
            "cell_total": self.cell_total,
            "cells_emitted": self.cells_emitted,
            "truncated": self.truncated,
            "volume_emitted": str(self.volume_emitted),
            "volume_expected": str(self.volume_expected),
            "sampled_pairs": self.sampled_pairs,
            "sampled_disjoint_ok": self.sampled_disjoint_ok,
            "adjacency": self.adjacency,
        }


def grow_space_tiling(
    spec: HillSpec,
    generations: int,
    m: int = 2,
    budget: int = 20000,
    sample_pairs: int = 100,
    seed: int = 0,
):
    """Tile the m^g-scaled Hill simplex by unit-generation cells.

    Substituting the subdivision into itself g times is the same staircase
    cutting with parameter m^g; cells stream in deterministic order up to
    the piece budget.  Disjointness is verified on a random sample of pairs
    (the exact verifier is for single-generation subdivisions).

    Returns (cells, report): cells is the materialized list (bounded by the
    budget), report a GrowthReport.
    """
    if generations < 1:
        raise ValueError("need at least one generation")
    d = spec.dim
    big = m**generations
    total = big**d
    scale = Fraction(big) if spec.mode == "exact" else float(big)
    basis = spec.basis

    def to_space(y):
        out = [Fraction(0) if spec.mode == "exact" else 0.0] * d
        for yi, b in zip(y, basis):
            for k in range(d):
                out[k] += yi * b[k]
        return tuple(out)

    cells = []
    truncated = False
    for cell in _staircase_cells(d, big):
        if len(cells) >= budget:
            truncated = True
            break
        verts = [to_space(y) for y in cell]
        cells.append(
            Simplex.exact(verts) if spec.mode == "exact" else Simplex.floating(verts)
        )
    vol_cell = volume(cells[0])
    vol_emitted = vol_cell * len(cells)
    parent = hill_simplex(spec)
    vol_expected = volume(parent) * (scale**d)

    rng = random.Random(seed)
    ok = True
    adjacency = {"separated": 0, "touching": 0}
    pairs = 0
    if len(cells) >= 2:
        for _ in range(sample_pairs):
            i, j = rng.sample(range(len(cells)), 2)
            disjoint, _ = interiors_disjoint(cells[i], cells[j])
            if not disjoint:
                ok = False
                break
            pairs += 1
            if _bbox_disjoint(cells[i], cells[j]):
                adjacency["separated"] += 1
                continue
            exact = spec.mode == "exact"
            tau, _ = _max_margin_point(
                _facet_inequalities(cells[i]) + _facet_inequalities(cells[j]),
                d,
                exact,
            )
            touching = (tau == 0) if exact else abs(float(tau)) <= FLOAT_TOL
            adjacency["touching" if touching else "separated"] += 1
    report = GrowthReport(
        generations=generations,
        m=m,
        cell_total=total,
        cells_emitted=len(cells),
        truncated=truncated,
        volume_emitted=vol_emitted,
        volume_expected=vol_expected,
        sampled_pairs=pairs,
        sampled_disjoint_ok=ok,
        adjacency=adjacency,
    )
    return cells, report
