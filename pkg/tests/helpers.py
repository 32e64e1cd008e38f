"""Shared test helpers."""

import random
from fractions import Fraction

from reptile_forge.simplex import Simplex


def random_rational_tetrahedron(rng: random.Random) -> Simplex:
    while True:
        verts = [
            [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(3)]
            for _ in range(4)
        ]
        try:
            return Simplex.exact(verts)
        except ValueError:
            continue
