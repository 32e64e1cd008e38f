"""reptile-forge: exact arithmetic for reptile simplices.

Subpackages and modules:

- ``algebra``: integer polynomials, Sturm isolation, exact algebraic reals,
  the golden-ratio field, and a small multivariate symbolic ring
- ``trig``: rational angles, cosine minimal polynomials, degree catalogs
- ``simplex``: simplices, dihedral data, congruence/similarity, angle lemmas
- ``fiedler``: dihedral-angle realizability and reconstruction
- ``hill``: Hill simplices, m^d subdivisions, the exact reptile verifier
- ``audit``: the machine-checked nonexistence case analysis
- ``cli``: the reptile-forge command-line tool
"""

__version__ = "0.1.0"

from . import algebra, audit, fiedler, hill, simplex, trig  # noqa: F401
