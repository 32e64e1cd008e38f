"""Shared parsing and formatting for the CLI surfaces.

Exact values cross the JSON boundary as strings: rationals as "p/q",
radicals as "a*sqrt(n)/d" shorthand, and general algebraic numbers as
{"minpoly": [...], "interval": ["lo", "hi"]} objects.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .algebra import AlgebraicReal
from .fiedler import CosMatrix
from .simplex import Simplex

_SQRT_RE = re.compile(
    r"^(?P<sign>[+-]?)(?:(?P<coef>\d+(?:/\d+)?)\*)?sqrt\((?P<rad>\d+(?:/\d+)?)\)(?:/(?P<den>\d+))?$"
)


class InputFormatError(ValueError):
    """Malformed value, matrix, or simplex input."""


def parse_real(spec):
    """A Fraction or AlgebraicReal from a string/object cosine spec.

    Accepted forms: "p/q", "sqrt(2)/2", "3*sqrt(5)/7", "-sqrt(1/2)", a
    number, or a {"minpoly": ..., "interval": ...} object.
    """
    if isinstance(spec, dict):
        try:
            return AlgebraicReal.from_json(spec)
        except (KeyError, ValueError) as e:
            raise InputFormatError(f"bad algebraic-number object: {e}") from e
    if isinstance(spec, (int, Fraction)):
        return Fraction(spec)
    if isinstance(spec, float):
        raise InputFormatError(
            f"refusing float literal {spec!r}: pass an exact string like \"1/2\" or \"sqrt(2)/2\""
        )
    s = str(spec).strip()
    m = _SQRT_RE.match(s)
    if m:
        sign = -1 if m.group("sign") == "-" else 1
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("den"):
            coef /= int(m.group("den"))
        root = AlgebraicReal.sqrt_rational(Fraction(m.group("rad")))
        return root * (sign * coef)
    try:
        return Fraction(s)
    except ValueError as e:
        raise InputFormatError(f"cannot parse exact value {s!r}") from e


def format_real(x, digits: int = 12) -> dict:
    """Uniform JSON view of an exact value."""
    if isinstance(x, Fraction) or (isinstance(x, AlgebraicReal) and x.is_rational):
        f = x if isinstance(x, Fraction) else x.as_fraction()
        return {"rational": f"{f.numerator}/{f.denominator}", "approx": float(f)}
    out = x.to_json()
    out["approx"] = float(x.approx(digits))
    return out


def load_matrix(obj: dict) -> CosMatrix:
    try:
        dim = int(obj["dim"])
        rows = obj["cos"]
    except (KeyError, TypeError) as e:
        raise InputFormatError(f"matrix JSON needs 'dim' and 'cos': {e}") from e
    if len(rows) != dim + 1:
        raise InputFormatError(f"expected {dim + 1} rows, got {len(rows)}")
    parsed = [[parse_real(x) for x in row] for row in rows]
    return CosMatrix.from_rows(parsed)


def load_simplex(obj: dict) -> Simplex:
    try:
        return Simplex.from_json(obj)
    except (KeyError, ValueError, TypeError) as e:
        raise InputFormatError(f"bad simplex JSON: {e}") from e


def read_json_document(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e


def export_obj(simplices, path: str, names=None, dedupe_tol: float = 1e-12) -> dict:
    """Write tetrahedra to a Wavefront OBJ file (d = 3 only).

    Vertices within the tolerance are merged; each simplex emits its four
    triangular faces under a named group.  Returns counting stats.
    """
    items = list(simplices)
    if any(s.dim != 3 for s in items):
        raise ValueError("OBJ export is defined for d = 3")
    verts: list[tuple[float, float, float]] = []
    index: dict[tuple[int, int, int], int] = {}

    def vid(p) -> int:
        fp = tuple(float(x) for x in p)
        key = tuple(round(c / dedupe_tol) for c in fp)
        if key not in index:
            verts.append(fp)
            index[key] = len(verts)
        return index[key]

    groups = []
    for n, s in enumerate(items):
        ids = [vid(v) for v in s.vertices]
        name = names[n] if names else f"piece_{n:03d}"
        faces = [
            (ids[0], ids[1], ids[2]),
            (ids[0], ids[1], ids[3]),
            (ids[0], ids[2], ids[3]),
            (ids[1], ids[2], ids[3]),
        ]
        groups.append((name, faces))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# reptile-forge OBJ export\n")
        for v in verts:
            fh.write(f"v {v[0]:.17g} {v[1]:.17g} {v[2]:.17g}\n")
        for name, faces in groups:
            fh.write(f"g {name}\n")
            for f in faces:
                fh.write(f"f {f[0]} {f[1]} {f[2]}\n")
    return {"vertices": len(verts), "faces": 4 * len(items), "groups": len(groups)}
