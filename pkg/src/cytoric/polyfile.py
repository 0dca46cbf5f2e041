"""The polytope file format: a header line "n_points dim" followed by
n_points whitespace-separated integer rows; '#' starts a comment line.
"""

from __future__ import annotations

from .errors import PolytopeFileError
from .lattice import MPoint


def parse_polytope(text: str):
    """Parse file text into the list of lattice points, exactly as written.

    Errors carry the 1-based line number of the offending line.
    """
    header = None
    points = []
    expected = None
    dim = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise PolytopeFileError(
                    "header must be 'n_points dim'", line=lineno
                )
            try:
                expected, dim = int(fields[0]), int(fields[1])
            except ValueError:
                raise PolytopeFileError("header entries must be integers", line=lineno)
            if expected < 1 or dim < 1:
                raise PolytopeFileError("header entries must be positive", line=lineno)
            if expected < dim:
                raise PolytopeFileError(
                    f"{expected} rows of dimension {dim} look transposed; "
                    "rows must be points",
                    line=lineno,
                )
            header = (expected, dim)
            continue
        if len(fields) != dim:
            raise PolytopeFileError(
                f"expected {dim} coordinates, got {len(fields)}", line=lineno
            )
        try:
            coords = tuple(int(f) for f in fields)
        except ValueError:
            raise PolytopeFileError("non-integer coordinate", line=lineno)
        points.append(MPoint(coords))
        if len(points) > expected:
            raise PolytopeFileError(
                f"more than the declared {expected} points", line=lineno
            )
    if header is None:
        raise PolytopeFileError("empty file", line=1)
    if len(points) != expected:
        raise PolytopeFileError(
            f"declared {expected} points but found {len(points)}"
        )
    return points


def parse_polytope_path(path):
    with open(path, encoding="utf-8") as fh:
        return parse_polytope(fh.read())


def dump_polytope(points) -> str:
    """Emit the parsed point list back in the file format, one point per
    row, whitespace normalised; parse(dump(parse(x))) == parse(x)."""
    if not points:
        raise PolytopeFileError("cannot dump an empty point list")
    dim = points[0].dim
    lines = [f"{len(points)} {dim}"]
    for p in points:
        lines.append(" ".join(str(c) for c in p))
    return "\n".join(lines) + "\n"
