"""Bundled polytope fixtures: the worked 15-vertex example, three classic
reflexive 4-polytopes, and a 2-dimensional corpus of reflexive polygons
that is exactly closed under duality.

The polygon corpus ships 16 files covering 15 of the 16 equivalence
classes: six exact dual pairs, two exactly self-dual presentations, and
the hexagon in both chiralities (the hexagon class is self-dual but no
choice of coordinates makes dual(P) = P on the nose, and the same
obstruction rules the remaining quadrilateral class out of an exactly
closed 16-file set).
"""

from importlib import resources

from ..polyfile import parse_polytope

CORPUS_4D = ("example_s3", "quintic", "cube", "cross4d")

POLYGONS = (
    "pgon_triangle_p2",
    "pgon_triangle_p2_dual",
    "pgon_triangle_p112",
    "pgon_triangle_p112_dual",
    "pgon_diamond",
    "pgon_square",
    "pgon_quad_b4",
    "pgon_quad_b8",
    "pgon_quad_b5",
    "pgon_quad_b7",
    "pgon_pentagon_b5",
    "pgon_pentagon_b7",
    "pgon_pentagon_b6",
    "pgon_triangle_p123",
    "pgon_hexagon",
    "pgon_hexagon_mirror",
)

ALL = CORPUS_4D + POLYGONS


def fixture_text(name: str) -> str:
    fname = name if name.endswith(".poly") else f"{name}.poly"
    return resources.files(__package__).joinpath(fname).read_text(encoding="utf-8")


def fixture_points(name: str):
    return parse_polytope(fixture_text(name))


def fixture_polytope(name: str):
    from ..polytope import hull

    return hull(fixture_points(name))
