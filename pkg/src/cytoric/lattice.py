"""The dual pair of lattices M and N, and exact operations between them.

Points of M and points of N are deliberately distinct types even though
both are integer tuples: the polytope/dual-polytope structure lives across
the M/N boundary and mixing the two silently is the single most damaging
bug class in this kind of code.  Only :func:`pairing` crosses the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._linalg import primitive_vector, vector_gcd
from .errors import InputError


class LatticeVector(tuple):
    """Immutable integer vector in a named lattice."""

    __slots__ = ()
    lattice = "?"

    def __new__(cls, coords):
        coords = tuple(coords)
        if not coords:
            raise InputError("lattice vectors must have dimension >= 1")
        for x in coords:
            if not isinstance(x, int) or isinstance(x, bool):
                raise InputError(f"lattice coordinates must be int, got {x!r}")
        return super().__new__(cls, coords)

    @property
    def dim(self) -> int:
        return len(self)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self)

    def _check_peer(self, other):
        if type(other) is not type(self):
            raise InputError(
                f"cannot combine {type(self).__name__} with {type(other).__name__}; "
                "M and N points only meet through the pairing"
            )
        if len(other) != len(self):
            raise InputError(f"dimension mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other):
        self._check_peer(other)
        return type(self)(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._check_peer(other)
        return type(self)(a - b for a, b in zip(self, other))

    def __neg__(self):
        return type(self)(-a for a in self)

    def __mul__(self, k):
        if not isinstance(k, int) or isinstance(k, bool):
            raise InputError("lattice vectors only scale by integers")
        return type(self)(k * a for a in self)

    __rmul__ = __mul__

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(map(str, self))})"


class MPoint(LatticeVector):
    """Point of the lattice M (where the polytope Delta lives)."""

    __slots__ = ()
    lattice = "M"


class NPoint(LatticeVector):
    """Point of the dual lattice N = Hom(M, Z)."""

    __slots__ = ()
    lattice = "N"


DUAL_LATTICE = {MPoint: NPoint, NPoint: MPoint}


def pairing(x, y) -> int:
    """Evaluate the canonical pairing M x N -> Z.

    Exactly one argument must be an MPoint and the other an NPoint; the
    result is the integer dot product.  Same-lattice products are rejected,
    they are always a sign of confused duals.
    """
    kinds = {type(x), type(y)}
    if kinds != {MPoint, NPoint}:
        raise InputError(
            f"pairing needs one M point and one N point, got "
            f"{type(x).__name__} and {type(y).__name__}"
        )
    if len(x) != len(y):
        raise InputError(f"dimension mismatch: {len(x)} vs {len(y)}")
    return sum(a * b for a, b in zip(x, y))


def primitive(v: LatticeVector) -> LatticeVector:
    """The primitive vector on the ray through v (gcd of coordinates = 1)."""
    if v.is_zero():
        raise InputError("zero vector has no primitive representative")
    return type(v)(primitive_vector(v))


@dataclass(frozen=True)
class RationalHyperplane:
    """Affine hyperplane {x : <x, normal> = offset} generated by its lattice points.

    The normal is required to be primitive so the hyperplane really is the
    affine hull of its integral points and integral distance is well defined.
    When used as a polytope facet the polytope lies on the side
    <x, normal> >= offset.
    """

    normal: LatticeVector
    offset: int

    def __post_init__(self):
        if self.normal.is_zero():
            raise InputError("hyperplane normal must be nonzero")
        if vector_gcd(self.normal) != 1:
            raise InputError(f"hyperplane normal {self.normal} is not primitive")

    def evaluate(self, p: LatticeVector) -> int:
        return pairing(p, self.normal) - self.offset


def integral_distance(h: RationalHyperplane, p: LatticeVector) -> int:
    """Lattice distance |offset - <p, normal>| between a hyperplane and a point."""
    if vector_gcd(h.normal) != 1:
        raise InputError("integral distance needs a primitive hyperplane normal")
    return abs(h.offset - pairing(p, h.normal))
