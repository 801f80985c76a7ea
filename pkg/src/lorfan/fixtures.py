"""Small stock fans used throughout the test-suite and documentation."""

from __future__ import annotations

from fractions import Fraction

from .fan import MarkedFan, point_fan, product_fan
from .weights import MinkowskiWeight, TropicalFan, constant_weight


def triangle_fan() -> TropicalFan:
    """Complete fan in the plane with rays e1, e2, -e1-e2 and unit weight."""
    fan = MarkedFan(
        ambient_dim=2,
        rays=(
            (Fraction(1), Fraction(0)),
            (Fraction(0), Fraction(1)),
            (Fraction(-1), Fraction(-1)),
        ),
        maximal_cones=((0, 1), (0, 2), (1, 2)),
    )
    return TropicalFan(fan, constant_weight(fan))


def line_fan() -> TropicalFan:
    """The two opposite rays of a line."""
    fan = MarkedFan(
        ambient_dim=1,
        rays=((Fraction(1),), (Fraction(-1),)),
        maximal_cones=((0,), (1,)),
    )
    return TropicalFan(fan, constant_weight(fan))


def coordinate_skeleton_fan() -> TropicalFan:
    """The two-dimensional skeleton of the coordinate planes in 3-space.

    Six rays along the signed axes and the twelve quadrant cones of the three
    coordinate planes, with unit weight.
    """
    rays = []
    for axis in range(3):
        for sign in (1, -1):
            u = [Fraction(0)] * 3
            u[axis] = Fraction(sign)
            rays.append(tuple(u))
    # ray index: 2*axis + (0 if +, 1 if -)
    cones = []
    for a in range(3):
        for b in range(a + 1, 3):
            for sa in (0, 1):
                for sb in (0, 1):
                    cones.append(tuple(sorted((2 * a + sa, 2 * b + sb))))
    fan = MarkedFan(ambient_dim=3, rays=tuple(rays), maximal_cones=tuple(sorted(cones)))
    return TropicalFan(fan, constant_weight(fan))


def skeleton_weight(a, b, c) -> MinkowskiWeight:
    """The balanced weight on the coordinate skeleton taking value a*b on the
    xy-plane cones, a*c on the xz-plane cones, and b*c on the yz-plane cones."""
    tf = coordinate_skeleton_fan()
    products = {(0, 1): Fraction(a) * Fraction(b), (0, 2): Fraction(a) * Fraction(c), (1, 2): Fraction(b) * Fraction(c)}
    values = {}
    for cone in tf.fan.maximal_cones:
        axes = tuple(sorted(i // 2 for i in cone))
        values[cone] = products[axes]
    return MinkowskiWeight(2, values)


def triangle_times_line() -> TropicalFan:
    """Product of the triangle fan with a line; a three-dimensional fan."""
    t, l = triangle_fan(), line_fan()
    fan = product_fan(t.fan, l.fan)
    return TropicalFan(fan, constant_weight(fan))


def two_disjoint_triangles() -> TropicalFan:
    """Two triangle fans in complementary planes of 4-space, meeting only at 0.

    Quasiprojective but pinched at the origin, hence not Lorentzian.
    """
    z = Fraction(0)
    o = Fraction(1)
    rays = (
        (o, z, z, z),
        (z, o, z, z),
        (-o, -o, z, z),
        (z, z, o, z),
        (z, z, z, o),
        (z, z, -o, -o),
    )
    cones = ((0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5))
    fan = MarkedFan(ambient_dim=4, rays=rays, maximal_cones=cones)
    return TropicalFan(fan, constant_weight(fan))


def spindle_fan() -> TropicalFan:
    """Two half-plane pairs glued along an axis: rays +-e3 plus two legs.

    The volume form of this fan factors into two independent linear forms, so
    it has exactly one positive and one negative eigenvalue.
    """
    z = Fraction(0)
    o = Fraction(1)
    rays = (
        (z, z, o),        # axis up
        (z, z, -o),       # axis down
        (o, z, o),        # leg 1
        (-o, z, z),       # leg 2
    )
    cones = ((0, 2), (1, 2), (0, 3), (1, 3))
    fan = MarkedFan(ambient_dim=3, rays=rays, maximal_cones=cones)
    return TropicalFan(fan, constant_weight(fan))


def origin_fan(ambient_dim: int = 1) -> TropicalFan:
    fan = point_fan(ambient_dim)
    return TropicalFan(fan, MinkowskiWeight(0, {(): Fraction(1)}))


def twisted_prism_fan() -> TropicalFan:
    """Complete 3-fan over a triangular prism whose side quads are split by
    cyclically twisted diagonals.

    The cyclic twist admits no strictly convex divisor, so this fan is
    balanced and positive but not quasiprojective (hence not Lorentzian).
    Weights are inverse parallelepiped volumes, cleared to integers.
    """
    import math

    from .linalg import det, mat

    top = [(1, 0, 1), (0, 1, 1), (-1, -1, 1)]
    bottom = [(1, 0, -1), (0, 1, -1), (-1, -1, -1)]
    rays = tuple(tuple(Fraction(x) for x in v) for v in top + bottom)
    cones = [(0, 1, 2), (3, 4, 5)]
    for i, j in ((0, 1), (1, 2), (2, 0)):
        cones.append(tuple(sorted((i, j, 3 + j))))
        cones.append(tuple(sorted((i, 3 + j, 3 + i))))
    fan = MarkedFan(ambient_dim=3, rays=rays, maximal_cones=tuple(sorted(cones)))
    vols = {c: abs(det(mat([rays[i] for i in c]))) for c in fan.maximal_cones}
    scale = math.lcm(*(v.numerator for v in vols.values()))
    weight = MinkowskiWeight(3, {c: Fraction(scale) / v for c, v in vols.items()})
    return TropicalFan(fan, weight)
