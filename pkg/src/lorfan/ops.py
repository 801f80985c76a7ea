"""Tropical fan constructors: products, divisor-action fans, modifications,
and the polytope mixed-volume bridge."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .convexity import classify_convexity
from .errors import ConvexityError, PreconditionError
from .fan import MarkedFan, cone_key, product_fan
from .linalg import Vec, ZERO, ONE, mat, solve_linear, vec
from .weights import (
    Divisor,
    MinkowskiWeight,
    TropicalFan,
    check_balancing,
    divisor_action,
    mixed_degree,
)


def product_tropical(tf1: TropicalFan, tf2: TropicalFan) -> TropicalFan:
    """Product fan with the product weight on pairwise cone products."""
    fan = product_fan(tf1.fan, tf2.fan)
    offset = len(tf1.fan.rays)
    values = {}
    for c1, v1 in tf1.weight.values.items():
        for c2, v2 in tf2.weight.values.items():
            values[cone_key(list(c1) + [offset + i for i in c2])] = v1 * v2
    return TropicalFan(fan, MinkowskiWeight(fan.dimension, values))


def act_divisor_fan(tf: TropicalFan, z: Divisor) -> TropicalFan:
    """The codimension-one skeleton weighted by the action of a strictly
    convex divisor; positivity of the result is guaranteed by strictness."""
    fan = tf.fan
    d = fan.dimension
    if d < 1:
        raise PreconditionError("cannot act on a zero-dimensional fan")
    cert = classify_convexity(fan, z, strict=True)
    if not cert.strictly_convex:
        raise ConvexityError("divisor action requires a strictly convex divisor", cert)
    acted = divisor_action(fan, tf.weight, z)
    skeleton_cones = tuple(sorted(fan.cones(d - 1)))
    used = sorted(set(itertools.chain.from_iterable(skeleton_cones)))
    remap = {old: i for i, old in enumerate(used)}
    skeleton = MarkedFan(
        ambient_dim=fan.ambient_dim,
        rays=tuple(fan.rays[i] for i in used),
        maximal_cones=tuple(cone_key(remap[i] for i in c) for c in skeleton_cones),
    )
    values = {
        cone_key(remap[i] for i in c): v for c, v in acted.values.items()
    }
    return TropicalFan(skeleton, MinkowskiWeight(d - 1, values))


def tropical_modification(tf: TropicalFan, z: Divisor) -> TropicalFan:
    """Lift along a strictly convex piecewise linear representative.

    Graph cones keep their weights at the lifted marks (u, z(u)); each
    codimension-one cone also grows a downward cone on the extra ray (0,-1),
    weighted by the divisor action there, which restores balancing.
    """
    fan = tf.fan
    d = fan.dimension
    if d < 1:
        raise PreconditionError("cannot modify a zero-dimensional fan")
    cert = classify_convexity(fan, z, strict=True)
    if not cert.strictly_convex:
        raise ConvexityError("tropical modification requires a strictly convex divisor", cert)
    acted = divisor_action(fan, tf.weight, z)

    nrays = len(fan.rays)
    rays = [tuple(u) + (Fraction(z[i]),) for i, u in enumerate(fan.rays)]
    down = nrays
    rays.append((ZERO,) * fan.ambient_dim + (-ONE,))

    values = {}
    cones = []
    for sigma in fan.maximal_cones:
        cones.append(sigma)
        values[sigma] = tf.weight[sigma]
    for tau in fan.cones(d - 1):
        c = cone_key(list(tau) + [down])
        cones.append(c)
        values[c] = acted[tau]
    lifted = MarkedFan(
        ambient_dim=fan.ambient_dim + 1,
        rays=tuple(rays),
        maximal_cones=tuple(sorted(cones)),
    )
    return TropicalFan(lifted, MinkowskiWeight(d, values))


# ---------------------------------------------------------------------------
# complete fans and polytopes


def is_complete(fan: MarkedFan) -> bool:
    """Two-sided codimension-one incidence plus facet-connectivity.

    Exact and sufficient for pure simplicial fans at desk scale: a fan whose
    walls all bound two maximal cones and whose dual graph is connected
    covers the whole space.
    """
    d = fan.dimension
    if d == 0:
        return fan.ambient_dim == 0
    if d != fan.ambient_dim:
        return False
    maximal = fan.maximal_cones
    wall_count = {}
    for c in maximal:
        for facet in itertools.combinations(c, d - 1):
            wall_count[facet] = wall_count.get(facet, 0) + 1
    if any(count != 2 for count in wall_count.values()):
        return False
    adjacency = {c: set() for c in maximal}
    for c1, c2 in itertools.combinations(maximal, 2):
        if len(set(c1) & set(c2)) == d - 1:
            adjacency[c1].add(c2)
            adjacency[c2].add(c1)
    seen = {maximal[0]}
    stack = [maximal[0]]
    while stack:
        for nxt in adjacency[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(maximal)


def polytope_vertices(fan: MarkedFan, rhs: Sequence[Fraction]) -> dict:
    """Vertex of {x : <x, u_r> <= rhs_r} selected by each maximal cone.

    Valid when the right-hand sides are convex on the fan, so that each
    maximal cone of normals pins down one vertex.
    """
    if len(rhs) != len(fan.rays):
        raise PreconditionError("one right-hand side per ray required")
    out = {}
    for c in fan.maximal_cones:
        A = mat([fan.rays[i] for i in c])
        v = solve_linear(A, vec([rhs[i] for i in c]))
        if v is None:
            raise PreconditionError(f"no vertex for cone {c}")
        out[c] = v
    return out


def polygon_area(fan: MarkedFan, rhs: Sequence[Fraction]) -> Fraction:
    """Exact area of a polygon given by a complete planar fan of outer normals."""
    if fan.ambient_dim != 2:
        raise PreconditionError("shoelace area needs a planar fan")
    verts = polytope_vertices(fan, rhs)
    cones = list(verts)

    def angle_sort_key(c):
        # order vertices by the angle of the cone's first ray bisector
        u = vec([sum(fan.rays[i][j] for i in c) for j in range(2)])
        return _ccw_key(u)

    cones.sort(key=angle_sort_key)
    area2 = ZERO
    for k in range(len(cones)):
        x1, y1 = verts[cones[k]]
        x2, y2 = verts[cones[(k + 1) % len(cones)]]
        area2 += x1 * y2 - x2 * y1
    return abs(area2) / 2


def _ccw_key(u: Vec):
    """Exact counterclockwise ordering key for a nonzero planar direction."""
    x, y = u
    s = abs(x) + abs(y)
    if y > 0 or (y == 0 and x > 0):
        return (0, -x / s)
    return (1, x / s)


@dataclass(frozen=True)
class MixedVolumeResult:
    """Mixed degree of polytope divisors on a complete fan with unit weight.

    The Euclidean value applies the convention fixed by the planar triangle
    oracle: euclidean = degree / n!.
    """

    degree: Fraction
    dimension: int
    euclidean_value: Fraction
    convention: str = "euclidean_volume = degree / n!"


def polytope_bridge(fan: MarkedFan, rhs_list: Sequence[Sequence[Fraction]]) -> MixedVolumeResult:
    """Mixed degree of the divisors of polytopes sharing this complete normal fan.

    Requires the unit weight to balance on the fan (part of sharing a normal
    fan structure with integral volume bookkeeping).
    """
    d = fan.dimension
    if len(rhs_list) != d:
        raise PreconditionError(f"need {d} polytopes, got {len(rhs_list)}")
    if not is_complete(fan):
        raise PreconditionError("mixed volumes need a complete fan")
    unit = MinkowskiWeight(d, {c: ONE for c in fan.cones(d)})
    if check_balancing(fan, unit) != ():
        raise PreconditionError("the unit weight does not balance on this fan")
    divisors = [tuple(Fraction(v) for v in rhs) for rhs in rhs_list]
    for z in divisors:
        if len(z) != len(fan.rays):
            raise PreconditionError("one right-hand side per ray required")
    degree = mixed_degree(fan, unit, divisors)
    return MixedVolumeResult(
        degree=degree,
        dimension=d,
        euclidean_value=degree / math.factorial(d),
    )
