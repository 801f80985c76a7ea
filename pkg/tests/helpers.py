"""Shared generators and independent oracles for the test-suite.

Everything here is deliberately written against raw data (integer vectors,
vertex lists) rather than through the package's own degree machinery, so the
tests compare two genuinely different routes to the same numbers.
"""

import math
import random
from fractions import Fraction

from lorfan.fan import MarkedFan
from lorfan.weights import MinkowskiWeight, TropicalFan


def _primitive(x, y):
    g = math.gcd(abs(x), abs(y))
    return (x // g, y // g)


def _ccw_sorted(directions):
    def key(u):
        x, y = u
        s = abs(x) + abs(y)
        if y > 0 or (y == 0 and x > 0):
            return (0, Fraction(-x, s))
        return (1, Fraction(x, s))

    return sorted(directions, key=key)


def random_complete_directions(rng: random.Random, m: int):
    """m distinct primitive directions, ccw sorted, consecutive gaps below pi."""
    while True:
        dirs = set()
        while len(dirs) < m:
            x, y = rng.randint(-4, 4), rng.randint(-4, 4)
            if (x, y) != (0, 0):
                dirs.add(_primitive(x, y))
        ordered = _ccw_sorted(dirs)
        cross = [
            ordered[i][0] * ordered[(i + 1) % m][1]
            - ordered[i][1] * ordered[(i + 1) % m][0]
            for i in range(m)
        ]
        if all(c > 0 for c in cross):
            return ordered


def random_balanced_2fan(rng: random.Random, m: int = None) -> TropicalFan:
    """Random complete planar fan with its canonical positive balanced weight.

    The weight on each cone is inversely proportional to the determinant of
    its two marks, which is exactly the balancing condition in the plane.
    """
    m = m if m is not None else rng.choice([3, 4, 5])
    dirs = random_complete_directions(rng, m)
    rays = tuple((Fraction(x), Fraction(y)) for x, y in dirs)
    cones = tuple(tuple(sorted((i, (i + 1) % m))) for i in range(m))
    dets = {}
    for i in range(m):
        a, b = rays[i], rays[(i + 1) % m]
        dets[tuple(sorted((i, (i + 1) % m)))] = a[0] * b[1] - a[1] * b[0]
    scale = math.lcm(*(d.numerator for d in dets.values()))
    values = {c: Fraction(scale) / d for c, d in dets.items()}
    fan = MarkedFan(ambient_dim=2, rays=rays, maximal_cones=tuple(sorted(set(cones))))
    return TropicalFan(fan, MinkowskiWeight(2, values))


def smooth_complete_2fan(rng: random.Random, steps: int):
    """Random complete planar fan with all adjacent mark determinants one.

    Built by corner subdivisions of the standard triangle fan: inserting the
    sum of two adjacent marks keeps determinants at one, so the unit weight
    stays balanced and degrees match 2! times Euclidean areas exactly.
    """
    dirs = [(1, 0), (0, 1), (-1, -1)]
    for _ in range(steps):
        k = rng.randrange(len(dirs))
        a, b = dirs[k], dirs[(k + 1) % len(dirs)]
        dirs.insert(k + 1, (a[0] + b[0], a[1] + b[1]))
    m = len(dirs)
    rays = tuple((Fraction(x), Fraction(y)) for x, y in dirs)
    cones = tuple(sorted(tuple(sorted((i, (i + 1) % m))) for i in range(m)))
    fan = MarkedFan(ambient_dim=2, rays=rays, maximal_cones=cones)
    unit = MinkowskiWeight(2, {c: Fraction(1) for c in cones})
    from lorfan.weights import check_balancing

    assert check_balancing(fan, unit) == ()
    return fan, TropicalFan(fan, unit)


def shoelace_of_vertex_list(fan: MarkedFan, verts: dict) -> Fraction:
    """Independent polygon area: order vertices by normal-cone angle, shoelace."""

    def key(c):
        x = sum(fan.rays[i][0] for i in c)
        y = sum(fan.rays[i][1] for i in c)
        s = abs(x) + abs(y)
        if y > 0 or (y == 0 and x > 0):
            return (0, -x / s)
        return (1, x / s)

    ordered = sorted(verts, key=key)
    total = Fraction(0)
    for k in range(len(ordered)):
        x1, y1 = verts[ordered[k]]
        x2, y2 = verts[ordered[(k + 1) % len(ordered)]]
        total += x1 * y2 - x2 * y1
    return abs(total) / 2
