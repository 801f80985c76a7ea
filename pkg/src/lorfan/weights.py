"""Minkowski weights, balancing, the divisor action, and mixed degrees.

A degree-k weight assigns a rational to every k-cone.  Balancing at a
(k-1)-cone means the weighted sum of the opposite ray marks lands in the
span of the cone; piecewise linear functions act on balanced weights by
measuring their failure to be linear across each cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import BalancingError, DimensionError, PreconditionError
from .fan import Cone, MarkedFan, StarData, cone_key, star
from .linalg import Vec, ZERO, ONE, det, dot, mat, solve_linear, vec

Divisor = tuple[Fraction, ...]


def divisor(values) -> Divisor:
    return tuple(Fraction(v) for v in values)


def indicator_divisor(fan: MarkedFan, ray: int) -> Divisor:
    return tuple(ONE if i == ray else ZERO for i in range(len(fan.rays)))


def linear_divisor(fan: MarkedFan, functional: Vec) -> Divisor:
    """Restriction of a global linear functional to the ray marks."""
    return tuple(dot(functional, u) for u in fan.rays)


@dataclass(frozen=True)
class MinkowskiWeight:
    degree: int
    values: dict

    def __post_init__(self):
        for c in self.values:
            if len(c) != self.degree:
                raise DimensionError("weight key has wrong cone dimension")

    def __getitem__(self, cone: Cone) -> Fraction:
        try:
            return self.values[cone_key(cone)]
        except KeyError:
            raise PreconditionError(f"weight missing a value on cone {cone}") from None

    def is_positive(self) -> bool:
        return all(v > 0 for v in self.values.values())


def weight(degree: int, values: dict) -> MinkowskiWeight:
    return MinkowskiWeight(degree, {cone_key(c): Fraction(v) for c, v in values.items()})


def constant_weight(fan: MarkedFan, value=1) -> MinkowskiWeight:
    d = fan.dimension
    return MinkowskiWeight(d, {c: Fraction(value) for c in fan.cones(d)})


@dataclass(frozen=True)
class TropicalFan:
    """A simplicial fan together with a positive top-degree weight."""

    fan: MarkedFan
    weight: MinkowskiWeight

    def __post_init__(self):
        d = self.fan.dimension
        if self.weight.degree != d:
            raise PreconditionError("tropical weight must have top degree")
        for c in self.fan.cones(d):
            if self.weight[c] <= 0:
                raise PreconditionError(f"weight must be positive; cone {c} fails")

    @property
    def dimension(self) -> int:
        return self.fan.dimension


def _balancing_defect(fan: MarkedFan, w: MinkowskiWeight, tau: Cone, k: int):
    """Weighted sum of opposite marks at tau, and its coordinates in tau's span."""
    total = (ZERO,) * fan.ambient_dim
    for sigma in fan.cones(k):
        if set(tau) <= set(sigma):
            (extra,) = set(sigma) - set(tau)
            total = tuple(t + w[sigma] * u for t, u in zip(total, fan.rays[extra]))
    coords = fan.cone_coordinates(tau, total)
    return total, coords


def check_balancing(fan: MarkedFan, w: MinkowskiWeight) -> tuple[Cone, ...]:
    """Cones of dimension degree-1 where balancing fails; empty means balanced."""
    k = w.degree
    if k == 0:
        return ()
    for sigma in fan.cones(k):
        w[sigma]
    failing = []
    for tau in fan.cones(k - 1):
        _, coords = _balancing_defect(fan, w, tau, k)
        if coords is None:
            failing.append(tau)
    return tuple(failing)


def divisor_action(fan: MarkedFan, w: MinkowskiWeight, z: Divisor) -> MinkowskiWeight:
    """Apply the piecewise linear function with ray values z to a degree-k weight.

    The value on a (k-1)-cone is the weighted sum of z over the opposite rays
    minus the unique linear function on the cone's span that matches z on its
    own rays, evaluated at the balancing sum.
    """
    k = w.degree
    if k < 1:
        raise PreconditionError("divisor action needs a weight of degree at least one")
    if len(z) != len(fan.rays):
        raise DimensionError("divisor has one value per ray")
    out = {}
    for tau in fan.cones(k - 1):
        linear_part = ZERO
        for sigma in fan.cones(k):
            if set(tau) <= set(sigma):
                (extra,) = set(sigma) - set(tau)
                linear_part += w[sigma] * z[extra]
        _, coords = _balancing_defect(fan, w, tau, k)
        if coords is None:
            raise BalancingError(f"weight is unbalanced at cone {tau}")
        correction = sum((c * z[i] for c, i in zip(coords, tau)), ZERO)
        out[tau] = linear_part - correction
    return MinkowskiWeight(k - 1, out)


def mixed_degree(fan: MarkedFan, w: MinkowskiWeight, divisors: Sequence[Divisor]) -> Fraction:
    """Iterated divisor action evaluated at the origin."""
    if len(divisors) != w.degree:
        raise PreconditionError(
            f"need exactly {w.degree} divisors, got {len(divisors)}"
        )
    current = w
    for z in divisors:
        current = divisor_action(fan, current, z)
    return current[()]


# ---------------------------------------------------------------------------
# stars


def star_weight(tf: TropicalFan, apex: Cone, star_data: Optional[StarData] = None) -> TropicalFan:
    """Induced tropical structure on the star: each quotient cone inherits the
    weight of the unique maximal cone over it."""
    sd = star_data if star_data is not None else star(tf.fan, apex)
    apex = sd.apex
    values = {}
    for c in sd.fan.maximal_cones:
        parent_cone = cone_key(list(apex) + [sd.lift[i] for i in c])
        values[c] = tf.weight[parent_cone]
    return TropicalFan(sd.fan, MinkowskiWeight(sd.fan.dimension, values))


def push_divisor_to_star(sd: StarData, z: Divisor) -> Divisor:
    """The divisor induced on a star fan.

    Subtracts the unique linear functional that matches z on the apex rays
    and vanishes on the non-pivot coordinates, then reads the leftover values
    on the neighborhood rays.
    """
    fan = sd.parent
    if len(z) != len(fan.rays):
        raise DimensionError("divisor has one value per ray")
    if not sd.apex:
        return tuple(z)
    k = len(sd.apex)
    rows = mat([[fan.rays[i][p] for p in sd.pivot_cols] for i in sd.apex])
    rhs = vec([z[i] for i in sd.apex])
    psi_pivot = solve_linear(rows, rhs)
    if psi_pivot is None:
        raise DimensionError("apex marks are degenerate")
    psi = [ZERO] * fan.ambient_dim
    for p, val in zip(sd.pivot_cols, psi_pivot):
        psi[p] = val
    psi = vec(psi)
    return tuple(z[parent] - dot(psi, fan.rays[parent]) for parent in sd.lift)


# ---------------------------------------------------------------------------
# rescaling and transport


def rescale_marking(tf: TropicalFan, scale: Sequence[Fraction]) -> TropicalFan:
    """Equivalent representative with marks scaled ray by ray.

    Weights pick up the inverse product of the scales over each cone, which
    keeps every mixed degree of divisor classes unchanged.
    """
    lam = [Fraction(s) for s in scale]
    if len(lam) != len(tf.fan.rays):
        raise DimensionError("one scale per ray required")
    if any(s <= 0 for s in lam):
        raise PreconditionError("scales must be positive")
    rays = tuple(tuple(s * x for x in u) for s, u in zip(lam, tf.fan.rays))
    fan = MarkedFan(tf.fan.ambient_dim, rays, tf.fan.maximal_cones)
    values = {}
    for c, v in tf.weight.values.items():
        factor = ONE
        for i in c:
            factor /= lam[i]
        values[c] = factor * v
    return TropicalFan(fan, MinkowskiWeight(tf.weight.degree, values))


def rescale_divisor(z: Divisor, scale: Sequence[Fraction]) -> Divisor:
    """The same divisor class expressed on rescaled marks."""
    return tuple(Fraction(s) * v for s, v in zip(scale, z))


def transport_weight(
    coarse: TropicalFan,
    fine: MarkedFan,
    containment: Optional[dict] = None,
) -> TropicalFan:
    """Move a top weight across a refinement using parallelepiped volume ratios.

    Every fine maximal cone picks up the coarse weight divided by the absolute
    determinant of its marks expressed in the coarse cone's mark basis; this
    is the unique scaling that keeps the result balanced and leaves mixed
    degrees of pulled-back divisors unchanged.  The containment map is
    recomputed from barycenters when not supplied, and is verified either way.
    """
    cfan = coarse.fan
    if fine.ambient_dim != cfan.ambient_dim:
        raise DimensionError("refinement lives in a different ambient space")
    if fine.dimension != cfan.dimension:
        raise PreconditionError("refinement must have the same dimension")
    values = {}
    for c in fine.maximal_cones:
        if containment is not None and c in containment:
            parent = cone_key(containment[c])
        else:
            bary = vec([sum(col, ZERO) for col in zip(*(fine.rays[i] for i in c))])
            parent = next(
                (p for p in cfan.maximal_cones if cfan.cone_contains(p, bary)), None
            )
            if parent is None:
                raise PreconditionError(f"fine cone {c} lies outside the coarse support")
        columns = []
        for i in c:
            coords = cfan.cone_coordinates(parent, fine.rays[i])
            if coords is None or any(x < 0 for x in coords):
                raise PreconditionError(
                    f"fine cone {c} is not contained in coarse cone {parent}"
                )
            columns.append(coords)
        ratio = abs(det(mat(tuple(zip(*columns)))))
        values[c] = coarse.weight[parent] / ratio
    return TropicalFan(fine, MinkowskiWeight(fine.dimension, values))


def pullback_divisor(coarse: MarkedFan, z: Divisor, fine: MarkedFan) -> Divisor:
    """Evaluate the coarse piecewise linear function at the fine ray marks."""
    if len(z) != len(coarse.rays):
        raise DimensionError("divisor has one value per ray")
    out = []
    for u in fine.rays:
        parent = next((c for c in coarse.maximal_cones if coarse.cone_contains(c, u)), None)
        if parent is None:
            raise PreconditionError("fine ray lies outside the coarse support")
        coords = coarse.cone_coordinates(parent, u)
        out.append(sum((x * z[i] for x, i in zip(coords, parent)), ZERO))
    return tuple(out)
