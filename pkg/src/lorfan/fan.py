"""Simplicial marked fans.

A fan is stored as its marked rays plus maximal cones given as sorted tuples
of ray indices; simpliciality means every face of a maximal cone is the cone
on a subset of its rays, so no other cones need to be stored.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import DimensionError, InternalError, PreconditionError
from .linalg import (
    Mat,
    Vec,
    ZERO,
    ONE,
    mat,
    mat_vec,
    rank,
    rref,
    solve_linear,
    vec,
)
from .lp import linear_feasible

Cone = tuple[int, ...]


def cone_key(indices: Iterable[int]) -> Cone:
    return tuple(sorted(set(indices)))


@dataclass(frozen=True)
class MarkedFan:
    ambient_dim: int
    rays: tuple[Vec, ...]
    maximal_cones: tuple[Cone, ...]

    def __post_init__(self):
        for u in self.rays:
            if len(u) != self.ambient_dim:
                raise DimensionError("ray mark has wrong ambient dimension")
            if all(x == 0 for x in u):
                raise PreconditionError("ray marks must be nonzero")
        seen = set()
        for c in self.maximal_cones:
            if tuple(c) != cone_key(c):
                raise PreconditionError("maximal cones must be sorted tuples without repeats")
            if c in seen:
                raise PreconditionError("duplicate maximal cone")
            seen.add(c)
            for i in c:
                if not 0 <= i < len(self.rays):
                    raise PreconditionError("cone refers to a missing ray")
        if not self.maximal_cones:
            raise PreconditionError("a fan needs at least one maximal cone (possibly the origin)")

    @property
    def dimension(self) -> int:
        return max(len(c) for c in self.maximal_cones)

    def cones(self, k: int) -> tuple[Cone, ...]:
        """All k-dimensional cones, i.e. k-subsets of maximal cones, deduplicated."""
        if k < 0 or k > self.dimension:
            raise PreconditionError(f"cone dimension {k} out of range 0..{self.dimension}")
        out = set()
        for c in self.maximal_cones:
            if len(c) >= k:
                out.update(itertools.combinations(c, k))
        return tuple(sorted(out))

    def all_cones(self) -> tuple[Cone, ...]:
        out = []
        for k in range(self.dimension + 1):
            out.extend(self.cones(k))
        return tuple(out)

    def cone_matrix(self, cone: Cone) -> Mat:
        """Marks of the cone's rays as matrix columns."""
        return tuple(zip(*(self.rays[i] for i in cone))) if cone else ((),) * self.ambient_dim

    def cone_coordinates(self, cone: Cone, point: Vec) -> Optional[Vec]:
        """Coordinates of a point in the cone's mark basis, or None if outside the span."""
        if not cone:
            return () if all(x == 0 for x in point) else None
        cols = mat(self.cone_matrix(cone))
        return solve_linear(cols, point)

    def cone_contains(self, cone: Cone, point: Vec) -> bool:
        coords = self.cone_coordinates(cone, point)
        return coords is not None and all(c >= 0 for c in coords)

    def supporting_cones(self, point: Vec) -> tuple[Cone, ...]:
        return tuple(c for c in self.maximal_cones if self.cone_contains(c, point))

    def in_support(self, point: Vec) -> bool:
        return any(self.cone_contains(c, point) for c in self.maximal_cones)


def enumerate_cones(fan: MarkedFan, k: int) -> tuple[Cone, ...]:
    return fan.cones(k)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ValidationReport:
    simplicial: bool
    pure: bool
    fan_condition: bool
    all_rays_used: bool
    failures: tuple[str, ...]

    @property
    def valid(self) -> bool:
        return self.simplicial and self.pure and self.fan_condition and self.all_rays_used


def _overlap_witness(fan: MarkedFan, c1: Cone, c2: Cone) -> bool:
    """True when cone(c1) meets cone(c2) outside the cone on their shared rays.

    Decided exactly: a point of the intersection with a positive coefficient
    on a non-shared ray exists iff the corresponding linear system with sign
    constraints is feasible.
    """
    shared = set(c1) & set(c2)
    n = fan.ambient_dim
    k1, k2 = len(c1), len(c2)
    dim = k1 + k2
    for side, cone_a in ((0, c1), (1, c2)):
        for pos, idx in enumerate(cone_a):
            if idx in shared:
                continue
            var = pos if side == 0 else k1 + pos
            eqs = []
            for coord in range(n):
                row = [fan.rays[i][coord] for i in c1] + [-fan.rays[i][coord] for i in c2]
                eqs.append((vec(row), ZERO))
            pin = [ZERO] * dim
            pin[var] = ONE
            eqs.append((vec(pin), ONE))
            ineqs = []
            for j in range(dim):
                row = [ZERO] * dim
                row[j] = -ONE
                ineqs.append((vec(row), ZERO))
            if linear_feasible(eqs, ineqs, dim) is not None:
                return True
    return False


def validate(fan: MarkedFan, check_pairwise: bool = True) -> ValidationReport:
    """Structural report: simpliciality, purity, ray usage, and the pairwise
    cone-intersection condition (the expensive part, on by default)."""
    failures = []

    simplicial = True
    for c in fan.maximal_cones:
        if c and rank(mat([fan.rays[i] for i in c])) != len(c):
            simplicial = False
            failures.append(f"cone {c} has linearly dependent marks")

    d = fan.dimension
    pure = all(len(c) == d for c in fan.maximal_cones)
    if not pure:
        failures.append("maximal cones do not all have the same dimension")

    used = set(itertools.chain.from_iterable(fan.maximal_cones))
    all_rays_used = used == set(range(len(fan.rays)))
    if not all_rays_used:
        failures.append("some rays belong to no maximal cone")

    fan_condition = True
    if check_pairwise and simplicial:
        for c1, c2 in itertools.combinations(fan.maximal_cones, 2):
            if _overlap_witness(fan, c1, c2):
                fan_condition = False
                failures.append(f"cones {c1} and {c2} overlap beyond their shared face")

    return ValidationReport(
        simplicial=simplicial,
        pure=pure,
        fan_condition=fan_condition,
        all_rays_used=all_rays_used,
        failures=tuple(failures),
    )


# ---------------------------------------------------------------------------
# star fans


@dataclass(frozen=True)
class StarData:
    """Quotient of a fan by the span of one of its cones.

    The quotient coordinates are the non-pivot coordinates left after
    eliminating the apex span, which makes star fans reproducible
    bit-for-bit.  `lift[i]` is the parent ray index of star ray i.
    """

    parent: MarkedFan
    apex: Cone
    fan: MarkedFan
    lift: tuple[int, ...]
    projection: Mat
    pivot_cols: tuple[int, ...]


def star(fan: MarkedFan, apex: Cone) -> StarData:
    apex = cone_key(apex)
    if apex not in set(fan.cones(len(apex))):
        raise PreconditionError(f"{apex} is not a cone of the fan")
    n = fan.ambient_dim
    if not apex:
        return StarData(
            parent=fan,
            apex=apex,
            fan=fan,
            lift=tuple(range(len(fan.rays))),
            projection=mat([[1 if i == j else 0 for j in range(n)] for i in range(n)]),
            pivot_cols=(),
        )

    reduced, pivots = rref(mat([fan.rays[i] for i in apex]))
    if len(pivots) != len(apex):
        raise PreconditionError("apex cone has dependent marks")
    free_cols = [j for j in range(n) if j not in pivots]
    proj_rows = []
    for j in free_cols:
        row = [ZERO] * n
        row[j] = ONE
        for r_idx, p in enumerate(pivots):
            row[p] -= reduced[r_idx][j]
        proj_rows.append(row)
    projection = mat(proj_rows)

    incident = [c for c in fan.maximal_cones if set(apex) <= set(c)]
    neighbor_rays = sorted(set(itertools.chain.from_iterable(incident)) - set(apex))
    index_of = {parent: i for i, parent in enumerate(neighbor_rays)}
    marks = []
    for parent_ray in neighbor_rays:
        image = mat_vec(projection, fan.rays[parent_ray])
        if all(x == 0 for x in image):
            raise InternalError("a neighborhood ray projects to zero; fan is degenerate at the apex")
        marks.append(image)
    star_cones = tuple(
        cone_key(index_of[i] for i in c if i not in apex) for c in incident
    )
    quotient = MarkedFan(
        ambient_dim=n - len(apex),
        rays=tuple(marks),
        maximal_cones=tuple(sorted(set(star_cones))),
    )
    return StarData(
        parent=fan,
        apex=apex,
        fan=quotient,
        lift=tuple(neighbor_rays),
        projection=projection,
        pivot_cols=pivots,
    )


# ---------------------------------------------------------------------------
# pinch detection


@dataclass(frozen=True)
class PinchReport:
    unpinched: bool
    pinched_at: tuple[Cone, ...]


def is_unpinched(fan: MarkedFan) -> PinchReport:
    """Connectivity of every star of codimension at least two.

    Two maximal cones of a star share a nonzero face exactly when the parent
    cones share a ray beyond the apex, so a graph search on maximal cones
    decides connectivity without building the quotients.
    """
    d = fan.dimension
    pinched = []
    for k in range(0, max(d - 1, 0)):
        for tau in fan.cones(k):
            incident = [c for c in fan.maximal_cones if set(tau) <= set(c)]
            if len(incident) <= 1:
                continue
            adj = {i: set() for i in range(len(incident))}
            for i, j in itertools.combinations(range(len(incident)), 2):
                extra = set(incident[i]) & set(incident[j]) - set(tau)
                if extra:
                    adj[i].add(j)
                    adj[j].add(i)
            seen = {0}
            stack = [0]
            while stack:
                cur = stack.pop()
                for nxt in adj[cur]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
            if len(seen) != len(incident):
                pinched.append(tau)
    return PinchReport(unpinched=not pinched, pinched_at=tuple(pinched))


# ---------------------------------------------------------------------------
# stellar subdivision


@dataclass(frozen=True)
class StellarSubdivision:
    fan: MarkedFan
    containment: dict
    ray_map: dict
    new_ray: int

    def __iter__(self):
        yield self.fan
        yield self.containment


def stellar_subdivide(fan: MarkedFan, v: Vec) -> StellarSubdivision:
    """Star the fan at a point of its support; the new ray is marked by v itself.

    Returns the refined fan together with the map from new maximal cones to
    the parent maximal cones containing them, and the reindexing of surviving
    parent rays.
    """
    v = vec(v)
    if len(v) != fan.ambient_dim:
        raise DimensionError("subdivision point has wrong dimension")
    if all(x == 0 for x in v):
        raise PreconditionError("cannot subdivide at the origin")
    if not fan.in_support(v):
        raise PreconditionError("subdivision point lies outside the support")

    new_cone_specs = []  # (frozen ray set incl. possibly NEW, parent cone)
    NEW = -1
    for c in fan.maximal_cones:
        if not fan.cone_contains(c, v):
            new_cone_specs.append((frozenset(c), c))
            continue
        for facet in itertools.combinations(c, len(c) - 1):
            if not fan.cone_contains(facet, v):
                new_cone_specs.append((frozenset(facet) | {NEW}, c))

    used_old = sorted(set().union(*(s - {NEW} for s, _ in new_cone_specs)) if new_cone_specs else set())
    ray_map = {old: i for i, old in enumerate(used_old)}
    rays = [fan.rays[i] for i in used_old] + [v]
    new_ray = len(used_old)

    containment = {}
    cones = set()
    for spec, parent in new_cone_specs:
        c = cone_key(ray_map[i] if i != NEW else new_ray for i in spec)
        cones.add(c)
        containment[c] = parent
    refined = MarkedFan(
        ambient_dim=fan.ambient_dim,
        rays=tuple(rays),
        maximal_cones=tuple(sorted(cones)),
    )
    return StellarSubdivision(
        fan=refined,
        containment=containment,
        ray_map=ray_map,
        new_ray=new_ray,
    )


# ---------------------------------------------------------------------------
# products


def product_fan(f1: MarkedFan, f2: MarkedFan) -> MarkedFan:
    """Pairwise products of cones; rays of the factors embed block-diagonally."""
    n1, n2 = f1.ambient_dim, f2.ambient_dim
    rays = [tuple(u) + (ZERO,) * n2 for u in f1.rays]
    rays += [(ZERO,) * n1 + tuple(u) for u in f2.rays]
    offset = len(f1.rays)
    cones = []
    for c1 in f1.maximal_cones:
        for c2 in f2.maximal_cones:
            cones.append(cone_key(list(c1) + [offset + i for i in c2]))
    return MarkedFan(
        ambient_dim=n1 + n2,
        rays=tuple(rays),
        maximal_cones=tuple(sorted(set(cones))),
    )


def point_fan(ambient_dim: int = 0) -> MarkedFan:
    """The fan consisting of the origin alone."""
    return MarkedFan(ambient_dim=ambient_dim, rays=(), maximal_cones=((),))


def minimal_containing_cone(fan: MarkedFan, v: Vec) -> Cone:
    """The cone whose relative interior contains v (v must be in the support)."""
    for c in fan.maximal_cones:
        coords = fan.cone_coordinates(c, v)
        if coords is not None and all(x >= 0 for x in coords):
            return cone_key(i for i, x in zip(c, coords) if x > 0)
    raise PreconditionError("point lies outside the support")
