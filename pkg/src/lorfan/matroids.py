"""Matroids from bases and Bergman fans via chains of flats.

The Bergman fan lives in the quotient of coordinate space by the all-ones
line, realized by deleting the coordinate of element 0.  Rays are proper
nonempty flats marked by the image of their indicator vector; maximal cones
are maximal chains of such flats; the weight is identically one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .fan import MarkedFan, cone_key
from .linalg import ZERO, ONE
from .weights import MinkowskiWeight, TropicalFan, constant_weight


@dataclass(frozen=True)
class Matroid:
    n: int
    bases: frozenset

    @property
    def rank(self) -> int:
        return len(next(iter(self.bases)))

    def rank_of(self, subset) -> int:
        s = frozenset(subset)
        return max(len(s & b) for b in self.bases)

    def closure(self, subset) -> frozenset:
        s = frozenset(subset)
        r = self.rank_of(s)
        return frozenset(e for e in range(self.n) if self.rank_of(s | {e}) == r)

    def loops(self) -> frozenset:
        return self.closure(())

    def flats(self) -> tuple[frozenset, ...]:
        """All flats, found as closures of subsets, ordered by (rank, sorted set)."""
        seen = {self.closure(())}
        frontier = list(seen)
        while frontier:
            f = frontier.pop()
            for e in range(self.n):
                if e not in f:
                    g = self.closure(f | {e})
                    if g not in seen:
                        seen.add(g)
                        frontier.append(g)
        return tuple(sorted(seen, key=lambda f: (self.rank_of(f), sorted(f))))

    def proper_flats(self) -> tuple[frozenset, ...]:
        ground = frozenset(range(self.n))
        return tuple(f for f in self.flats() if f and f != ground)


def matroid_from_bases(n: int, bases) -> Matroid:
    """Validate the exchange axiom exhaustively and reject loops."""
    base_set = frozenset(frozenset(b) for b in bases)
    if not base_set:
        raise PreconditionError("a matroid needs at least one basis")
    sizes = {len(b) for b in base_set}
    if len(sizes) != 1:
        raise PreconditionError("bases must all have the same cardinality")
    for b in base_set:
        if any(not 0 <= e < n for e in b):
            raise PreconditionError("basis element out of range")
    for b1 in base_set:
        for b2 in base_set:
            for e in b1 - b2:
                if not any((b1 - {e}) | {f} in base_set for f in b2 - b1):
                    raise PreconditionError(
                        f"exchange axiom fails for {sorted(b1)}, {sorted(b2)} at {e}"
                    )
    m = Matroid(n=n, bases=base_set)
    if m.loops():
        raise PreconditionError(f"matroid has loops: {sorted(m.loops())}")
    return m


def uniform_matroid(r: int, n: int) -> Matroid:
    return matroid_from_bases(n, itertools.combinations(range(n), r))


def graphic_matroid(edges) -> Matroid:
    """Matroid of a connected graph: bases are the spanning trees.

    Edges are pairs of vertex labels; the ground set is the edge index set.
    """
    edges = [tuple(e) for e in edges]
    vertices = sorted({v for e in edges for v in e})
    nv = len(vertices)
    index = {v: i for i, v in enumerate(vertices)}
    trees = []
    for subset in itertools.combinations(range(len(edges)), nv - 1):
        parent = list(range(nv))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        acyclic = True
        for ei in subset:
            u, v = (find(index[x]) for x in edges[ei])
            if u == v:
                acyclic = False
                break
            parent[u] = v
        if acyclic:
            trees.append(subset)
    return matroid_from_bases(len(edges), trees)


def complete_graph_matroid(k: int) -> Matroid:
    return graphic_matroid(itertools.combinations(range(k), 2))


def fano_matroid() -> Matroid:
    lines = [
        {0, 1, 2},
        {0, 3, 4},
        {0, 5, 6},
        {1, 3, 5},
        {1, 4, 6},
        {2, 3, 6},
        {2, 4, 5},
    ]
    bases = [
        b for b in itertools.combinations(range(7), 3) if set(b) not in lines
    ]
    return matroid_from_bases(7, bases)


def _flat_mark(n: int, flat) -> tuple:
    """Image of the indicator vector after deleting coordinate 0 of the quotient."""
    full = [ONE if e in flat else ZERO for e in range(n)]
    return tuple(full[i] - full[0] for i in range(1, n))


def bergman_fan(m: Matroid) -> TropicalFan:
    """The fan of chains of proper nonempty flats, with unit weight.

    Rank-one matroids have no proper nonempty flats and give the origin fan.
    """
    if m.loops():
        raise PreconditionError("Bergman fans require loopless matroids")
    r = m.rank
    if r < 1:
        raise PreconditionError("Bergman fans require rank at least one")
    flats = m.proper_flats()
    if r == 1:
        fan = MarkedFan(ambient_dim=m.n - 1, rays=(), maximal_cones=((),))
        return TropicalFan(fan, MinkowskiWeight(0, {(): Fraction(1)}))
    rays = tuple(_flat_mark(m.n, f) for f in flats)
    by_rank = {}
    for i, f in enumerate(flats):
        by_rank.setdefault(m.rank_of(f), []).append(i)

    chains = []

    def extend(chain, last_rank):
        if last_rank == r - 1:
            chains.append(cone_key(chain))
            return
        for i in by_rank.get(last_rank + 1, []):
            if flats[chain[-1]] < flats[i]:
                extend(chain + [i], last_rank + 1)

    for i in by_rank.get(1, []):
        extend([i], 1)
    fan = MarkedFan(
        ambient_dim=m.n - 1,
        rays=rays,
        maximal_cones=tuple(sorted(set(chains))),
    )
    return TropicalFan(fan, constant_weight(fan))
