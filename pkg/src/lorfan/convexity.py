"""Convexity of divisors and quasiprojectivity witnesses.

A divisor is convex when every cone admits a linear representative that
matches it on the cone's rays and stays below it on the neighborhood rays;
strict convexity asks for strict slack.  Both are decided by exact linear
feasibility.  The matching equalities are eliminated analytically (a pinned
particular functional plus a basis of functionals vanishing on the cone), so
every feasibility block is small and equality-free.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import InternalError, PreconditionError
from .fan import Cone, MarkedFan
from .linalg import Vec, ZERO, ONE, dot, mat, rank, rref, solve_linear, vec
from .lp import linear_feasible, strict_feasible

VERDICT_NONE = "none"
VERDICT_CONVEX = "convex"
VERDICT_STRICT = "strictly-convex"


def neighborhood_rays(fan: MarkedFan, tau: Cone) -> tuple[int, ...]:
    """Rays of all maximal cones containing tau, minus tau's own rays."""
    incident = [c for c in fan.maximal_cones if set(tau) <= set(c)]
    return tuple(sorted(set(itertools.chain.from_iterable(incident)) - set(tau)))


@lru_cache(maxsize=None)
def _block_data(fan: MarkedFan, tau: Cone):
    """Functional bookkeeping for matching divisor values on tau's rays.

    Returns (particulars, annihilators): particulars[r] is the functional
    taking value one on tau's r-th mark, zero on the others, and zero on all
    non-pivot coordinates; the annihilator rows span the functionals that
    vanish on the whole cone span.  Every functional matching z on tau is
    sum(z_r * particulars[r]) plus a combination of annihilator rows.
    """
    n = fan.ambient_dim
    if not tau:
        identity = tuple(
            tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
        )
        return (), identity
    marks = [fan.rays[i] for i in tau]
    reduced, pivots = rref(mat(marks))
    if len(pivots) != len(tau):
        raise PreconditionError(f"cone {tau} has dependent marks")
    square = mat([[m[p] for p in pivots] for m in marks])
    particulars = []
    for r in range(len(tau)):
        unit = vec([ONE if i == r else ZERO for i in range(len(tau))])
        coeffs = solve_linear(square, unit)
        psi = [ZERO] * n
        for p, c in zip(pivots, coeffs):
            psi[p] = c
        particulars.append(tuple(psi))
    free_cols = [j for j in range(n) if j not in pivots]
    annihilators = []
    for j in free_cols:
        row = [ZERO] * n
        row[j] = ONE
        for r_idx, p in enumerate(pivots):
            row[p] -= reduced[r_idx][j]
        annihilators.append(tuple(row))
    return tuple(particulars), tuple(annihilators)


@dataclass(frozen=True)
class ConeWitness:
    cone: Cone
    functional: Optional[Vec]
    strict: bool
    satisfied: bool


@dataclass(frozen=True)
class ConvexityCertificate:
    divisor: tuple
    strict_requested: bool
    verdict: str
    witnesses: tuple[ConeWitness, ...]
    failing: tuple[Cone, ...]

    @property
    def convex(self) -> bool:
        return self.verdict in (VERDICT_CONVEX, VERDICT_STRICT)

    @property
    def strictly_convex(self) -> bool:
        return self.verdict == VERDICT_STRICT


def _assemble(particulars, z_on_tau, annihilators, w) -> Vec:
    n = len(annihilators[0]) if annihilators else len(particulars[0])
    phi = [ZERO] * n
    for zv, psi in zip(z_on_tau, particulars):
        for j in range(n):
            phi[j] += zv * psi[j]
    for wv, row in zip(w, annihilators):
        for j in range(n):
            phi[j] += wv * row[j]
    return tuple(phi)


def _witness_at_cone(fan: MarkedFan, z, tau: Cone, strict: bool) -> ConeWitness:
    particulars, annihilators = _block_data(fan, tau)
    z_on_tau = [Fraction(z[i]) for i in tau]
    neighbors = neighborhood_rays(fan, tau)
    if not neighbors:
        phi = _assemble(particulars, z_on_tau, annihilators, [ZERO] * len(annihilators))
        return ConeWitness(tau, phi, strict, True)
    base = _assemble(particulars, z_on_tau, annihilators, [ZERO] * len(annihilators))
    rows = []
    for eta in neighbors:
        u = fan.rays[eta]
        coeffs = vec([dot(vec(row), u) for row in annihilators])
        rows.append((coeffs, Fraction(z[eta]) - dot(base, u)))
    dim = len(annihilators)
    if strict:
        res = strict_feasible([], rows, dim=dim)
        w = res.witness
    else:
        w = linear_feasible([], rows, dim)
    if w is None:
        return ConeWitness(tau, None, strict, False)
    phi = _assemble(particulars, z_on_tau, annihilators, w)
    for i in tau:
        if dot(phi, fan.rays[i]) != z[i]:
            raise InternalError("reconstructed witness misses a matching value")
    return ConeWitness(tau, phi, strict, True)


def classify_convexity(fan: MarkedFan, z, strict: bool = False) -> ConvexityCertificate:
    """Per-cone feasibility certificates for the requested convexity level.

    When a strict test fails the divisor is retested weakly so the verdict
    distinguishes convex from not convex at all.
    """
    if len(z) != len(fan.rays):
        raise PreconditionError("divisor has one value per ray")
    witnesses = []
    failing = []
    for tau in fan.all_cones():
        w = _witness_at_cone(fan, z, tau, strict)
        witnesses.append(w)
        if not w.satisfied:
            failing.append(tau)
    if not failing:
        verdict = VERDICT_STRICT if strict else VERDICT_CONVEX
    elif strict:
        weak = classify_convexity(fan, z, strict=False)
        verdict = VERDICT_CONVEX if weak.convex else VERDICT_NONE
    else:
        verdict = VERDICT_NONE
    return ConvexityCertificate(
        divisor=tuple(Fraction(v) for v in z),
        strict_requested=strict,
        verdict=verdict,
        witnesses=tuple(witnesses),
        failing=tuple(failing),
    )


def spanning_rays(fan: MarkedFan) -> tuple[int, ...]:
    """First ray subset (by index) whose marks form a basis of the mark span."""
    chosen = []
    for i in range(len(fan.rays)):
        if rank(mat([fan.rays[j] for j in chosen + [i]])) == len(chosen) + 1:
            chosen.append(i)
    return tuple(chosen)


def find_strictly_convex(fan: MarkedFan) -> Optional[tuple]:
    """A strictly convex divisor, or None when the fan admits none."""
    result = strict_convexity_program(fan)
    if result.witness is None:
        return None
    return tuple(result.witness[: len(fan.rays)])


def strict_convexity_program(fan: MarkedFan):
    """The joint strict-feasibility program behind find_strictly_convex.

    One block of quotient-functional variables per cone with a nonempty
    neighborhood; the divisor values are pinned to zero on a spanning set of
    rays to factor out global linear functions.  Returns the full max-slack
    result, so absence comes with the exact optimum and its dual certificate.
    """
    from .lp import StrictFeasibility

    nrays = len(fan.rays)
    if nrays == 0:
        return StrictFeasibility(witness=(), optimum=None, certificate=None)

    blocks = []
    for tau in fan.all_cones():
        neighbors = neighborhood_rays(fan, tau)
        if neighbors:
            blocks.append((tau, neighbors))
    if not blocks:
        return StrictFeasibility(witness=(ZERO,) * nrays, optimum=None, certificate=None)

    offsets = {}
    dim = nrays
    for tau, _ in blocks:
        _, annihilators = _block_data(fan, tau)
        offsets[tau] = (dim, len(annihilators))
        dim += len(annihilators)

    strict_rows = []
    for tau, neighbors in blocks:
        particulars, annihilators = _block_data(fan, tau)
        base, width = offsets[tau]
        for eta in neighbors:
            u = fan.rays[eta]
            row = [ZERO] * dim
            # phi(u_eta) - z_eta < 0 with phi = sum z_r psi_r + w.annihilators
            for ray_idx, psi in zip(tau, particulars):
                row[ray_idx] += dot(vec(psi), u)
            for k in range(width):
                row[base + k] += dot(vec(annihilators[k]), u)
            row[eta] -= ONE
            strict_rows.append((vec(row), ZERO))

    eqs = []
    for i in spanning_rays(fan):
        row = [ZERO] * dim
        row[i] = ONE
        eqs.append((vec(row), ZERO))

    return strict_feasible(eqs, strict_rows, dim=dim)
