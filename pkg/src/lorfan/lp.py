"""Exact rational linear programming.

A dense two-phase tableau simplex over Fraction entries.  Pivoting uses the
most-negative-reduced-cost rule and falls back to Bland's rule whenever the
objective stalls, which rules out cycling while keeping the common case fast.
Duals are read off the artificial columns, so infeasibility and "optimum is
nonpositive" outcomes both come with exact Farkas-style witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionError, InternalError
from .linalg import Vec, ZERO, ONE, dot

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

LinearRow = tuple[Vec, Fraction]

# consecutive non-improving pivots tolerated before switching to Bland's rule
_STALL_LIMIT = 12


@dataclass
class _StandardResult:
    status: str
    x: Optional[list[Fraction]]
    value: Optional[Fraction]
    duals: Optional[list[Fraction]]


def _pivot(T, zrow, basis, row, col):
    """Pivot the tableau and the maintained reduced-cost row.

    Rows are mostly zero in the block-structured programs this package
    builds, so updates iterate over the pivot row's nonzero entries only.
    """
    prow = T[row]
    piv = prow[col]
    if piv != ONE:
        inv = ONE / piv
        T[row] = prow = [inv * v if v else v for v in prow]
    nz = [j for j, v in enumerate(prow) if v]
    for other in T:
        if other is prow:
            continue
        f = other[col]
        if f:
            for j in nz:
                other[j] -= f * prow[j]
    f = zrow[col]
    if f:
        for j in nz:
            zrow[j] -= f * prow[j]
    basis[row] = col


def _cost_row(T, basis, cost):
    """Reduced costs c - cB.B^-1.A plus the negated objective in the last slot."""
    zrow = list(cost) + [ZERO]
    for i, b in enumerate(basis):
        cb = cost[b]
        if cb:
            row = T[i]
            for j, v in enumerate(row):
                if v:
                    zrow[j] -= cb * v
    return zrow


def _run_phase(T, zrow, basis, ncols):
    """Minimize over the current tableau; entering columns drawn from range(ncols)."""
    rhs = len(zrow) - 1
    stall = 0
    last_obj = None
    while True:
        obj = zrow[rhs]
        if last_obj is not None and obj == last_obj:
            stall += 1
        else:
            stall = 0
        last_obj = obj
        use_bland = stall >= _STALL_LIMIT

        enter = None
        best = ZERO
        for j in range(ncols):
            rc = zrow[j]
            if rc < 0:
                if use_bland:
                    enter = j
                    break
                if rc < best:
                    best = rc
                    enter = j
        if enter is None:
            return OPTIMAL

        leave = None
        best_ratio = None
        for i in range(len(T)):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][rhs] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave is None:
            return UNBOUNDED
        _pivot(T, zrow, basis, leave, enter)


def _simplex_standard(A, b, c) -> _StandardResult:
    """min c.x  subject to  Ax = b, x >= 0.

    On INFEASIBLE the duals are a Farkas witness: y.A <= 0 and y.b > 0.
    On OPTIMAL they satisfy y.A <= c and y.b = value.
    """
    m = len(A)
    n = len(c)
    flip = [bi < 0 for bi in b]
    rows = [
        [-v for v in A[i]] if flip[i] else list(A[i])
        for i in range(m)
    ]
    rhs = [-b[i] if flip[i] else b[i] for i in range(m)]

    # tableau columns: n structural, m artificial, 1 rhs
    T = [rows[i] + [ONE if k == i else ZERO for k in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]

    def read_duals(cost, zrow):
        # reduced cost on artificial j is cost[n+j] - y_j
        y = []
        for j in range(m):
            val = cost[n + j] - zrow[n + j]
            y.append(-val if flip[j] else val)
        return y

    cost1 = [ZERO] * n + [ONE] * m
    zrow = _cost_row(T, basis, cost1)
    status = _run_phase(T, zrow, basis, n)
    if status != OPTIMAL:
        raise InternalError("phase one cannot be unbounded")
    obj1 = -zrow[n + m]
    if obj1 > 0:
        return _StandardResult(INFEASIBLE, None, None, read_duals(cost1, zrow))

    # drive leftover artificials out of the basis; redundant rows keep them at zero
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is not None:
                _pivot(T, zrow, basis, i, col)

    cost2 = list(c) + [ZERO] * m
    zrow = _cost_row(T, basis, cost2)
    status = _run_phase(T, zrow, basis, n)
    if status == UNBOUNDED:
        return _StandardResult(UNBOUNDED, None, None, None)
    x = [ZERO] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i][n + m]
    value = dot(tuple(c), tuple(x))
    return _StandardResult(OPTIMAL, x, value, read_duals(cost2, zrow))


@dataclass
class LpResult:
    status: str
    x: Optional[Vec]
    value: Optional[Fraction]
    eq_duals: Optional[Vec]
    le_duals: Optional[Vec]


def lp_max(
    objective: Vec,
    equalities: Sequence[LinearRow],
    inequalities: Sequence[LinearRow],
) -> LpResult:
    """max objective.x over free x with a.x = b equalities and a.x <= b rows."""
    nv = len(objective)
    for a, _ in list(equalities) + list(inequalities):
        if len(a) != nv:
            raise DimensionError("constraint row has wrong dimension")
    n_le = len(inequalities)
    rows = []
    rhs = []
    for a, bv in equalities:
        rows.append([*a] + [-v for v in a] + [ZERO] * n_le)
        rhs.append(bv)
    for k, (a, bv) in enumerate(inequalities):
        slack = [ZERO] * n_le
        slack[k] = ONE
        rows.append([*a] + [-v for v in a] + slack)
        rhs.append(bv)
    cost = [-v for v in objective] + [v for v in objective] + [ZERO] * n_le
    res = _simplex_standard(rows, rhs, cost)
    if res.status == INFEASIBLE:
        y = res.duals
        return LpResult(
            INFEASIBLE,
            None,
            None,
            tuple(y[: len(equalities)]),
            tuple(y[len(equalities):]),
        )
    if res.status == UNBOUNDED:
        return LpResult(UNBOUNDED, None, None, None, None)
    x = tuple(res.x[j] - res.x[nv + j] for j in range(nv))
    y = res.duals
    return LpResult(
        OPTIMAL,
        x,
        -res.value,
        tuple(y[: len(equalities)]),
        tuple(y[len(equalities):]),
    )


def linear_feasible(
    equalities: Sequence[LinearRow],
    inequalities: Sequence[LinearRow],
    dim: int,
) -> Optional[Vec]:
    """Some exact x with a.x = b and a.x <= b throughout, or None."""
    if not equalities and not inequalities:
        return (ZERO,) * dim
    res = lp_max((ZERO,) * dim, equalities, inequalities)
    return res.x if res.status == OPTIMAL else None


@dataclass(frozen=True)
class FeasibilityCertificate:
    """Farkas-style witness that no point meets the equalities and strict rows.

    Validity: the multiplier combination of the constraint normals vanishes,
    the inequality multipliers are nonnegative, and the combined right-hand
    side is nonpositive (negative when no inequality multiplier is active).
    """

    eq_multipliers: Vec
    strict_multipliers: Vec
    cap_multiplier: Fraction


def verify_certificate(
    cert: FeasibilityCertificate,
    equalities: Sequence[LinearRow],
    strict_ineqs: Sequence[LinearRow],
    dim: int,
) -> bool:
    mu, lam, nu = cert.eq_multipliers, cert.strict_multipliers, cert.cap_multiplier
    if len(mu) != len(equalities) or len(lam) != len(strict_ineqs):
        return False
    if any(l < 0 for l in lam) or nu < 0:
        return False
    combo = [ZERO] * dim
    for m_i, (a, _) in zip(mu, equalities):
        for j in range(dim):
            combo[j] += m_i * a[j]
    for l_i, (a, _) in zip(lam, strict_ineqs):
        for j in range(dim):
            combo[j] += l_i * a[j]
    if any(v != 0 for v in combo):
        return False
    total = sum(lam, ZERO) + nu
    value = (
        sum((m_i * bv for m_i, (_, bv) in zip(mu, equalities)), ZERO)
        + sum((l_i * bv for l_i, (_, bv) in zip(lam, strict_ineqs)), ZERO)
        + nu
    )
    if total == 1:
        return value <= 0
    if total == 0:
        return value < 0
    return False


@dataclass(frozen=True)
class StrictFeasibility:
    witness: Optional[Vec]
    optimum: Optional[Fraction]
    certificate: Optional[FeasibilityCertificate]

    @property
    def feasible(self) -> bool:
        return self.witness is not None


def strict_feasible(
    equalities: Sequence[LinearRow],
    strict_ineqs: Sequence[LinearRow],
    dim: Optional[int] = None,
) -> StrictFeasibility:
    """Exact point satisfying every equality and every strict inequality.

    Solved as a max-slack program: maximize t with a.x + t <= b on the strict
    rows and t <= 1; a strictly feasible point exists iff the optimum is
    positive.  When none exists, an exact infeasibility certificate is
    returned instead.
    """
    all_rows = list(equalities) + list(strict_ineqs)
    if dim is None:
        if not all_rows:
            raise DimensionError("cannot infer dimension from an empty system")
        dim = len(all_rows[0][0])
    for a, _ in all_rows:
        if len(a) != dim:
            raise DimensionError("constraint row has wrong dimension")

    objective = (ZERO,) * dim + (ONE,)
    eq_rows = [(tuple(a) + (ZERO,), bv) for a, bv in equalities]
    le_rows = [(tuple(a) + (ONE,), bv) for a, bv in strict_ineqs]
    cap = ((ZERO,) * dim + (ONE,), ONE)
    res = lp_max(objective, eq_rows, le_rows + [cap])

    if res.status == INFEASIBLE:
        cert = FeasibilityCertificate(
            eq_multipliers=tuple(-v for v in res.eq_duals),
            strict_multipliers=tuple(-v for v in res.le_duals[:-1]),
            cap_multiplier=-res.le_duals[-1],
        )
        if not verify_certificate(cert, equalities, strict_ineqs, dim):
            raise InternalError("infeasibility certificate failed verification")
        return StrictFeasibility(None, None, cert)
    if res.status != OPTIMAL:
        raise InternalError("max-slack program cannot be unbounded")

    t_star = res.value
    if t_star > 0:
        x = res.x[:dim]
        for a, bv in equalities:
            if dot(a, x) != bv:
                raise InternalError("witness violates an equality")
        for a, bv in strict_ineqs:
            if not dot(a, x) < bv:
                raise InternalError("witness violates a strict inequality")
        return StrictFeasibility(x, t_star, None)

    cert = FeasibilityCertificate(
        eq_multipliers=tuple(-v for v in res.eq_duals),
        strict_multipliers=tuple(-v for v in res.le_duals[:-1]),
        cap_multiplier=-res.le_duals[-1],
    )
    if not verify_certificate(cert, equalities, strict_ineqs, dim):
        raise InternalError("optimality certificate failed verification")
    return StrictFeasibility(None, t_star, cert)
