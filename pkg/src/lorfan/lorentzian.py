"""Volume polynomials, the Lorentzian decision procedure, and AF reports.

The decision procedure is the two-dimensional characterization: a positive
balanced fan is Lorentzian iff it is quasiprojective, no star of codimension
at least two disconnects away from the origin, and the quadratic volume form
of every codimension-two star has exactly one positive eigenvalue.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .convexity import classify_convexity, find_strictly_convex
from .errors import (
    BalancingError,
    ConvexityError,
    InternalError,
    PreconditionError,
)
from .fan import Cone, MarkedFan, PinchReport, is_unpinched, star
from .linalg import Inertia, ZERO, ONE, inertia, mat
from .weights import (
    Divisor,
    TropicalFan,
    divisor_action,
    indicator_divisor,
    mixed_degree,
    push_divisor_to_star,
    star_weight,
)


# ---------------------------------------------------------------------------
# volume forms


@dataclass(frozen=True)
class QuadraticVolumeForm:
    """The symmetric matrix of the degree-two volume polynomial of a 2-fan.

    Entry (r1, r2) is the weight of the cone spanned by r1 and r2 (zero when
    they span none); the diagonal holds the negated axial coefficients forced
    by balancing at each ray.  Provenance records which star produced it.
    """

    matrix: tuple
    provenance: Cone

    def inertia(self) -> Inertia:
        return inertia(self.matrix)


def volume_poly_2d(tf: TropicalFan, provenance: Cone = ()) -> QuadraticVolumeForm:
    """Quadratic volume form of a two-dimensional positive balanced fan.

    The off-diagonal entries are cone weights; the diagonal entry at a ray is
    -a where the weighted sum of opposite marks around the ray equals a times
    the ray's own mark (balancing puts that sum in the ray's span).
    """
    fan = tf.fan
    if fan.dimension != 2:
        raise PreconditionError("volume form requires a two-dimensional fan")
    nrays = len(fan.rays)
    entries = [[ZERO] * nrays for _ in range(nrays)]
    for sigma in fan.cones(2):
        r1, r2 = sigma
        w = tf.weight[sigma]
        entries[r1][r2] = w
        entries[r2][r1] = w
    for rho in range(nrays):
        total = [ZERO] * fan.ambient_dim
        for sigma in fan.cones(2):
            if rho in sigma:
                (other,) = set(sigma) - {rho}
                for j, x in enumerate(fan.rays[other]):
                    total[j] += tf.weight[sigma] * x
        u = fan.rays[rho]
        pivot = next((j for j, x in enumerate(u) if x != 0))
        a = total[pivot] / u[pivot]
        if any(t != a * x for t, x in zip(total, u)):
            raise BalancingError(f"weight is unbalanced at ray {rho}")
        entries[rho][rho] = -a
    return QuadraticVolumeForm(
        matrix=tuple(tuple(row) for row in entries),
        provenance=provenance,
    )


Polynomial = dict  # exponent tuple over rays -> Fraction


def volume_polynomial(tf: TropicalFan) -> Polynomial:
    """Dense homogeneous volume polynomial, as exponent-tuple -> coefficient.

    Coefficients are mixed degrees of ray indicators with multinomial
    bookkeeping; intermediate weights are shared across monomials with a
    common prefix.  Desk scale only (dimension at most four).
    """
    fan = tf.fan
    d = fan.dimension
    if d > 4:
        raise PreconditionError("volume polynomials are supported up to dimension four")
    nrays = len(fan.rays)
    if d == 0:
        return {(): tf.weight[()]}
    indicators = [indicator_divisor(fan, i) for i in range(nrays)]
    partial = {(): tf.weight}
    poly = {}
    for combo in itertools.combinations_with_replacement(range(nrays), d):
        for k in range(1, d + 1):
            prefix = combo[:k]
            if prefix not in partial:
                partial[prefix] = divisor_action(
                    fan, partial[combo[: k - 1]], indicators[combo[k - 1]]
                )
        degree = partial[combo][()]
        if degree == 0:
            continue
        expo = [0] * nrays
        for i in combo:
            expo[i] += 1
        multi = math.factorial(d)
        for e in expo:
            multi //= math.factorial(e)
        poly[tuple(expo)] = multi * degree
    return poly


def poly_eval(poly: Polynomial, values: Sequence[Fraction]) -> Fraction:
    total = ZERO
    for expo, coeff in poly.items():
        term = coeff
        for v, e in zip(values, expo):
            term *= Fraction(v) ** e
        total += term
    return total


def hessian_of_quadratic(poly: Polynomial, nrays: int):
    """Symmetric matrix H with poly(z) = z.H.z for a homogeneous quadratic."""
    entries = [[ZERO] * nrays for _ in range(nrays)]
    for expo, coeff in poly.items():
        support = [i for i, e in enumerate(expo) if e]
        if sum(expo) != 2:
            raise PreconditionError("not a quadratic polynomial")
        if len(support) == 1:
            i = support[0]
            entries[i][i] = coeff
        else:
            i, j = support
            entries[i][j] = coeff / 2
            entries[j][i] = coeff / 2
    return tuple(tuple(row) for row in entries)


# ---------------------------------------------------------------------------
# the decision procedure


@dataclass(frozen=True)
class StarInertiaRecord:
    cone: Cone
    inertia: Inertia
    form: QuadraticVolumeForm


@dataclass(frozen=True)
class LorentzianCertificate:
    verdict: bool
    quasiprojective: bool
    witness: Optional[Divisor]
    pinch_report: PinchReport
    star_records: tuple[StarInertiaRecord, ...]
    # inertia records depend on the marks, so the certificate pins them down
    marking: tuple = ()

    @property
    def failing_stars(self) -> tuple[Cone, ...]:
        return tuple(r.cone for r in self.star_records if r.inertia.p != 1)


def is_lorentzian(tf: TropicalFan) -> LorentzianCertificate:
    """Certificate-producing Lorentzian test.

    Quasiprojectivity is witnessed by an exact strictly convex divisor; the
    star condition demands exactly one positive eigenvalue of the quadratic
    volume form of every codimension-two star.  Fans of dimension at most one
    are Lorentzian exactly when quasiprojective.
    """
    fan = tf.fan
    d = fan.dimension
    witness = find_strictly_convex(fan)
    quasiprojective = witness is not None
    pinch = is_unpinched(fan)
    records = []
    if d >= 2:
        for tau in sorted(fan.cones(d - 2)):
            sd = star(fan, tau)
            stf = star_weight(tf, tau, sd)
            form = volume_poly_2d(stf, provenance=tau)
            records.append(StarInertiaRecord(tau, form.inertia(), form))
    verdict = (
        quasiprojective
        and pinch.unpinched
        and all(r.inertia.p == 1 for r in records)
    )
    return LorentzianCertificate(
        verdict=verdict,
        quasiprojective=quasiprojective,
        witness=witness,
        pinch_report=pinch,
        star_records=tuple(records),
        marking=fan.rays,
    )


# ---------------------------------------------------------------------------
# sequence shape


def is_log_concave(seq: Sequence[Fraction]) -> bool:
    return all(
        seq[k] * seq[k] >= seq[k - 1] * seq[k + 1] for k in range(1, len(seq) - 1)
    )


def is_unimodal(seq: Sequence[Fraction]) -> bool:
    decreasing = False
    for a, b in zip(seq, seq[1:]):
        if b < a:
            decreasing = True
        elif b > a and decreasing:
            return False
    return True


# ---------------------------------------------------------------------------
# AF reports


@dataclass(frozen=True)
class AFReport:
    divisors: tuple[Divisor, Divisor]
    auxiliary: tuple[Divisor, ...]
    af_gap: Fraction
    sequence: tuple[Fraction, ...]
    log_concave: bool
    unimodal: bool


def af_report(
    tf: TropicalFan,
    d1: Divisor,
    d2: Divisor,
    aux: Sequence[Divisor] = (),
) -> AFReport:
    """Alexandrov-Fenchel gap and full degree sequence for a convex pair.

    The gap is deg(D1 D2 aux)^2 - deg(D1^2 aux) deg(D2^2 aux); the sequence
    runs through deg(D1^k D2^(d-k)).  All inputs must verify as convex.
    """
    fan = tf.fan
    d = fan.dimension
    if d < 2:
        raise PreconditionError("AF reports need dimension at least two")
    if len(aux) != d - 2:
        raise PreconditionError(f"need {d - 2} auxiliary divisors, got {len(aux)}")
    for z in (d1, d2, *aux):
        cert = classify_convexity(fan, z, strict=False)
        if not cert.convex:
            raise ConvexityError("input divisor is not convex", certificate=cert)
    aux = tuple(aux)
    mixed = mixed_degree(fan, tf.weight, [d1, d2, *aux])
    sq1 = mixed_degree(fan, tf.weight, [d1, d1, *aux])
    sq2 = mixed_degree(fan, tf.weight, [d2, d2, *aux])
    gap = mixed * mixed - sq1 * sq2
    seq = tuple(
        mixed_degree(fan, tf.weight, [d1] * k + [d2] * (d - k)) for k in range(d + 1)
    )
    return AFReport(
        divisors=(tuple(d1), tuple(d2)),
        auxiliary=aux,
        af_gap=gap,
        sequence=seq,
        log_concave=is_log_concave(seq),
        unimodal=is_unimodal(seq),
    )


# ---------------------------------------------------------------------------
# definition-level sampling


def sample_strictly_convex(
    fan: MarkedFan,
    witness: Divisor,
    rng: random.Random,
    max_halvings: int = 14,
) -> Divisor:
    """A random strictly convex divisor: the witness plus a shrinking random
    nonnegative combination of ray indicators, re-certified before use."""
    if not witness:
        return ()
    scale = Fraction(rng.randint(1, 4))
    base = tuple(scale * v for v in witness)
    bump = tuple(Fraction(rng.randint(0, 12), 4) for _ in range(len(fan.rays)))
    eps = ONE
    for _ in range(max_halvings):
        candidate = tuple(b + eps * p for b, p in zip(base, bump))
        if classify_convexity(fan, candidate, strict=True).strictly_convex:
            return candidate
        eps /= 2
    raise InternalError("sampling failed to produce a strictly convex divisor")


@dataclass(frozen=True)
class StarSampleRecord:
    cone: Cone
    positive_counts: tuple[int, ...]
    top_degrees_positive: bool


@dataclass(frozen=True)
class SampleCheckReport:
    seed: int
    samples: int
    records: tuple[StarSampleRecord, ...]

    @property
    def all_lorentzian_signs(self) -> bool:
        return all(
            all(p == 1 for p in r.positive_counts) and r.top_degrees_positive
            for r in self.records
        )


def definition_sample_check(tf: TropicalFan, samples: int, seed: int) -> SampleCheckReport:
    """Necessary-condition sampling straight from the defining property.

    For each star of dimension at least two and random strictly convex
    auxiliary divisors, the bilinear mixed-degree form on the ray basis must
    show exactly one positive eigenvalue, and sampled top degrees must be
    positive.  Complements the exact decision procedure.
    """
    fan = tf.fan
    witness = find_strictly_convex(fan)
    if witness is None:
        raise PreconditionError("sampling requires a quasiprojective fan")
    rng = random.Random(seed)
    records = []
    for tau in sorted(fan.all_cones()):
        sd = star(fan, tau)
        d_star = sd.fan.dimension
        if d_star < 2:
            continue
        stf = star_weight(tf, tau, sd)
        star_witness = push_divisor_to_star(sd, witness)
        if not classify_convexity(sd.fan, star_witness, strict=True).strictly_convex:
            raise InternalError("pushed witness lost strict convexity on a star")
        nrays = len(sd.fan.rays)
        indicators = [indicator_divisor(sd.fan, i) for i in range(nrays)]
        p_counts = []
        tops_positive = True
        for _ in range(samples):
            aux = [
                sample_strictly_convex(sd.fan, star_witness, rng)
                for _ in range(d_star - 2)
            ]
            current = stf.weight
            for z in aux:
                current = divisor_action(sd.fan, current, z)
            # degree-one weights are balanced, so pairing against a second
            # indicator just reads off the weight value at that ray
            acted = [divisor_action(sd.fan, current, ind) for ind in indicators]
            form = mat(
                tuple(tuple(acted[i][(j,)] for j in range(nrays)) for i in range(nrays))
            )
            p_counts.append(inertia(form).p)
            tops = [
                sample_strictly_convex(sd.fan, star_witness, rng)
                for _ in range(d_star)
            ]
            if mixed_degree(sd.fan, stf.weight, tops) <= 0:
                tops_positive = False
        records.append(
            StarSampleRecord(
                cone=tau,
                positive_counts=tuple(p_counts),
                top_degrees_positive=tops_positive,
            )
        )
    return SampleCheckReport(seed=seed, samples=samples, records=tuple(records))
