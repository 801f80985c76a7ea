"""JSON formats for fans, weights, divisors, matroids, and reports.

Rationals travel as strings "p/q" ("p" when the denominator is one); cone
keys are comma-joined ascending ray indices.  Serialization is canonical:
lowest terms, sorted keys, stable orderings, so emitted files round-trip to
equal objects.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .convexity import ConvexityCertificate
from .errors import InputError
from .fan import MarkedFan, PinchReport, StellarSubdivision, ValidationReport, cone_key
from .lorentzian import AFReport, LorentzianCertificate, SampleCheckReport
from .matroids import Matroid, matroid_from_bases
from .ops import MixedVolumeResult
from .weights import Divisor, MinkowskiWeight, TropicalFan


def rat_to_str(x: Fraction) -> str:
    return str(Fraction(x))


def str_to_rat(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {s!r}: {exc}") from None


def cone_to_key(cone) -> str:
    return ",".join(str(i) for i in cone)


def key_to_cone(key: str):
    key = key.strip()
    if not key:
        return ()
    try:
        return cone_key(int(p) for p in key.split(","))
    except ValueError as exc:
        raise InputError(f"bad cone key {key!r}: {exc}") from None


def fan_to_json(fan: MarkedFan, weight: Optional[MinkowskiWeight] = None) -> dict:
    out = {
        "ambient_dim": fan.ambient_dim,
        "rays": [[rat_to_str(x) for x in u] for u in fan.rays],
        "maximal_cones": [list(c) for c in fan.maximal_cones],
    }
    if weight is not None:
        out["weights"] = {
            cone_to_key(c): rat_to_str(v) for c, v in sorted(weight.values.items())
        }
    return out


def fan_from_json(data) -> tuple[MarkedFan, Optional[MinkowskiWeight]]:
    try:
        ambient = int(data["ambient_dim"])
        rays = tuple(tuple(str_to_rat(x) for x in u) for u in data["rays"])
        cones = tuple(sorted(cone_key(c) for c in data["maximal_cones"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed fan: {exc}") from None
    fan = MarkedFan(ambient_dim=ambient, rays=rays, maximal_cones=cones)
    weight = None
    if "weights" in data and data["weights"] is not None:
        values = {key_to_cone(k): str_to_rat(v) for k, v in data["weights"].items()}
        if values:
            degrees = {len(c) for c in values}
            if len(degrees) != 1:
                raise InputError("weight keys must share one cone dimension")
            weight = MinkowskiWeight(degrees.pop(), values)
        else:
            weight = MinkowskiWeight(fan.dimension, {})
    return fan, weight


def tropical_to_json(tf: TropicalFan) -> dict:
    return fan_to_json(tf.fan, tf.weight)


def tropical_from_json(data) -> TropicalFan:
    fan, weight = fan_from_json(data)
    if weight is None:
        raise InputError("fan file carries no weights")
    return TropicalFan(fan, weight)


def divisor_to_json(z: Divisor) -> dict:
    return {"values": [rat_to_str(v) for v in z]}


def divisor_from_json(data) -> Divisor:
    try:
        return tuple(str_to_rat(v) for v in data["values"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed divisor: {exc}") from None


def divisors_from_json(data) -> list[Divisor]:
    if isinstance(data, list):
        return [divisor_from_json(d) for d in data]
    if "divisors" in data:
        return [divisor_from_json(d) for d in data["divisors"]]
    return [divisor_from_json(data)]


def matroid_from_json(data) -> Matroid:
    try:
        return matroid_from_bases(int(data["n"]), [tuple(b) for b in data["bases"]])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed matroid: {exc}") from None


def polytope_from_json(data) -> tuple[MarkedFan, tuple[Fraction, ...]]:
    try:
        fan, _ = fan_from_json(data["fan"])
        rhs = tuple(str_to_rat(v) for v in data["rhs"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed polytope: {exc}") from None
    return fan, rhs


# ---------------------------------------------------------------------------
# report serialization


def validation_to_json(report: ValidationReport) -> dict:
    return {
        "valid": report.valid,
        "simplicial": report.simplicial,
        "pure": report.pure,
        "fan_condition": report.fan_condition,
        "all_rays_used": report.all_rays_used,
        "failures": list(report.failures),
    }


def pinch_to_json(report: PinchReport) -> dict:
    return {
        "unpinched": report.unpinched,
        "pinched_at": [cone_to_key(c) for c in report.pinched_at],
    }


def convexity_to_json(cert: ConvexityCertificate) -> dict:
    return {
        "verdict": cert.verdict,
        "strict_requested": cert.strict_requested,
        "failing_cones": [cone_to_key(c) for c in cert.failing],
        "witnesses": {
            cone_to_key(w.cone): (
                [rat_to_str(x) for x in w.functional] if w.functional is not None else None
            )
            for w in cert.witnesses
        },
    }


def lorentzian_to_json(cert: LorentzianCertificate) -> dict:
    return {
        "verdict": "yes" if cert.verdict else "no",
        "marking": [[rat_to_str(x) for x in u] for u in cert.marking],
        "quasiprojective": cert.quasiprojective,
        "witness": (
            [rat_to_str(v) for v in cert.witness] if cert.witness is not None else None
        ),
        "pinches": pinch_to_json(cert.pinch_report),
        "stars": {
            cone_to_key(r.cone): {
                "inertia": list(r.inertia.astuple()),
                "matrix": [[rat_to_str(x) for x in row] for row in r.form.matrix],
            }
            for r in cert.star_records
        },
    }


def af_to_json(report: AFReport) -> dict:
    return {
        "af_gap": rat_to_str(report.af_gap),
        "sequence": [rat_to_str(v) for v in report.sequence],
        "log_concave": report.log_concave,
        "unimodal": report.unimodal,
        "divisors": [[rat_to_str(v) for v in z] for z in report.divisors],
        "auxiliary": [[rat_to_str(v) for v in z] for z in report.auxiliary],
    }


def samples_to_json(report: SampleCheckReport) -> dict:
    return {
        "seed": report.seed,
        "samples": report.samples,
        "all_lorentzian_signs": report.all_lorentzian_signs,
        "stars": {
            cone_to_key(r.cone): {
                "positive_counts": list(r.positive_counts),
                "top_degrees_positive": r.top_degrees_positive,
            }
            for r in report.records
        },
    }


def mixedvol_to_json(result: MixedVolumeResult) -> dict:
    return {
        "degree": rat_to_str(result.degree),
        "dimension": result.dimension,
        "euclidean_value": rat_to_str(result.euclidean_value),
        "convention": result.convention,
    }


def stellar_to_json(result: StellarSubdivision, weight: Optional[MinkowskiWeight]) -> dict:
    out = fan_to_json(result.fan, weight)
    out["containment"] = {
        cone_to_key(c): cone_to_key(parent) for c, parent in sorted(result.containment.items())
    }
    out["ray_map"] = {str(old): new for old, new in sorted(result.ray_map.items())}
    out["new_ray"] = result.new_ray
    return out


def polynomial_to_json(poly: dict) -> dict:
    return {
        ",".join(str(e) for e in expo): rat_to_str(coeff)
        for expo, coeff in sorted(poly.items())
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def load_json_file(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None
