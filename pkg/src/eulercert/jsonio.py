"""JSON schemas for every value the CLI reads or writes.

Rational coordinates travel as exact "p/q" (or integer) strings; distance
bounds travel as decimals rounded up to 12 places, so serialized bounds stay
valid upper bounds.  Parsing re-canonicalizes geometry, so a round trip
reproduces a structurally equal value.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .certify import Certificate, CertificateStep
from .constructible import ConstructibleFunction, from_terms
from .flags import Flag, build_flag
from .geometry import (
    AffineMap,
    Norm,
    Point,
    Polytope,
    RoundedReal,
    decimal_up,
    from_vertices,
)
from .sheafsum import SheafSum, Summand, Support, sheaf_sum


class SchemaError(ValueError):
    pass


def parse_rational(s: Any) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"not a rational: {s!r}") from exc


def rational_str(q: Fraction) -> str:
    return str(q)


def point_to_json(p: Point) -> list[str]:
    return [rational_str(c) for c in p]


def point_from_json(obj: Any) -> Point:
    if not isinstance(obj, list) or not obj:
        raise SchemaError("point must be a nonempty list of rationals")
    return tuple(parse_rational(c) for c in obj)


def polytope_to_json(p: Polytope) -> dict:
    return {"vertices": [point_to_json(v) for v in p.vertices]}


def polytope_from_json(obj: Any) -> Polytope:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise SchemaError("polytope must be an object with a 'vertices' list")
    verts = obj["vertices"]
    if not isinstance(verts, list) or not verts:
        raise SchemaError("polytope needs a nonempty vertex list")
    return from_vertices([point_from_json(v) for v in verts])


def cf_to_json(f: ConstructibleFunction) -> dict:
    return {
        "dimension": f.dimension,
        "terms": [
            {"coeff": t.coeff, "polytope": polytope_to_json(t.support)} for t in f.terms
        ],
    }


def cf_from_json(obj: Any) -> ConstructibleFunction:
    if not isinstance(obj, dict) or "dimension" not in obj or "terms" not in obj:
        raise SchemaError("constructible function needs 'dimension' and 'terms'")
    dim = obj["dimension"]
    if dim not in (1, 2, 3):
        raise SchemaError(f"unsupported dimension: {dim!r}")
    pairs = []
    for t in obj["terms"]:
        if not isinstance(t, dict) or "coeff" not in t or "polytope" not in t:
            raise SchemaError("term needs 'coeff' and 'polytope'")
        coeff = t["coeff"]
        if not isinstance(coeff, int):
            raise SchemaError(f"coefficient must be an integer: {coeff!r}")
        pairs.append((coeff, polytope_from_json(t["polytope"])))
    return from_terms(dim, pairs)


def sheaf_to_json(s: SheafSum) -> dict:
    return {
        "dimension": s.dimension,
        "summands": [
            {
                "outer": polytope_to_json(sm.support.outer),
                "inner": None if sm.support.inner is None else polytope_to_json(sm.support.inner),
                "shift": sm.shift,
                "multiplicity": sm.multiplicity,
            }
            for sm in s.summands
        ],
    }


def sheaf_from_json(obj: Any) -> SheafSum:
    if not isinstance(obj, dict) or "dimension" not in obj or "summands" not in obj:
        raise SchemaError("sheaf sum needs 'dimension' and 'summands'")
    dim = obj["dimension"]
    if dim not in (1, 2, 3):
        raise SchemaError(f"unsupported dimension: {dim!r}")
    summands = []
    for sm in obj["summands"]:
        if not isinstance(sm, dict) or "outer" not in sm:
            raise SchemaError("summand needs at least an 'outer' polytope")
        outer = polytope_from_json(sm["outer"])
        inner = sm.get("inner")
        support = Support(outer, None if inner is None else polytope_from_json(inner))
        shift = sm.get("shift", 0)
        mult = sm.get("multiplicity", 1)
        if not isinstance(shift, int) or not isinstance(mult, int):
            raise SchemaError("shift and multiplicity must be integers")
        summands.append(Summand(support, shift, mult))
    return sheaf_sum(dim, summands)


def affine_map_from_json(obj: Any) -> AffineMap:
    if not isinstance(obj, dict) or "matrix" not in obj or "offset" not in obj:
        raise SchemaError("affine map needs 'matrix' and 'offset'")
    matrix = tuple(
        tuple(parse_rational(v) for v in row) for row in obj["matrix"]
    )
    if not matrix:
        raise SchemaError("affine map matrix must be nonempty")
    return AffineMap(matrix, point_from_json(obj["offset"]))


def flag_to_json(flag: Flag) -> dict:
    return {
        "polytope": polytope_to_json(flag.base),
        "center": point_to_json(flag.center),
        "steps": flag.steps,
    }


def flag_from_json(obj: Any, norm: Norm = Norm.L2) -> Flag:
    if not isinstance(obj, dict) or not {"polytope", "center", "steps"} <= obj.keys():
        raise SchemaError("flag needs 'polytope', 'center' and 'steps'")
    # levels are recomputed, which revalidates every invariant
    return build_flag(
        polytope_from_json(obj["polytope"]), point_from_json(obj["center"]), int(obj["steps"]), norm
    )


def cert_to_json(cert: Certificate) -> dict:
    return {
        "epsilon": decimal_up(cert.epsilon),
        "source": cf_to_json(cert.source),
        "target": cf_to_json(cert.target),
        "steps": [
            {
                "F": sheaf_to_json(s.left),
                "G": sheaf_to_json(s.right),
                "bound": s.declared_bound.decimal_up(),
                "chi_F": cf_to_json(s.chi_left),
                "chi_G": cf_to_json(s.chi_right),
            }
            for s in cert.steps
        ],
    }


def cert_from_json(obj: Any) -> Certificate:
    if not isinstance(obj, dict) or not {"epsilon", "source", "target", "steps"} <= obj.keys():
        raise SchemaError("certificate needs 'epsilon', 'source', 'target' and 'steps'")
    steps = []
    for s in obj["steps"]:
        if not isinstance(s, dict) or not {"F", "G", "bound", "chi_F", "chi_G"} <= s.keys():
            raise SchemaError("certificate step needs 'F', 'G', 'bound', 'chi_F', 'chi_G'")
        steps.append(
            CertificateStep(
                sheaf_from_json(s["F"]),
                sheaf_from_json(s["G"]),
                RoundedReal(parse_rational(s["bound"])),
                cf_from_json(s["chi_F"]),
                cf_from_json(s["chi_G"]),
            )
        )
    if not steps:
        raise SchemaError("certificate needs at least one step")
    return Certificate(
        cf_from_json(obj["source"]),
        cf_from_json(obj["target"]),
        parse_rational(obj["epsilon"]),
        tuple(steps),
    )
