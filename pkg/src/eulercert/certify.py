"""Mass-concentration certificates and the metric probe.

A certificate is a chain of decomposable-sheaf pairs.  Each step carries two
sheaves with declared local Euler characteristics and a declared bound on
their convolution distance; the endpoints of consecutive steps agree.  Any
pseudo-metric on constructible functions that is controlled by the
convolution distance must therefore assign the two chain endpoints a
distance that vanishes with the per-step bounds, which the probe makes
observable as a table: certified bounds shrinking to zero against a fixed
endpoint metric value.

Construction: every term's support is collapsed onto a basepoint along a
homothety flag whose graded sheaf keeps the same local Euler characteristic
while sitting within half the flag spacing of the basepoint sheaf.  Chaining
through segments to a common target point concentrates any function with
integral m onto m times a point mass, and two functions with equal integral
are linked through that common point mass.

Verification is independent of construction: it rederives every local Euler
characteristic, recomputes every distance bound from the embedded rational
geometry, and rechecks chaining, endpoints and integral preservation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .cellcomplex import arrangement
from .constructible import (
    ConstructibleFunction,
    Verdict,
    equals,
    euler_integral,
    evaluate,
    from_terms,
    normalize,
    zero_function,
)
from .distance import sum_bound
from .flags import build_flag, graded_sheaf
from .geometry import (
    Norm,
    Point,
    Polytope,
    RoundedReal,
    TOL_DIST,
    ZERO_REAL,
    as_point,
    contains,
    from_vertices,
    reach,
    vertex_centroid,
)
from .sheafsum import SheafSum, Summand, Support, local_euler, sheaf_sum


@dataclass(frozen=True)
class CertificateStep:
    left: SheafSum
    right: SheafSum
    declared_bound: RoundedReal
    chi_left: ConstructibleFunction
    chi_right: ConstructibleFunction

    def reversed(self) -> "CertificateStep":
        return CertificateStep(self.right, self.left, self.declared_bound, self.chi_right, self.chi_left)


@dataclass(frozen=True)
class Certificate:
    source: ConstructibleFunction
    target: ConstructibleFunction
    epsilon: Fraction
    steps: tuple[CertificateStep, ...]


class MetricKind(Enum):
    L1 = "l1"
    SUP = "sup"
    INTEGRAL_GAP = "gap"


def concentrate_basepoints(
    f: ConstructibleFunction,
    basepoints: Sequence,
    epsilon,
    norm: Norm = Norm.L2,
) -> CertificateStep:
    """One step collapsing each term's support onto its basepoint.

    Flags use n = max(1, ceil(reach / (2 eps))) steps per term, so each graded
    block sits within eps of its basepoint sheaf; negative coefficients ride
    in homological degree 1 so the local Euler characteristics come out with
    the right sign.  The declared bound is eps itself (0 if every block is
    degenerate); the recomputed bound certifies it.
    """
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    fn = normalize(f)
    pts = [as_point(p) for p in basepoints]
    if len(pts) != len(fn.terms):
        raise ValueError("one basepoint per normalized term required")
    left_parts: list[Summand] = []
    right_parts: list[Summand] = []
    degenerate = True
    for term, pt in zip(fn.terms, pts):
        if not contains(term.support, pt):
            raise ValueError("basepoint outside its polytope")
        r = reach(term.support, pt, norm)
        steps = max(1, math.ceil(r.value / (2 * eps)))
        flag = build_flag(term.support, pt, steps, norm)
        if flag.spacing.value > 0:
            degenerate = False
        shift = 0 if term.coeff > 0 else 1
        mult = abs(term.coeff)
        for sm in graded_sheaf(flag).summands:
            left_parts.append(Summand(sm.support, shift, sm.multiplicity * mult))
        right_parts.append(Summand(Support(Polytope((pt,))), shift, mult))
    left = sheaf_sum(fn.dimension, left_parts)
    right = sheaf_sum(fn.dimension, right_parts)
    chi_right = from_terms(
        fn.dimension, [(t.coeff, Polytope((pt,))) for t, pt in zip(fn.terms, pts)]
    )
    declared = ZERO_REAL if degenerate else RoundedReal(eps)
    return CertificateStep(left, right, declared, fn, chi_right)


def _segment(a: Point, b: Point) -> Polytope:
    return from_vertices([a, b])


def concentrate_to_point(
    f: ConstructibleFunction, x, epsilon, norm: Norm = Norm.L2
) -> Certificate:
    """Three-step chain from f to (integral of f) times the point mass at x.

    Step one collapses every term onto its vertex centroid; step two grows
    those point masses back out along the segments joining them to x; step
    three collapses the segments onto x.  The step count never depends on
    epsilon, only the flags get finer.
    """
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    target_pt = as_point(x)
    fn = normalize(f)
    if fn.terms and len(target_pt) != fn.dimension:
        raise ValueError("dimension mismatch")
    centroids = [vertex_centroid(t.support) for t in fn.terms]
    step1 = concentrate_basepoints(fn, centroids, eps, norm)

    # segment terms merge only when their centroids coincide, so the
    # basepoint of a merged segment term is well defined
    seg_pairs = [(t.coeff, _segment(c, target_pt)) for t, c in zip(fn.terms, centroids)]
    base_of: dict[Polytope, Point] = {}
    for (_, seg), c in zip(seg_pairs, centroids):
        assert base_of.setdefault(seg, c) == c
    psi = from_terms(fn.dimension, seg_pairs)
    step2 = concentrate_basepoints(psi, [base_of[t.support] for t in psi.terms], eps, norm)
    step3 = concentrate_basepoints(psi, [target_pt for _ in psi.terms], eps, norm)

    total = euler_integral(fn)
    target_fn = (
        from_terms(fn.dimension, [(total, Polytope((target_pt,)))])
        if total
        else zero_function(fn.dimension)
    )
    return Certificate(fn, target_fn, eps, (step1, step2.reversed(), step3))


def link(
    f: ConstructibleFunction, g: ConstructibleFunction, epsilon, norm: Norm = Norm.L2
) -> Certificate:
    """Chain two functions of equal Euler integral through a point mass at 0."""
    if f.dimension != g.dimension:
        raise ValueError("dimension mismatch")
    mf, mg = euler_integral(f), euler_integral(g)
    if mf != mg:
        raise ValueError(f"integral mismatch: {mf} != {mg}")
    origin = tuple(Fraction(0) for _ in range(f.dimension))
    down = concentrate_to_point(f, origin, epsilon, norm)
    up = concentrate_to_point(g, origin, epsilon, norm)
    steps = down.steps + tuple(s.reversed() for s in reversed(up.steps))
    return Certificate(down.source, up.source, Fraction(epsilon), steps)


@dataclass(frozen=True)
class Report:
    passed: bool
    failures: tuple[str, ...]
    notes: tuple[str, ...] = ()


def verify(
    cert: Certificate,
    norm: Norm = Norm.L2,
    tol: Fraction = TOL_DIST,
    sample_density: int = 64,
) -> Report:
    """Re-derive everything a certificate claims; report itemized failures."""
    failures: list[str] = []
    notes: list[str] = []

    def check_equal(a: ConstructibleFunction, b: ConstructibleFunction, what: str) -> None:
        rep = equals(a, b, sample_density=sample_density)
        if rep.verdict is Verdict.NOT_EQUAL:
            failures.append(what)
        elif rep.verdict is Verdict.PROBABLY_EQUAL and not notes:
            notes.append("equality checks are sampled in dimension 3")

    if not cert.steps:
        return Report(False, ("certificate has no steps",))
    for k, step in enumerate(cert.steps):
        check_equal(local_euler(step.left), step.chi_left, f"left local euler mismatch at step {k}")
        check_equal(local_euler(step.right), step.chi_right, f"right local euler mismatch at step {k}")
        recomputed, _ = sum_bound(step.left, step.right, norm)
        if not recomputed.leq(RoundedReal(step.declared_bound.value + tol)):
            failures.append(f"bound understated at step {k}")
        if step.declared_bound.value > cert.epsilon + tol:
            failures.append(f"declared bound exceeds epsilon at step {k}")
        if euler_integral(step.chi_left) != euler_integral(step.chi_right):
            failures.append(f"integral not preserved at step {k}")
    for k in range(len(cert.steps) - 1):
        check_equal(
            cert.steps[k].chi_right, cert.steps[k + 1].chi_left, f"chain broken at step {k + 1}"
        )
    check_equal(cert.source, cert.steps[0].chi_left, "source mismatch")
    check_equal(cert.target, cert.steps[-1].chi_right, "target mismatch")
    return Report(not failures, tuple(failures), tuple(notes))


def metric_eval(
    kind: MetricKind, f: ConstructibleFunction, g: ConstructibleFunction
) -> RoundedReal:
    """Candidate metrics on constructible functions, evaluated exactly."""
    if f.dimension != g.dimension:
        raise ValueError("dimension mismatch")
    if kind is MetricKind.INTEGRAL_GAP:
        return RoundedReal(Fraction(abs(euler_integral(f) - euler_integral(g))))
    if f.dimension > 2:
        raise ValueError("L1/SUP metrics require dimension <= 2")
    cc = arrangement(f.supports() + g.supports(), f.dimension)
    if kind is MetricKind.SUP:
        worst = 0
        for cell in cc.cells:
            worst = max(worst, abs(evaluate(f, cell.representative) - evaluate(g, cell.representative)))
        return RoundedReal(Fraction(worst))
    total = Fraction(0)
    for cell in cc.cells:
        if cell.volume is None:
            continue
        d = evaluate(f, cell.representative) - evaluate(g, cell.representative)
        if d:
            total += abs(d) * cell.volume
    return RoundedReal(total)


@dataclass(frozen=True)
class ProbeRow:
    epsilon: Fraction
    dc_bound: RoundedReal
    delta: RoundedReal


def probe_metric(
    kind: MetricKind,
    f: ConstructibleFunction,
    x,
    schedule: Sequence,
    norm: Norm = Norm.L2,
) -> list[ProbeRow]:
    """Certified bound vs candidate-metric table over a shrinking schedule.

    The endpoints do not depend on epsilon, so the metric column is constant;
    a candidate metric bounded away from zero against vanishing certified
    bounds is thereby witnessed as not controlled by the convolution
    distance.
    """
    eps_list = [Fraction(e) for e in schedule]
    if not eps_list or any(e <= 0 for e in eps_list):
        raise ValueError("schedule must list positive epsilon values")
    if any(b >= a for a, b in zip(eps_list, eps_list[1:])):
        raise ValueError("schedule must be strictly decreasing")
    rows = []
    delta: Optional[RoundedReal] = None
    for eps in eps_list:
        cert = concentrate_to_point(f, x, eps, norm)
        if delta is None:
            delta = metric_eval(kind, cert.source, cert.target)
        worst = ZERO_REAL
        for step in cert.steps:
            if step.declared_bound.value > worst.value:
                worst = step.declared_bound
        rows.append(ProbeRow(eps, worst, delta))
    return rows
