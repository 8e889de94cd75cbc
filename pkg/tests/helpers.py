"""Seeded generators and independent brute-force oracles for the test suite."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Optional, Sequence

from eulercert.constructible import ConstructibleFunction, from_terms
from eulercert.distance import Bound, pair_bound
from eulercert.geometry import Norm, Point, Polytope, from_vertices, vadd, vscale
from eulercert.sheafsum import SheafSum, Summand, difference, plain, sheaf_sum
from eulercert.geometry import homothet


def rand_fraction(rng: random.Random, lo: int = -4, hi: int = 4, dens=(1, 2, 4)) -> Fraction:
    den = rng.choice(dens)
    return Fraction(rng.randint(lo * den, hi * den), den)


def rand_point(rng: random.Random, dim: int, lo=-4, hi=4, dens=(1, 2, 4)) -> Point:
    return tuple(rand_fraction(rng, lo, hi, dens) for _ in range(dim))


def rand_polytope(
    rng: random.Random, dim: int, max_vertices: int = 8, lo=-4, hi=4, dens=(1, 2, 4)
) -> Polytope:
    k = rng.randint(1, max_vertices)
    return from_vertices([rand_point(rng, dim, lo, hi, dens) for _ in range(k)])


def interior_point(rng: random.Random, p: Polytope) -> Point:
    """Random strictly positive convex combination of the vertices."""
    weights = [Fraction(rng.randint(1, 8)) for _ in p.vertices]
    total = sum(weights)
    acc = tuple(Fraction(0) for _ in range(p.dimension))
    for w, v in zip(weights, p.vertices):
        acc = vadd(acc, vscale(w / total, v))
    return acc


def rand_cf(
    rng: random.Random,
    dim: int,
    max_terms: int = 4,
    max_vertices: int = 6,
    coeff_range: int = 3,
    lo=-4,
    hi=4,
    dens=(1, 2, 4),
) -> ConstructibleFunction:
    pairs = []
    for _ in range(rng.randint(1, max_terms)):
        c = rng.choice([k for k in range(-coeff_range, coeff_range + 1) if k != 0])
        pairs.append((c, rand_polytope(rng, dim, max_vertices, lo, hi, dens)))
    return from_terms(dim, pairs)


def rand_sheaf(
    rng: random.Random,
    dim: int,
    max_summands: int = 8,
    max_vertices: int = 5,
    shift_range: int = 2,
    max_mult: int = 3,
) -> SheafSum:
    summands = []
    for _ in range(rng.randint(1, max_summands)):
        outer = rand_polytope(rng, dim, max_vertices)
        shift = rng.randint(-shift_range, shift_range)
        mult = rng.randint(1, max_mult)
        if rng.random() < 0.5 and len(outer.vertices) > 1:
            t = Fraction(rng.randint(1, 7), 8)
            inner = homothet(outer, interior_point(rng, outer), t)
            if inner != outer:
                summands.append(difference(outer, inner, shift, mult))
                continue
        summands.append(plain(outer, shift, mult))
    return sheaf_sum(dim, summands)


# --- independent oracles -----------------------------------------------------


def caratheodory_contains(points: Sequence[Point], x: Point) -> bool:
    """x in conv(points) iff x lies in some small affinely independent simplex."""
    dim = len(x)
    for size in range(1, dim + 2):
        for subset in itertools.combinations(points, size):
            lam = _barycentric(subset, x)
            if lam is not None and all(l >= 0 for l in lam):
                return True
    return False


def _barycentric(subset: Sequence[Point], x: Point) -> Optional[list[Fraction]]:
    # solve sum lam_i v_i = x, sum lam_i = 1 by plain Gaussian elimination
    k = len(subset)
    dim = len(x)
    rows = [[subset[j][i] for j in range(k)] + [x[i]] for i in range(dim)]
    rows.append([Fraction(1)] * k + [Fraction(1)])
    pivots = []
    r = 0
    for c in range(k):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), -1)
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rows[r] = [v / piv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            return None
    if len(pivots) < k:
        # affinely dependent subset: skip (a smaller subset will witness)
        return None
    lam = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        lam[c] = rows[i][-1]
    return lam


def brute_bottleneck(
    left: Sequence[Summand], right: Sequence[Summand], norm: Norm = Norm.L2
) -> Optional[Fraction]:
    """Exhaustive minimum over partial bijections of the additivity bound.

    Returns the optimal value (None meaning +infinity), independently of the
    binary-search matcher.
    """
    nf, ng = len(left), len(right)
    cost = [[pair_bound(a, b, norm) for b in right] for a in left]
    zf = [pair_bound(a, None, norm) for a in left]
    zg = [pair_bound(None, b, norm) for b in right]

    def val(b: Bound) -> Optional[Fraction]:
        return None if b.value is None else b.value.value

    best: Optional[Fraction] = None
    best_set = False
    for k in range(0, min(nf, ng) + 1):
        for fsub in itertools.combinations(range(nf), k):
            for gsub in itertools.permutations(range(ng), k):
                worst: Optional[Fraction] = Fraction(0)
                for i, j in zip(fsub, gsub):
                    v = val(cost[i][j])
                    worst = None if (worst is None or v is None) else max(worst, v)
                for i in set(range(nf)) - set(fsub):
                    v = val(zf[i])
                    worst = None if (worst is None or v is None) else max(worst, v)
                for j in set(range(ng)) - set(gsub):
                    v = val(zg[j])
                    worst = None if (worst is None or v is None) else max(worst, v)
                if not best_set:
                    best, best_set = worst, True
                elif worst is not None and (best is None or worst < best):
                    best = worst
    return best


def expand_units(s: SheafSum) -> list[Summand]:
    out = []
    for sm in s.summands:
        out.extend([Summand(sm.support, sm.shift, 1)] * sm.multiplicity)
    return out
