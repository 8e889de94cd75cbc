"""Certified upper bounds on the convolution distance of decomposable sheaves.

Only upper bounds are ever produced, assembled from summand-level rules:

* plain vs plain, same shift: the Hausdorff distance of the supports.  This
  follows from pushforward stability applied to the correspondence
  {(a, b) in A x B : ||a - b|| <= d_H(A, B)}, whose two projections are
  proper with nonempty compact convex fibers (norm balls intersected with a
  convex compact), so both pushforwards of its constant sheaf are the plain
  summands, and the sup displacement over the correspondence is d_H(A, B).
* nested difference vs zero: half the directed Hausdorff distance from outer
  to inner (the outer set lies in that thickening of the inner one, which
  makes local sections over slightly larger balls vanish).
* anything whose global sections disagree: infinite (finite convolution
  distance forces isomorphic global sections).
* difference vs difference: zero if structurally equal, the translation norm
  if one is an exact translate of the other, and otherwise (or across
  shifts) the sum of the two vanishing bounds via the triangle inequality.

Sums of summands are bounded through additivity over any partial bijection
of unit-multiplicity summands: the bound is the maximum of the matched pair
bounds and the unmatched-to-zero bounds, minimized over bijections as a
bottleneck assignment (binary search over the candidate costs, feasibility
by bipartite matching).  Ties are broken toward the lexicographically
smallest matching, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import (
    Norm,
    RoundedReal,
    ZERO_REAL,
    directed_hausdorff,
    hausdorff,
    norm_value,
    translate,
    vsub,
)
from .sheafsum import SheafSum, Summand


@dataclass(frozen=True)
class Bound:
    """A certified upper bound; value None means +infinity."""

    value: Optional[RoundedReal]

    @property
    def finite(self) -> bool:
        return self.value is not None

    def leq(self, other) -> bool:
        if isinstance(other, Bound):
            if other.value is None:
                return True
            limit = other.value.value
        else:
            limit = RoundedReal._val(other)
        return self.value is not None and self.value.value <= limit

    def decimal_up(self, places: int = 12) -> str:
        return "inf" if self.value is None else self.value.decimal_up(places)

    def __float__(self) -> float:
        return float("inf") if self.value is None else float(self.value)


INFINITE = Bound(None)
ZERO_BOUND = Bound(ZERO_REAL)


def bound_of(r: RoundedReal) -> Bound:
    return Bound(r)


def _bound_add(a: Bound, b: Bound) -> Bound:
    if a.value is None or b.value is None:
        return INFINITE
    return Bound(a.value + b.value)


def _bound_min(bounds: Sequence[Bound]) -> Bound:
    best = INFINITE
    for b in bounds:
        if b.value is None:
            continue
        if best.value is None or b.value.value < best.value.value:
            best = b
    return best


@dataclass(frozen=True)
class Matching:
    """Partial bijection on unit-multiplicity summand expansions."""

    pairs: tuple[tuple[int, int], ...]
    unmatched_left: tuple[int, ...]
    unmatched_right: tuple[int, ...]


def _vanishing(s: Summand, norm: Norm) -> Bound:
    sup = s.support
    if sup.inner is None:
        return INFINITE  # nonzero global sections vs zero
    return Bound(directed_hausdorff(sup.outer, sup.inner, norm).half())


def pair_bound(a: Optional[Summand], b: Optional[Summand], norm: Norm = Norm.L2) -> Bound:
    """Certified bound between two summands, either possibly zero.

    Multiplicities are ignored: the bound applies to matching single copies,
    and equal multiplicities inherit it copy by copy.
    """
    if a is None and b is None:
        return ZERO_BOUND
    if a is None:
        return _vanishing(b, norm)
    if b is None:
        return _vanishing(a, norm)
    if a.support.outer.dimension != b.support.outer.dimension:
        raise ValueError("dimension mismatch")
    da, db = a.support.is_difference, b.support.is_difference
    if not da and not db:
        if a.shift != b.shift:
            return INFINITE
        return Bound(hausdorff(a.support.outer, b.support.outer, norm))
    if da != db:
        return INFINITE  # global sections k vs 0
    candidates = [_bound_add(_vanishing(a, norm), _vanishing(b, norm))]
    if a.shift == b.shift:
        if a.support == b.support:
            candidates.append(ZERO_BOUND)
        else:
            v = vsub(b.support.outer.vertices[0], a.support.outer.vertices[0])
            if (
                translate(a.support.outer, v) == b.support.outer
                and a.support.inner is not None
                and b.support.inner is not None
                and translate(a.support.inner, v) == b.support.inner
            ):
                candidates.append(Bound(norm_value(v, norm)))
    return _bound_min(candidates)


def _expand(s: SheafSum) -> list[Summand]:
    out = []
    for sm in s.summands:
        unit = Summand(sm.support, sm.shift, 1)
        out.extend([unit] * sm.multiplicity)
    return out


def _kuhn_saturates(
    required: list[int],
    n_right: int,
    adj: list[list[int]],
    right_required: bool = False,
) -> bool:
    """Can every `required` left vertex be matched (Kuhn augmenting paths)?

    With right_required, `required` lists right vertices instead and adj is
    still left-to-right.
    """
    if right_required:
        radj: list[list[int]] = [[] for _ in range(n_right)]
        for u, nbrs in enumerate(adj):
            for v in nbrs:
                radj[v].append(u)
        match: list[int] = [-1] * len(adj)

        def try_right(v: int, seen: list[bool]) -> bool:
            for u in radj[v]:
                if not seen[u]:
                    seen[u] = True
                    if match[u] < 0 or try_right(match[u], seen):
                        match[u] = v
                        return True
            return False

        return all(try_right(v, [False] * len(adj)) for v in required)

    match_r: list[int] = [-1] * n_right

    def try_left(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                if match_r[v] < 0 or try_left(match_r[v], seen):
                    match_r[v] = u
                    return True
        return False

    return all(try_left(u, [False] * n_right) for u in required)


def sum_bound(f: SheafSum, g: SheafSum, norm: Norm = Norm.L2) -> tuple[Bound, Matching]:
    """Minimized bottleneck bound over partial bijections, with the matching."""
    if f.dimension != g.dimension:
        raise ValueError("dimension mismatch")
    lf = _expand(f)
    lg = _expand(g)
    cache: dict = {}

    def pb(a: Optional[Summand], b: Optional[Summand]) -> Bound:
        key = (None if a is None else (a.support, a.shift), None if b is None else (b.support, b.shift))
        if key not in cache:
            cache[key] = pair_bound(a, b, norm)
        return cache[key]

    costs = [[pb(a, b) for b in lg] for a in lf]
    zf = [pb(a, None) for a in lf]
    zg = [pb(None, b) for b in lg]

    values: set[Fraction] = {Fraction(0)}
    reals: dict[Fraction, RoundedReal] = {Fraction(0): ZERO_REAL}
    for row in costs:
        for b in row:
            if b.value is not None:
                values.add(b.value.value)
                reals.setdefault(b.value.value, b.value)
    for b in zf + zg:
        if b.value is not None:
            values.add(b.value.value)
            reals.setdefault(b.value.value, b.value)
    candidates = sorted(values)

    def feasible(tau: Fraction) -> bool:
        adj = [
            [j for j, b in enumerate(costs[i]) if b.value is not None and b.value.value <= tau]
            for i in range(len(lf))
        ]
        forced_f = [i for i, b in enumerate(zf) if b.value is None or b.value.value > tau]
        forced_g = [j for j, b in enumerate(zg) if b.value is None or b.value.value > tau]
        # a matching saturating both forced sides exists iff each side is
        # separately saturable (Mendelsohn-Dulmage)
        return _kuhn_saturates(forced_f, len(lg), adj) and _kuhn_saturates(
            forced_g, len(lg), adj, right_required=True
        )

    lo, hi = 0, len(candidates) - 1
    if not feasible(candidates[hi]):
        return INFINITE, Matching((), tuple(range(len(lf))), tuple(range(len(lg))))
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    tau = candidates[lo]

    pairs = _lex_matching(costs, zf, zg, tau, len(lf), len(lg))
    used_g = {j for _, j in pairs}
    matching = Matching(
        tuple(pairs),
        tuple(i for i in range(len(lf)) if i not in {p[0] for p in pairs}),
        tuple(j for j in range(len(lg)) if j not in used_g),
    )
    return Bound(reals[tau]), matching


def _lex_matching(
    costs: list[list[Bound]],
    zf: list[Bound],
    zg: list[Bound],
    tau: Fraction,
    nf: int,
    ng: int,
) -> list[tuple[int, int]]:
    def ok(b: Bound) -> bool:
        return b.value is not None and b.value.value <= tau

    def completable(next_i: int, used: set[int]) -> bool:
        rem_f = list(range(next_i, nf))
        free_g = sorted(set(range(ng)) - used)
        remap = {j: idx for idx, j in enumerate(free_g)}
        adj = [[remap[j] for j in free_g if ok(costs[i][j])] for i in rem_f]
        forced_f = [k for k, i in enumerate(rem_f) if not ok(zf[i])]
        forced_g = [remap[j] for j in free_g if not ok(zg[j])]
        return _kuhn_saturates(forced_f, len(free_g), adj) and _kuhn_saturates(
            forced_g, len(free_g), adj, right_required=True
        )

    pairs: list[tuple[int, int]] = []
    used: set[int] = set()
    for i in range(nf):
        options = [j for j in range(ng) if j not in used and ok(costs[i][j])]
        chosen = -1
        for j in options:
            used.add(j)
            if completable(i + 1, used):
                chosen = j
                break
            used.remove(j)
        if chosen >= 0:
            pairs.append((i, chosen))
        else:
            # tau is feasible, so some optimal completion leaves i unmatched
            assert ok(zf[i])
    return pairs
