import random
from fractions import Fraction as F

import pytest

from eulercert.constructible import Verdict, equals, euler_integral, indicator
from eulercert.distance import sum_bound
from eulercert.flags import build_flag, graded_sheaf
from eulercert.geometry import TOL_DIST, Polytope, directed_hausdorff, from_vertices, reach
from eulercert.sheafsum import local_euler, plain, sheaf_sum

from helpers import interior_point, rand_polytope

UNIT_SQUARE = from_vertices([(0, 0), (1, 0), (0, 1), (1, 1)])


def test_flag_of_segment():
    fl = build_flag(from_vertices([(0,), (4,)]), (0,), 4)
    assert [p.vertices for p in fl.levels] == [
        ((F(0),),),
        ((F(0),), (F(1),)),
        ((F(0),), (F(2),)),
        ((F(0),), (F(3),)),
        ((F(0),), (F(4),)),
    ]
    assert fl.spacing.value == 1

    gs = graded_sheaf(fl)
    assert len(gs.summands) == 5
    assert gs.summands[0].support.inner is None  # the point summand
    assert sum(1 for s in gs.summands if s.support.inner is not None) == 4


def test_flag_single_step_square():
    fl = build_flag(UNIT_SQUARE, (0, 0), 1)
    assert fl.levels[0].vertices == ((F(0), F(0)),)
    assert fl.levels[1] == UNIT_SQUARE
    assert fl.spacing.value ** 2 >= 2  # sqrt(2) rounded up


def test_degenerate_flag():
    p = from_vertices([(3,)])
    fl = build_flag(p, (3,), 5)
    assert all(level == p for level in fl.levels)
    assert fl.spacing.value == 0
    assert graded_sheaf(fl).summands == (plain(p),)


def test_flag_errors():
    with pytest.raises(ValueError):
        build_flag(UNIT_SQUARE, (2, 2), 3)
    with pytest.raises(ValueError):
        build_flag(UNIT_SQUARE, (0, 0), 0)


def test_telescoping_to_base_indicator():
    assert local_euler(graded_sheaf(build_flag(UNIT_SQUARE, (0, 0), 8))) == indicator(UNIT_SQUARE)
    rng = random.Random(51)
    for _ in range(40):
        dim = rng.choice([1, 2])
        p = rand_polytope(rng, dim, max_vertices=8)
        c = interior_point(rng, p)
        n = rng.choice([1, 2, 3, 7, 16])
        chi = local_euler(graded_sheaf(build_flag(p, c, n)))
        assert euler_integral(chi) == 1
        # independent oracle route on top of the structural identity
        assert equals(chi, indicator(p)).verdict is Verdict.EQUAL


def test_flag_distance_bound():
    rng = random.Random(52)
    for _ in range(25):
        dim = rng.choice([1, 2])
        p = rand_polytope(rng, dim, max_vertices=6)
        c = interior_point(rng, p)
        n = rng.choice([1, 2, 4, 8])
        fl = build_flag(p, c, n)
        singleton = sheaf_sum(dim, [plain(Polytope((c,)))])
        bound, _ = sum_bound(graded_sheaf(fl), singleton)
        assert bound.value is not None
        assert bound.value.value <= fl.spacing.value / 2 + TOL_DIST


def test_flag_levels_nested_with_certified_spacing():
    rng = random.Random(53)
    for _ in range(20):
        dim = rng.choice([1, 2])
        p = rand_polytope(rng, dim, max_vertices=6)
        c = interior_point(rng, p)
        n = rng.choice([2, 3, 5])
        fl = build_flag(p, c, n)
        r = reach(p, c)
        for lo, hi in zip(fl.levels, fl.levels[1:]):
            assert directed_hausdorff(hi, lo).value <= fl.spacing.value + TOL_DIST
            assert directed_hausdorff(lo, hi).value == 0  # nested
        assert fl.spacing.value == r.value / n
