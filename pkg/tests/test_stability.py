import itertools

import numpy as np
import pytest

from nccr.jsonio import fixture_quiver
from nccr.rep import Representation
from nccr.stability import (
    Stability,
    StabilityError,
    chamber_fan,
    chambers,
    classify,
    costar_criterion,
    is_generic,
    star_criterion,
    star_form,
    star_parameter,
    theta_value,
)


def whitney_regions(n: int) -> int:
    """Regions of the arrangement of walls theta(S)=0 in theta(alpha)=0.

    Independent count by Whitney's formula: the sum over all wall subsets B
    of (-1)^(|B| - rank B), with walls written as 0/1 rows over the last
    n-1 coordinates.
    """
    walls = [s for k in range(1, n) for s in itertools.combinations(range(1, n), k)]
    rows = [[1 if i in s else 0 for i in range(1, n)] for s in walls]
    total = 0
    for k in range(len(rows) + 1):
        for b in itertools.combinations(rows, k):
            rank = int(np.linalg.matrix_rank(np.array(b))) if b else 0
            total += (-1) ** (k - rank)
    return total


def kronecker_rep(a, b):
    q, _ = fixture_quiver("kronecker")
    return Representation.scalar(q, {"a": a, "b": b})


def test_theta_values():
    theta = {"1": -1, "2": 1}
    assert theta_value(theta, {"1": 1, "2": 1}) == 0
    assert theta_value(theta, {"1": 1, "2": 0}) == -1
    assert theta_value({"1": 0, "2": 0}, {"1": 3, "2": 5}) == 0
    with pytest.raises(StabilityError):
        theta_value(theta, {"1": 1})


def test_kronecker_classification():
    theta = {"1": -1, "2": 1}
    assert classify(kronecker_rep(1, 0), theta) is Stability.STABLE
    assert classify(kronecker_rep(0, 0), theta) is Stability.UNSTABLE
    assert classify(kronecker_rep(1, 1), {"1": 0, "2": 0}) is Stability.STRICTLY_SEMISTABLE
    assert classify(kronecker_rep(1, 1), {"1": 1, "2": -1}) is Stability.UNSTABLE
    with pytest.raises(StabilityError):
        classify(kronecker_rep(1, 1), {"1": 1, "2": 1})


@pytest.mark.parametrize("c", [1, 2, 5])
def test_classification_is_scale_invariant(c):
    q, _ = fixture_quiver("z3")
    for bits in itertools.product((0, 1), repeat=len(q.arrows)):
        rep = Representation.scalar(q, dict(zip(q.arrow_names, bits)))
        for theta in ({"0": -2, "1": 1, "2": 1}, {"0": 1, "1": -1, "2": 0}):
            scaled = {v: c * t for v, t in theta.items()}
            assert classify(rep, scaled) is classify(rep, theta)


def test_star_criteria():
    q, _ = fixture_quiver("z3")
    chart = Representation.scalar(q, {"c1": 1, "c2": 1, "c3": "a", "a1": "a*b", "a2": "a*b", "a3": "b"})
    assert star_criterion(chart, "0")
    assert not star_criterion(Representation.scalar(q, {}), "0")
    one = Representation.scalar(fixture_quiver("kronecker")[0].__class__.build(["1"], []), {})
    assert star_criterion(one, "1")
    # co-star: everything reaches the star
    assert costar_criterion(Representation.scalar(q, {"a1": 1, "a3": 1}), "0") is False
    assert costar_criterion(Representation.scalar(q, {"c2": 1, "c3": 1}), "0")


@pytest.mark.parametrize("name", ["z3", "spp", "half_11", "loops_va"])
def test_costar_matches_negated_parameter(name):
    q, _ = fixture_quiver(name)
    for bits in itertools.product((0, 1), repeat=len(q.arrows)):
        rep = Representation.scalar(q, dict(zip(q.arrow_names, bits)))
        for star in q.vertices:
            stable = classify(rep, star_parameter(q.vertices, star, -1)) is Stability.STABLE
            assert stable == costar_criterion(rep, star)


def test_genericity_and_star_form():
    assert is_generic({"0": -2, "1": 1, "2": 1}, {"0": 1, "1": 1, "2": 1})
    assert not is_generic({"0": -1, "1": 1, "2": 0}, {"0": 1, "1": 1, "2": 1})
    assert is_generic({"1": -1, "2": 1}, {"1": 1, "2": 1})
    assert star_form({"0": -2, "1": 1, "2": 1}) == ("0", "out")
    assert star_form({"0": 1, "1": 2, "2": -1, "3": -1}) is None
    assert star_form({"0": -1, "1": 2, "2": -1}) == ("1", "in")


def test_chamber_counts_small():
    assert [tuple(c.theta.values()) for c in chambers(["1", "2"])] == [(-1, 1), (1, -1)]
    assert len(chambers(["1"])) == 1
    reps = chambers(["0", "1", "2"])
    assert len(reps) == 6
    assert all(is_generic(c.theta, {v: 1 for v in "012"}) for c in reps)
    assert sorted(sorted(c.theta.values()) for c in reps) == [[-2, 1, 1]] * 3 + [[-1, -1, 2]] * 3


@pytest.mark.parametrize("n, count", [(2, 2), (3, 6), (4, 32), (5, 370)])
def test_chamber_counts_match_whitney(n, count):
    verts = [str(i) for i in range(n)]
    chs = chambers(verts)
    assert whitney_regions(n) == count
    assert len(chs) == count
    # representatives are generic and lie in their own chamber only
    for c in chs:
        assert is_generic(c.theta, {v: 1 for v in verts})
        assert sum(1 for d in chs if d.contains(c.theta)) == 1


def test_fan_for_three_vertices():
    fan = chamber_fan(chambers(["0", "1", "2"]))
    assert len(fan["cones"]) == 6
    assert len({tuple(map(tuple, c["rays"])) for c in fan["cones"]}) == 6
    with pytest.raises(StabilityError):
        chamber_fan(chambers(["1", "2"]))
