import itertools
import math
from collections import Counter

import networkx as nx
import pytest

from nccr.mckay import cyclic_group, mckay_quiver
from nccr.monoids import IncompleteError
from nccr.scalars import Monomial
from nccr.toricend import (
    AbelianAction,
    ActionError,
    endo_quiver,
    invariant_ring,
    invariant_ring_generators,
    mckay_identification,
    module_generators,
    two_generated_classes,
)


def gens(act, i=None, **kw):
    if i is None:
        return {str(m) for m in invariant_ring_generators(act, **kw)}
    return {str(m) for m in module_generators(act, i, **kw).generators}


def test_invariant_rings():
    assert gens(AbelianAction.parse_group("1/3(1,2)")) == {"x^3", "y^3", "x*y"}
    assert gens(AbelianAction.parse_group("1/2(1,1)")) == {"x^2", "x*y", "y^2"}
    assert gens(AbelianAction.torus((1, 1, -1, -1))) == {"x1*y1", "x1*y2", "x2*y1", "x2*y2"}
    assert gens(AbelianAction.parse_group("1/3(0,1)")) == {"x", "y^3"}


def test_invariant_ring_relations_and_metadata():
    ring = invariant_ring(AbelianAction.parse_group("1/3(1,2)"))
    assert [str(r) for r in ring.relations] == ["(x*y)^3 = x^3 * y^3"]
    assert ring.gorenstein is None
    assert "gorenstein" not in ring.to_json()
    assert invariant_ring(AbelianAction.torus((1, 2, -1))).gorenstein is False
    assert invariant_ring(AbelianAction.torus((2, 1, -2, -1))).to_json()["gorenstein"] is True


def test_weight_modules():
    assert gens(AbelianAction.parse_group("1/3(1,2)"), 1) == {"x", "y^2"}
    assert gens(AbelianAction.parse_group("1/3(1,1)"), 2) == {"x^2", "x*y", "y^2"}
    assert gens(AbelianAction.parse_group("1/5(1,2)"), 1) == {"x", "y^3"}
    assert gens(AbelianAction.parse_group("1/3(1,2)"), 0) == {"1"}


def monomials_up_to(n, d):
    for e in itertools.product(range(d + 1), repeat=n):
        if sum(e) <= d:
            yield e


@pytest.mark.parametrize("group", ["1/3(1,2)", "1/3(1,1)", "1/5(1,2)", "1/6(1,5)", "1/4(1,1)", "1/7(1,3)", "1/2(1,1,1)"])
def test_modules_generate_every_weight_class(group):
    act = AbelianAction.parse_group(group)
    inv = [act.exponents(m) for m in invariant_ring_generators(act)]
    for i in range(act.r):
        mod = [act.exponents(m) for m in module_generators(act, i).generators]
        assert all(act.weight(e) == i for e in mod)
        for e in monomials_up_to(act.nvars, 2 * act.r):
            if act.weight(e) != i:
                continue
            # e is a generator times a product of invariant generators
            rests = [tuple(a - b for a, b in zip(e, g)) for g in mod if all(a >= b for a, b in zip(e, g))]
            assert any(in_monoid(r, inv) for r in rests), (i, e)


def in_monoid(v, gens):
    if not any(v):
        return True
    return any(all(a >= b for a, b in zip(v, g)) and in_monoid(tuple(a - b for a, b in zip(v, g)), gens) for g in gens)


@pytest.mark.parametrize("r", range(2, 10))
def test_sl2_modules_have_two_generators(r):
    for a in range(1, r):
        if math.gcd(a, r) != 1:
            continue
        act = AbelianAction.cyclic(r, (a, r - a))
        assert two_generated_classes(act) == list(range(r))


def as_digraph(arrows):
    g = nx.MultiDiGraph()
    for tail, head in arrows:
        g.add_edge(tail, head)
    return g


@pytest.mark.parametrize("r, a, b", [(3, 1, 2), (3, 1, 1), (5, 1, 2), (7, 2, 3), (8, 3, 5), (9, 2, 4), (12, 5, 7)])
def test_endo_quiver_isomorphic_to_mckay(r, a, b):
    endo = endo_quiver(AbelianAction.cyclic(r, (a, b)))
    mck = mckay_quiver(cyclic_group(r, (a, b)))
    ge = as_digraph((x.tail, x.head) for x in endo.quiver.arrows)
    gm = as_digraph((x.tail, x.head) for x in mck.quiver.arrows)
    assert nx.is_isomorphic(ge, gm)
    ident = mckay_identification(r)
    assert Counter((ident[x.tail], ident[x.head], x.label) for x in endo.quiver.arrows) == mck.multigraph()


def test_gl_endo_quivers():
    e = endo_quiver(AbelianAction.parse_group("1/3(1,1)"))
    assert e.complete and e.certified_degree == 2
    assert Counter((x.tail, x.head) for x in e.quiver.arrows) == Counter(
        {("S0", "S1"): 2, ("S1", "S2"): 2, ("S2", "S0"): 2}
    )


def test_partial_sum_demo():
    e = endo_quiver(AbelianAction.parse_group("1/3(1,1)"), classes=[0, 1])
    arrows = sorted((x.tail, x.head, x.label) for x in e.quiver.arrows)
    assert arrows == [
        ("S0", "S1", "x"),
        ("S0", "S1", "y"),
        ("S1", "S0", "x*y"),
        ("S1", "S0", "x^2"),
        ("S1", "S0", "y^2"),
    ]


def test_action_errors():
    with pytest.raises(ActionError):
        AbelianAction.cyclic(0, (1,))
    with pytest.raises(ActionError):
        AbelianAction.cyclic(3, (3, 1))
    with pytest.raises(ActionError):
        AbelianAction.parse_group("BD8")
    with pytest.raises(ActionError):
        AbelianAction.parse_torus("1,a")
    with pytest.raises(ActionError):
        endo_quiver(AbelianAction.cyclic(13, (1, 12)))
    with pytest.raises(ActionError):
        module_generators(AbelianAction.torus((1, -1)), 0)


def test_incomplete_bound_is_an_error():
    with pytest.raises(IncompleteError):
        invariant_ring(AbelianAction.parse_group("1/7(1,3)"), 3)


def test_torus_names_and_weights():
    act = AbelianAction.parse_torus("2,1,-2,-1")
    assert act.variables == ("x1", "x2", "y1", "y2")
    assert act.weight(act.exponents(Monomial.parse("x1*y2^2"))) == 0
    assert act.name == "torus(2,1,-2,-1)"
