import math
from collections import Counter

import pytest

from nccr.graphs import DualGraph, classify_ade, d_graph, e_graph, path_graph
from nccr.mckay import (
    GroupError,
    binary_dihedral,
    character_table,
    cyclic_group,
    dual_graph_to_mckay,
    gram_matrix,
    inner_product,
    mckay_dot,
    mckay_quiver,
    mckay_to_dual_graph,
    parse_group,
)


def is_identity(gram):
    return all(gram[i][j] == (1 if i == j else 0) for i in range(len(gram)) for j in range(len(gram)))


def test_parse_group():
    g = parse_group("1/3(1,2)")
    assert (g.kind, g.r, g.weights, g.order) == ("cyclic", 3, (1, 2), 3)
    assert g.is_sl
    assert not parse_group("1/3(1,1)").is_sl
    bd = parse_group("BD8")
    assert (bd.kind, bd.n, bd.order) == ("binary_dihedral", 2, 8)
    assert parse_group("1/3(4,2)").weights == (1, 2)
    for bad in ("1/0(1,2)", "BD6", "1/3(1,x)", "Z3"):
        with pytest.raises(GroupError):
            parse_group(bad)


@pytest.mark.parametrize("n", range(1, 7))
def test_binary_dihedral_tables_are_orthonormal(n):
    g = character_table(binary_dihedral(n))
    assert len(g.irreps) == n + 3
    assert sum(x.dim**2 for x in g.irreps) == g.order == 4 * n
    assert sum(g.class_sizes) == g.order
    assert is_identity(gram_matrix(g))


def test_bd12_gram_is_identity():
    assert is_identity(gram_matrix(character_table(parse_group("BD12"))))


@pytest.mark.parametrize("r", [1, 2, 5, 12])
def test_cyclic_tables_are_orthonormal(r):
    g = character_table(cyclic_group(r, (1, r - 1 if r > 1 else 0)))
    assert is_identity(gram_matrix(g))


def test_natural_character_is_faithful_sum():
    g = character_table(parse_group("1/5(1,2)"))
    # chi_V = chi_1 + chi_2 in the table
    rho = {x.name: x.values for x in g.irreps}
    assert inner_product(g, g.natural, rho["rho1"]) == 1
    assert inner_product(g, g.natural, rho["rho2"]) == 1
    assert inner_product(g, g.natural, rho["rho0"]) == 0


def test_z3_mckay_quiver():
    m = mckay_quiver(parse_group("1/3(1,2)"))
    assert len(m.quiver.arrows) == 6
    # rho_i sits in rho_j (x) V for the line x of weight 1 when i = j + 1
    want = Counter()
    for i in range(3):
        want[(f"rho{i}", f"rho{(i - 1) % 3}", "x")] += 1
        want[(f"rho{i}", f"rho{(i + 1) % 3}", "y")] += 1
    assert m.multigraph() == want
    assert m.star == "rho0"


def test_trivial_group_has_two_loops():
    m = mckay_quiver(cyclic_group(1, (0, 0)))
    assert m.unlabeled() == Counter({("rho0", "rho0"): 2})
    # only the star is there, so the exceptional graph is empty
    assert mckay_to_dual_graph(m).nodes == ()


@pytest.mark.parametrize("group", ["1/4(1,3)", "1/7(2,5)", "BD8", "BD12", "BD20"])
def test_arrows_out_of_each_vertex_have_total_dimension_two_dim(group):
    m = mckay_quiver(parse_group(group))
    for v in m.quiver.vertices:
        assert sum(m.dims[a.head] for a in m.quiver.out_arrows(v)) == 2 * m.dims[v]


def test_dual_graph_of_cyclic_and_bd8():
    assert str(classify_ade(mckay_to_dual_graph(mckay_quiver(parse_group("1/4(1,3)"))))) == "A3"
    assert str(classify_ade(mckay_to_dual_graph(mckay_quiver(parse_group("BD8"))))) == "D4"


def test_gl_quiver_is_not_a_dual_graph():
    with pytest.raises(GroupError):
        mckay_to_dual_graph(mckay_quiver(parse_group("1/3(1,1)")))


def test_ade_classification():
    assert str(classify_ade(path_graph(2))) == "A2"
    assert str(classify_ade(d_graph(4))) == "D4"
    assert str(classify_ade(e_graph(7))) == "E7"
    triangle = DualGraph.build(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
    assert classify_ade(triangle) is None
    fork = DualGraph.build(list("abcdefg"), [("a", "b"), ("b", "c"), ("c", "d"), ("b", "e"), ("c", "f"), ("f", "g")])
    assert classify_ade(fork) is None


@pytest.mark.parametrize(
    "graph, order",
    [(path_graph(n), n + 1) for n in range(1, 9)]
    + [(d_graph(n), 4 * (n - 2)) for n in range(4, 9)]
    + [(e_graph(6), 24), (e_graph(7), 48), (e_graph(8), 120)],
)
def test_null_root_dimensions(graph, order):
    m = dual_graph_to_mckay(graph)
    assert m.dims[m.star] == 1
    # the dimensions of the irreducibles satisfy sum dim^2 = |G|
    assert sum(d * d for d in m.dims.values()) == order
    back = mckay_to_dual_graph(m)
    assert set(back.nodes) == set(graph.nodes)
    assert {frozenset(e) for e in back.edges} == {frozenset(e) for e in graph.edges}


def test_e_dimensions():
    assert sorted(dual_graph_to_mckay(e_graph(6)).dims.values()) == [1, 1, 1, 2, 2, 2, 3]
    assert sorted(dual_graph_to_mckay(e_graph(8)).dims.values()) == [1, 2, 2, 3, 3, 4, 4, 5, 6]


def test_dual_graph_to_mckay_rejects_non_dynkin():
    triangle = DualGraph.build(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
    with pytest.raises(GroupError):
        dual_graph_to_mckay(triangle)


def test_dot_has_dimension_labels():
    dot = mckay_dot(mckay_quiver(parse_group("BD8")))
    assert dot.startswith("digraph")
    assert dot.count("->") == 8
    assert '"rho0 (1) *"' in dot
    assert '"sigma1 (2)"' in dot
