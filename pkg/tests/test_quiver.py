import json

import pytest

from nccr.jsonio import SchemaError, dumps, fixture_quiver, load_fixture, quiver_from_json, quiver_to_json
from nccr.quiver import AlgebraElement, Quiver, QuiverError, Relation, compose, enumerate_paths, quiver_to_dot

FIXTURES = ("z3", "spp", "spp_y", "kronecker", "blowup", "loops_va", "half_11", "two_paths", "a3_linear")


def a3():
    return Quiver.build(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])


def el(q, *arrows, c=1):
    return AlgebraElement.of_path(q, q.path(list(arrows)), c)


def test_products_in_linear_a3():
    q = a3()
    assert compose(q, q.path(["a"]), q.path(["b"])) == el(q, "a", "b")
    assert compose(q, q.path(["a"]), q.path(["a"])).is_zero
    e1 = AlgebraElement.of_path(q, q.trivial("1"))
    assert e1 * el(q, "a") == el(q, "a")
    assert el(q, "a") * e1 == AlgebraElement.zero(q)


def test_one_arrow_quiver_is_upper_triangular():
    q = Quiver.build(["1", "2"], [("a", "1", "2")])
    e1, e2, a = (AlgebraElement.of_path(q, p) for p in (q.trivial("1"), q.trivial("2"), q.path(["a"])))
    x = e1 * 2 + e2 * 3 + a * 5
    y = e1 * 7 + e2 * 11 + a * 13
    assert x * y == e1 * 14 + e2 * 33 + a * (2 * 13 + 5 * 11)


def test_unit_and_zero():
    q = a3()
    x = el(q, "a") + el(q, "b", c=3)
    assert AlgebraElement.unit(q) * x == x == x * AlgebraElement.unit(q)
    assert (AlgebraElement.zero(q) * x).is_zero


def test_path_enumeration():
    loop = Quiver.build(["1"], [("alpha", "1", "1")])
    assert [str(p) for p in enumerate_paths(loop, 3)] == ["e_1", "alpha", "alpha*alpha", "alpha*alpha*alpha"]
    assert [str(p) for p in enumerate_paths(Quiver.build(["1", "2"], []), 4)] == ["e_1", "e_2"]
    one = Quiver.build(["1", "2"], [("a", "1", "2")])
    assert [str(p) for p in enumerate_paths(one, 5)] == ["e_1", "e_2", "a"]
    with pytest.raises(ValueError):
        enumerate_paths(one, -1)


def test_quiver_validation():
    with pytest.raises(QuiverError):
        Quiver.build(["1", "1"], [])
    with pytest.raises(QuiverError):
        Quiver.build(["1"], [("a", "1", "2")])
    with pytest.raises(QuiverError):
        Quiver.build(["1", "2"], [("a", "1", "2"), ("a", "2", "1")])
    with pytest.raises(QuiverError):
        a3().path(["b", "a"])


def test_relations_need_common_endpoints():
    q = a3()
    with pytest.raises(QuiverError):
        Relation(el(q, "a") - el(q, "b"))
    r = Relation.binomial(q, ["a", "b"], ["a", "b"])
    assert r.element.is_zero


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_round_trip(name):
    q, rels = fixture_quiver(name)
    data = quiver_to_json(q, rels)
    q2, rels2 = quiver_from_json(json.loads(dumps(data)))
    assert q2 == q
    assert [r.element for r in rels2] == [r.element for r in rels]
    assert quiver_to_json(q2, rels2) == data


def test_schema_errors_name_the_path():
    data = load_fixture("z3")
    data["arrows"][1]["tail"] = "9"
    with pytest.raises(SchemaError, match=r"\$"):
        quiver_from_json(data)
    bad = load_fixture("two_paths")
    bad["relations"][0][0]["path"] = ["c", "a"]
    with pytest.raises(SchemaError, match=r"relations\[0\]\[0\]\.path"):
        quiver_from_json(bad)
    with pytest.raises(SchemaError):
        quiver_from_json({"schema_version": 2, "vertices": []})
    with pytest.raises(SchemaError, match="vertices"):
        quiver_from_json({"schema_version": 1})


def test_dot_export():
    q = Quiver.build(["1", "2"], [("a", "1", "2"), ("b", "1", "2", "x"), ("q\"", "2", "2")])
    dot = quiver_to_dot(q, "K")
    assert dot.startswith('digraph "K" {')
    assert '"1" -> "2" [label="a"];' in dot
    assert '"1" -> "2" [label="x"];' in dot
    assert '[label="q\\""]' in dot
    assert dot.count("->") == 3
    assert quiver_to_dot(q, "K") == dot


def test_oriented_cycles():
    assert not a3().has_oriented_cycle()
    q, _ = fixture_quiver("z3")
    assert q.has_oriented_cycle()
