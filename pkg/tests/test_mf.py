import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nccr.jsonio import SchemaError, load_fixture
from nccr.mf import (
    HypersurfaceRing,
    MatrixFactorization,
    MFError,
    adjugate,
    as_matrix,
    cokernel_presentation,
    determinant,
    determinant_identity,
    knorrer,
    mat_mul,
    mf_from_json,
    mf_to_json,
    partner,
    syzygy,
    validate,
)
from nccr.scalars import Polynomial, poly_divmod
from property_suites import polynomials

FIXTURES = ("mf_ab_c3", "mf_rank1", "mf_x2", "mf_split", "mf_split3", "mf_e7_4x4")
P = Polynomial.parse


def abc_pair(psi=None):
    ring = HypersurfaceRing.parse("abc", "a*b - c^3")
    return MatrixFactorization.create(ring, [["c", "-b"], ["-a", "c^2"]], psi or [["c^2", "b"], ["a", "c"]])


def sym(p: Polynomial):
    return sympy.sympify(str(p).replace("^", "**")) if not p.is_zero else sympy.Integer(0)


def test_ab_c3_pair_has_sign_minus_one():
    mf = abc_pair()
    assert mf.sign == -1
    v = validate(mf)
    assert v.valid and v.witness is None


def test_perturbed_partner_has_witness():
    mf = MatrixFactorization(abc_pair().ring, abc_pair().phi, as_matrix([["c^2", "b"], ["a", "c^2"]]), -1)
    v = validate(mf)
    assert not v.valid
    assert (v.witness.product, v.witness.row, v.witness.col) == ("phi*psi", 1, 2)
    assert "entry (1,2)" in str(v.witness)


def test_rank_one():
    ring = HypersurfaceRing.parse("xy", "x^3 + y^2")
    mf = MatrixFactorization.create(ring, [["x^3 + y^2"]], [["1"]])
    assert mf.sign == 1 and validate(mf).valid
    swapped = syzygy(mf)
    assert (swapped.phi, swapped.psi) == (mf.psi, mf.phi)
    pres = cokernel_presentation(mf)
    assert pres["relations_vanish_mod_f"] and pres["columns_mod_f"] == [["0"]]


def test_syzygy_of_ab_c3():
    mf = abc_pair()
    s = syzygy(mf)
    assert s.phi == mf.psi and syzygy(s) == mf
    assert cokernel_presentation(mf)["columns"] == [["c", "-a"], ["-b", "c^2"]]


def test_knorrer_of_x_squared_presents_the_ideal_u_x():
    ring = HypersurfaceRing.parse("x", "x^2")
    k = knorrer(MatrixFactorization.create(ring, [["x"]], [["x"]]))
    assert k.sign == -1 and validate(k).valid
    assert k.ring.f == P("u*v - x^2")
    assert k.phi == as_matrix([["-x", "-u"], ["v", "x"]])
    # (e1, e2) -> (x, u) kills both columns modulo f
    for col in cokernel_presentation(k)["columns"]:
        image = P("x") * P(col[0]) + P("u") * P(col[1])
        assert poly_divmod(image, k.ring.f)[1].is_zero


def test_knorrer_of_split_factorization():
    mf = mf_from_json(load_fixture("mf_split"))
    k = knorrer(mf)
    assert k.size == 2 and validate(k).valid and k.sign == -mf.sign


def test_knorrer_twice():
    ring = HypersurfaceRing.parse("x", "x^3")
    mf = MatrixFactorization.create(ring, [["x^3"]], [["1"]])
    twice = knorrer(knorrer(mf), "s", "t")
    assert twice.size == 4
    assert validate(twice).valid and twice.sign == 1
    assert twice.ring.f == P("s*t - u*v + x^3")


def test_knorrer_rejects_clashing_variables():
    with pytest.raises(MFError):
        knorrer(abc_pair(), "a", "v")
    with pytest.raises(MFError):
        knorrer(abc_pair(), "u", "u")


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures(name):
    mf = mf_from_json(load_fixture(name))
    assert validate(mf).valid
    assert syzygy(syzygy(mf)) == mf
    assert determinant_identity(mf)
    assert mf_from_json(mf_to_json(mf)) == mf
    k = knorrer(mf)
    assert validate(k).valid and k.sign == -mf.sign
    assert determinant_identity(k)


def test_four_by_four_determinant_against_sympy():
    mf = mf_from_json(load_fixture("mf_e7_4x4"))
    f = mf.ring.f
    det = determinant(mf.phi)
    oracle = sympy.Matrix([[sym(x) for x in row] for row in mf.phi]).det()
    assert sympy.expand(sym(det) - oracle) == 0
    assert det == f * f
    assert partner(mf.ring, mf.phi) == mf.phi


@settings(max_examples=40, deadline=None, derandomize=True, database=None)
@given(st.lists(polynomials(("x", "y"), max_terms=3, max_exp=2), min_size=4, max_size=4))
def test_adjugate_partners(entries):
    phi = (tuple(entries[:2]), tuple(entries[2:]))
    det = determinant(phi)
    if det.is_zero or det.is_constant():
        return
    ring = HypersurfaceRing(("x", "y"), det)
    mf = MatrixFactorization.create(ring, phi, adjugate(phi))
    assert mf.sign == 1 and validate(mf).valid
    assert partner(ring, phi) == adjugate(phi)
    assert determinant_identity(mf)


@settings(max_examples=40, deadline=None, derandomize=True, database=None)
@given(polynomials(("x", "y"), max_terms=3), polynomials(("x", "y"), max_terms=3))
def test_rank_one_products(a, b):
    f = a * b
    if f.is_zero or f.is_constant():
        return
    mf = MatrixFactorization.create(HypersurfaceRing(("x", "y"), f), [[a]], [[b]])
    assert validate(mf).valid
    assert validate(knorrer(mf)).valid


def test_determinant_and_adjugate():
    m = as_matrix([["x", "1"], ["y", "x"]])
    assert determinant(m) == P("x^2 - y")
    assert mat_mul(m, adjugate(m)) == as_matrix([["x^2 - y", "0"], ["0", "x^2 - y"]])
    assert partner(HypersurfaceRing.parse("xy", "x*y"), as_matrix([["x", "1"], ["y", "x"]])) is None


def test_validation_of_inputs():
    ring = HypersurfaceRing.parse("xy", "x*y")
    with pytest.raises(MFError):
        MatrixFactorization.create(ring, [["x", "y"]], [["y"]])
    with pytest.raises(MFError):
        MatrixFactorization.create(ring, [["x"]], [["y", "0"], ["0", "y"]])
    with pytest.raises(MFError):
        HypersurfaceRing.parse("x", "y")
    with pytest.raises(MFError):
        HypersurfaceRing.parse("x", "3")
    with pytest.raises(MFError):
        syzygy(MatrixFactorization.create(ring, [["x"]], [["x"]]))


def test_json_errors():
    data = load_fixture("mf_ab_c3")
    data["phi"][1][0] = "a +"
    with pytest.raises(SchemaError, match=r"phi\[1\]\[0\]"):
        mf_from_json(data)
    data = load_fixture("mf_ab_c3")
    del data["psi"]
    with pytest.raises(SchemaError, match="psi"):
        mf_from_json(data)
    data = load_fixture("mf_ab_c3")
    data["sign"] = 2
    with pytest.raises(SchemaError, match="sign"):
        mf_from_json(data)
