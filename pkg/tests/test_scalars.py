import cmath
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nccr.scalars import Cyclotomic, Monomial, Polynomial, cyclotomic_polynomial, euler_phi, parse_rational, poly_divmod
from property_suites import cyclotomics, polynomials

X, Y, Z = sympy.symbols("x y z")
ORACLE = settings(max_examples=60, deadline=None, derandomize=True, database=None)


def to_sympy(p: Polynomial):
    return sympy.sympify(str(p).replace("^", "**")) if not p.is_zero else sympy.Integer(0)


def test_parse_rational():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(-4) == Fraction(-4)
    with pytest.raises(ValueError):
        parse_rational("1.5x")


def test_monomial_basics():
    m = Monomial.parse("x^2*y")
    assert m.degree == 3
    assert m["x"] == 2 and m["z"] == 0
    assert Monomial.parse("x").divides(m)
    assert not m.divides(Monomial.parse("x*y"))
    assert (m * Monomial.parse("y^-1")).is_laurent is False
    assert Monomial.parse("x^-1").is_laurent
    assert m.substitute({"x": Monomial.parse("a*b"), "y": Monomial.parse("b^-2")}) == Monomial.parse("a^2")
    assert str(Monomial.one()) == "1"


def test_polynomial_examples():
    f = Polynomial.parse("a*b - c^3")
    assert f * Polynomial.const(1) == f
    assert Polynomial.parse("(x - y)*(x + y)") == Polynomial.parse("x^2 - y^2")
    c, a, b = (Polynomial.var(v) for v in "cab")
    assert c * c**2 + (-b) * a * Polynomial.const(-1) + Polynomial.const(0) == Polynomial.parse("c^3 + a*b")
    assert c * c**2 - a * b == -f
    assert Polynomial.parse("3/2*x^2*y + 1").terms[Monomial.parse("x^2*y")] == Fraction(3, 2)


def test_polynomial_parse_errors():
    for bad in ("", "x +", "x^y", "x^-1", "sin(x)"):
        with pytest.raises(ValueError):
            Polynomial.parse(bad)
    assert Polynomial.parse("x^-1", laurent=True).is_laurent


def test_polynomial_round_trip_through_str():
    p = Polynomial.parse("-2*x^3*y + 1/3*z - 7")
    assert Polynomial.parse(str(p)) == p


@ORACLE
@given(polynomials(), polynomials())
def test_polynomial_product_matches_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sympy.expand(to_sympy(p - q) - (to_sympy(p) - to_sympy(q))) == 0


@ORACLE
@given(polynomials(), polynomials(max_terms=3, max_exp=2))
def test_division_matches_sympy(p, f):
    if f.is_zero or f.is_constant():
        return
    q, r = poly_divmod(p, f)
    assert q * f + r == p
    sq, sr = sympy.reduced(to_sympy(p), [to_sympy(f)], X, Y, Z, order="grlex")
    assert sympy.expand(to_sympy(r) - sr) == 0
    assert sympy.expand(to_sympy(q) - (sq[0] if sq else 0)) == 0


def test_division_examples():
    f = Polynomial.parse("x^3 + x*y^3 + z^2")
    q, r = poly_divmod(f * f + Polynomial.parse("x"), f)
    assert q == f and r == Polynomial.parse("x")
    with pytest.raises(ZeroDivisionError):
        poly_divmod(f, Polynomial())


def test_cyclotomic_examples():
    z3 = Cyclotomic.zeta(3)
    assert z3 * z3**2 == 1
    z4 = Cyclotomic.zeta(4)
    assert z4 + z4.conj() == 0
    assert Cyclotomic(3, [1, 1, 1]) == 0
    assert Cyclotomic(3, [1, 1, 1]).coeffs == (0, 0, 0)


def test_cyclotomic_across_orders():
    # zeta_6^2 = zeta_3 and zeta_4^2 = -1
    assert Cyclotomic.zeta(6, 2) == Cyclotomic.zeta(3)
    assert Cyclotomic.zeta(4) ** 2 == -1
    assert Cyclotomic.zeta(12, 3) == Cyclotomic.zeta(4)
    assert (Cyclotomic.zeta(3) + Cyclotomic.zeta(4)).order == 12


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    for n in range(1, 25):
        assert len(cyclotomic_polynomial(n)) - 1 == euler_phi(n)


@ORACLE
@given(cyclotomics(), cyclotomics())
def test_cyclotomic_matches_complex(a, b):
    # the reduction modulo the cyclotomic polynomial keeps the complex value
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-9
    assert abs((a + b).to_complex() - (a.to_complex() + b.to_complex())) < 1e-9
    assert abs(a.conj().to_complex() - a.to_complex().conjugate()) < 1e-9


@ORACLE
@given(st.lists(st.tuples(cyclotomics(), cyclotomics(), st.integers(1, 4)), max_size=5))
def test_dot_equals_sum_of_products(rows):
    xs, ys, ws = ([r[i] for r in rows] for i in range(3))
    want = Cyclotomic.rational(0)
    for x, y, w in rows:
        want = want + (x * y).scale(w)
    assert Cyclotomic.dot(xs, ys, ws) == want


def test_cyclotomic_numeric_value():
    for n in (5, 7, 9):
        total = sum((Cyclotomic.zeta(n, k) for k in range(n)), Cyclotomic.rational(0))
        assert total == 0
        assert abs(Cyclotomic.zeta(n).to_complex() - cmath.exp(2j * math.pi / n)) < 1e-12


def test_cyclotomic_rational_conversion():
    assert (Cyclotomic.zeta(8) * Cyclotomic.zeta(8, 7)).to_rational() == 1
    with pytest.raises(ValueError):
        Cyclotomic.zeta(5).to_rational()
    assert str(Cyclotomic.zeta(3) - 1) == "-1 + z3"
