import pytest

from nccr.scalars import Cyclotomic, Monomial, Polynomial
from nccr.skew import DEFAULT_TRUNCATION, SkewError, SkewRing, demo_products


def z3_ring(truncation=DEFAULT_TRUNCATION):
    return SkewRing(3, (1, 2), truncation)


def test_twisted_product():
    s = z3_ring()
    got = s.poly("x", 1) * s.poly("y", 1)
    assert got == s.element({(Monomial.parse("x*y"), 2): Cyclotomic.zeta(3)})
    assert str(got) == "(z3)*x*y#g^2"


def test_action_on_coordinates():
    s = z3_ring()
    # g sends x to e^2 x and y to e y
    assert s.act(1, Monomial.parse("x")) == Cyclotomic.zeta(3, 2)
    assert s.act(1, Monomial.parse("y")) == Cyclotomic.zeta(3)
    assert s.act(1, Monomial.parse("x*y")) == 1
    assert s.act(3, Monomial.parse("x")) == 1


def test_unit_and_polynomial_subring():
    s = z3_ring()
    f = s.poly("x^2 + 3*y", 1)
    assert s.one() * f == f == f * s.one()
    assert s.poly("x + y") * s.poly("x - y") == s.poly("x^2 - y^2")
    assert (s.zero() * f) == s.zero()


@pytest.mark.parametrize("k", range(3))
def test_conjugation_by_group_elements(k):
    s = z3_ring()
    for text in ("x", "y", "x^2*y", "x + 2*y^2"):
        f = Polynomial.parse(text)
        conj = s.group(k) * s.poly(f) * s.group(-k)
        # g^k (f # e) g^-k = g^k(f) # e
        want = s.element({(m, 0): s.act(k, m).scale(c) for m, c in f.terms.items()})
        assert conj == want


def test_group_algebra_part():
    s = SkewRing(4, (1, 3))
    assert s.group(1) * s.group(3) == s.one()
    assert s.group(2) * s.group(2) == s.one()


def test_trivial_group_is_the_polynomial_ring():
    s = SkewRing(1, (0, 0))
    assert s.poly("x", 0) * s.poly("y", 0) == s.poly("x*y")
    assert s.group(5) == s.one()


def test_truncation_sets_overflow():
    s = z3_ring(truncation=3)
    a = s.poly("x^2")
    b = s.poly("y^2 + x")
    p = a * b
    assert p.overflow
    assert p == s.poly("x^3")
    assert not (s.poly("x") * s.poly("y")).overflow
    assert (p * s.one()).overflow
    with pytest.raises(SkewError):
        s.poly("x^4")


def test_errors():
    with pytest.raises(SkewError):
        SkewRing(0, (1,))
    with pytest.raises(SkewError):
        z3_ring().poly("z")
    with pytest.raises(SkewError):
        z3_ring().one() * SkewRing(3, (1, 1)).one()


def test_demo_products_are_strings():
    rows = demo_products(z3_ring())
    assert len(rows) == 5
    assert rows[0] == ("x#g", "y#g", "(z3)*x*y#g^2")
