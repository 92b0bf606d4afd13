"""Skew group rings A#G for A = k[x1..xn] truncated at total degree D and
G = 1/r(a1..an) cyclic.

Elements are sums of f (x) g^k.  The generator acts on functions by
g(m) = e^(-w(m)) m, where w(m) is the weight of the monomial m and
e = exp(2 pi i / r); this is the action on coordinate functions induced by
diag(e^a1, ..., e^an), so for 1/3(1,2) it sends x to e^2 x and y to e y.
Products are (f1 (x) g1)(f2 (x) g2) = f1 g1(f2) (x) g1 g2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .mckay import variable_names
from .scalars import Cyclotomic, Monomial, Polynomial

DEFAULT_TRUNCATION = 10

Key = tuple[Monomial, int]


class SkewError(ValueError):
    pass


@dataclass(frozen=True)
class SkewRing:
    r: int
    weights: tuple[int, ...]
    truncation: int = DEFAULT_TRUNCATION
    variables: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.r < 1:
            raise SkewError("group order must be positive")
        if self.truncation < 0:
            raise SkewError("truncation degree must be nonnegative")
        object.__setattr__(self, "weights", tuple(int(a) % self.r for a in self.weights))
        if not self.variables:
            object.__setattr__(self, "variables", variable_names(len(self.weights)))
        if len(self.variables) != len(self.weights):
            raise SkewError("one variable per weight is needed")

    def weight(self, m: Monomial) -> int:
        w = dict(zip(self.variables, self.weights))
        total = 0
        for v, e in m.exps:
            if v not in w:
                raise SkewError(f"unknown variable {v!r}")
            if e < 0:
                raise SkewError("skew ring elements are polynomials")
            total += w[v] * e
        return total % self.r

    def act(self, k: int, m: Monomial) -> Cyclotomic:
        """Scalar by which g^k multiplies the monomial m."""
        return Cyclotomic.zeta(self.r, -k * self.weight(m))

    def element(self, terms: Mapping[Key, Union[Cyclotomic, int]]) -> "SkewElement":
        return SkewElement.build(self, terms)

    def zero(self) -> "SkewElement":
        return SkewElement(self, {})

    def one(self) -> "SkewElement":
        return self.element({(Monomial.one(), 0): 1})

    def group(self, k: int) -> "SkewElement":
        return self.element({(Monomial.one(), k): 1})

    def poly(self, f: Union[str, Polynomial], k: int = 0) -> "SkewElement":
        """f (x) g^k for a polynomial with rational coefficients."""
        p = Polynomial.parse(f) if isinstance(f, str) else f
        return self.element({(m, k): Cyclotomic.rational(c) for m, c in p.terms.items()})


@dataclass(frozen=True)
class SkewElement:
    ring: SkewRing
    terms: Mapping[Key, Cyclotomic]
    overflow: bool = field(default=False, compare=False)

    @staticmethod
    def build(ring: SkewRing, terms: Mapping[Key, Union[Cyclotomic, int]], overflow: bool = False) -> "SkewElement":
        out: dict[Key, Cyclotomic] = {}
        for (m, k), c in terms.items():
            c = Cyclotomic.coerce(c)
            ring.weight(m)
            if m.degree > ring.truncation:
                raise SkewError(f"monomial {m} exceeds the truncation degree {ring.truncation}")
            key = (m, k % ring.r)
            out[key] = out.get(key, Cyclotomic.rational(0)) + c
        return SkewElement(ring, {k: v for k, v in out.items() if v != 0}, overflow)

    def _check(self, other: "SkewElement") -> None:
        if self.ring != other.ring:
            raise SkewError("elements of different skew rings")

    def __add__(self, other: "SkewElement") -> "SkewElement":
        self._check(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, Cyclotomic.rational(0)) + c
        return SkewElement(self.ring, {k: v for k, v in terms.items() if v != 0}, self.overflow or other.overflow)

    def __neg__(self) -> "SkewElement":
        return SkewElement(self.ring, {k: -v for k, v in self.terms.items()}, self.overflow)

    def __sub__(self, other: "SkewElement") -> "SkewElement":
        return self + (-other)

    def scale(self, c: Union[Cyclotomic, int]) -> "SkewElement":
        c = Cyclotomic.coerce(c)
        return SkewElement(self.ring, {k: v * c for k, v in self.terms.items() if v * c != 0}, self.overflow)

    def __mul__(self, other: "SkewElement") -> "SkewElement":
        return skew_multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkewElement):
            return NotImplemented
        return self.ring == other.ring and _canonical(self.terms) == _canonical(other.terms)

    def __hash__(self) -> int:
        return hash(tuple(k for k, _ in _canonical(self.terms)))

    def sorted_terms(self) -> list[tuple[Key, Cyclotomic]]:
        return _canonical(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (m, k), c in self.sorted_terms():
            g = "e" if k == 0 else ("g" if k == 1 else f"g^{k}")
            coeff = str(c)
            if coeff == "1":
                parts.append(f"{m}#{g}")
            else:
                parts.append(f"({coeff})*{m}#{g}")
        return " + ".join(parts)


def _canonical(terms: Mapping[Key, Cyclotomic]) -> list[tuple[Key, Cyclotomic]]:
    return sorted(terms.items(), key=lambda t: (t[0][1], t[0][0].degree, t[0][0].sort_key()))


def skew_multiply(x: SkewElement, y: SkewElement) -> SkewElement:
    """Bilinear extension of (f1 # g1)(f2 # g2) = f1 g1(f2) # g1 g2.

    Terms above the truncation degree are dropped and the result carries
    ``overflow=True``; inputs that had overflowed pass the flag on.
    """
    x._check(y)
    ring = x.ring
    out: dict[Key, Cyclotomic] = {}
    dropped = False
    for (m1, k1), c1 in x.terms.items():
        for (m2, k2), c2 in y.terms.items():
            m = m1 * m2
            if m.degree > ring.truncation:
                dropped = True
                continue
            key = (m, (k1 + k2) % ring.r)
            out[key] = out.get(key, Cyclotomic.rational(0)) + c1 * ring.act(k1, m2) * c2
    terms = {k: v for k, v in out.items() if v != 0}
    return SkewElement(ring, terms, dropped or x.overflow or y.overflow)


def demo_products(ring: SkewRing) -> list[tuple[str, str, str]]:
    """A few sample products (left, right, product) for display."""
    v = ring.variables
    first = v[0]
    last = v[-1]
    samples: Sequence[tuple[SkewElement, SkewElement]] = [
        (ring.poly(first, 1), ring.poly(last, 1)),
        (ring.group(1), ring.poly(first)),
        (ring.poly(last), ring.group(1)),
        (ring.group(1) * ring.poly(f"{first}*{last}"), ring.group(ring.r - 1)),
        (ring.one(), ring.poly(f"{first} + {last}", 1)),
    ]
    return [(str(a), str(b), str(a * b)) for a, b in samples]
