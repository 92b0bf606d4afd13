"""Exact scalars: rationals, (Laurent) monomials, polynomials over Q and
cyclotomic numbers.

Everything here is immutable.  Polynomials print in a fixed lexicographic
order so that golden files and JSON outputs are reproducible.
"""

from __future__ import annotations

import ast
import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse "p/q", "p" or an int into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Monomials


@dataclass(frozen=True)
class Monomial:
    """Product of variables with integer exponents.

    Stored as a sorted tuple of (variable, exponent) with no zero exponents.
    Negative exponents are allowed; ``is_laurent`` tells them apart.
    """

    exps: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        names = [v for v, _ in self.exps]
        if any(not v for v in names):
            raise ValueError("empty variable name")
        if len(set(names)) != len(names):
            raise ValueError("repeated variable in monomial")
        if any(e == 0 for _, e in self.exps):
            raise ValueError("zero exponent stored in monomial")
        if list(self.exps) != sorted(self.exps):
            raise ValueError("monomial exponents must be sorted by variable")

    @staticmethod
    def of(mapping: Mapping[str, int] | None = None, **kw: int) -> "Monomial":
        data = dict(mapping or {})
        for k, v in kw.items():
            data[k] = data.get(k, 0) + v
        return Monomial(tuple(sorted((k, int(v)) for k, v in data.items() if v != 0)))

    @staticmethod
    def var(name: str, power: int = 1) -> "Monomial":
        return Monomial.of({name: power})

    @staticmethod
    def one() -> "Monomial":
        return Monomial(())

    @staticmethod
    def parse(text: str) -> "Monomial":
        p = Polynomial.parse(text, laurent=True)
        if len(p.terms) != 1:
            raise ValueError(f"not a monomial: {text!r}")
        ((m, c),) = p.terms.items()
        if c != 1:
            raise ValueError(f"not a monomial: {text!r}")
        return m

    def as_dict(self) -> dict[str, int]:
        return dict(self.exps)

    def __getitem__(self, var: str) -> int:
        for v, e in self.exps:
            if v == var:
                return e
        return 0

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.exps)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    @property
    def is_one(self) -> bool:
        return not self.exps

    @property
    def is_laurent(self) -> bool:
        return any(e < 0 for _, e in self.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        d = self.as_dict()
        for v, e in other.exps:
            d[v] = d.get(v, 0) + e
        return Monomial.of(d)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        return self * other.inverse()

    def inverse(self) -> "Monomial":
        return Monomial(tuple((v, -e) for v, e in self.exps))

    def __pow__(self, k: int) -> "Monomial":
        if k == 0:
            return Monomial.one()
        return Monomial(tuple((v, e * k) for v, e in self.exps))

    def divides(self, other: "Monomial") -> bool:
        return all(other[v] >= e for v, e in self.exps)

    def substitute(self, values: Mapping[str, "Monomial"]) -> "Monomial":
        """Replace variables by monomials; variables not in ``values`` stay."""
        out = Monomial.one()
        for v, e in self.exps:
            out = out * (values[v] ** e if v in values else Monomial.var(v, e))
        return out

    def sort_key(self) -> tuple:
        # lexicographic on variable names, larger exponents first
        return tuple((v, -e) for v, e in self.exps)

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        parts = []
        for v, e in self.exps:
            parts.append(v if e == 1 else f"{v}^{e}")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Monomial({self})"


# ---------------------------------------------------------------------------
# Polynomials


class Polynomial:
    """Sparse polynomial with Fraction coefficients.

    Keys are Monomials.  Laurent monomials are tolerated so that chart maps
    can be handled by the same class; ordinary polynomial data never has them.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None) -> None:
        clean: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                clean[m] = clean.get(m, Fraction(0)) + c
                if clean[m] == 0:
                    del clean[m]
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):  # pragma: no cover - immutability guard
        raise AttributeError("Polynomial is immutable")

    # construction
    @staticmethod
    def const(c: Scalar) -> "Polynomial":
        return Polynomial({Monomial.one(): c})

    @staticmethod
    def var(name: str) -> "Polynomial":
        return Polynomial({Monomial.var(name): 1})

    @staticmethod
    def monomial(m: Monomial, c: Scalar = 1) -> "Polynomial":
        return Polynomial({m: c})

    @staticmethod
    def coerce(x: Union["Polynomial", Monomial, Scalar]) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, Monomial):
            return Polynomial({x: 1})
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return Polynomial.const(x)
        raise TypeError(f"cannot make a polynomial from {x!r}")

    @staticmethod
    def parse(text: str, laurent: bool = False) -> "Polynomial":
        """Parse expressions like ``"a*b - c^3"`` or ``"3/2*x^2*y + 1"``."""
        if not isinstance(text, str) or not text.strip():
            raise ValueError(f"empty polynomial string: {text!r}")
        src = text.replace("^", "**")
        try:
            tree = ast.parse(src, mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"cannot parse polynomial {text!r}") from exc
        return _eval_poly(tree.body, text, laurent)

    # queries
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_laurent(self) -> bool:
        return any(m.is_laurent for m in self.terms)

    def constant(self) -> Fraction:
        return self.terms.get(Monomial.one(), Fraction(0))

    def is_constant(self) -> bool:
        return all(m.is_one for m in self.terms)

    @property
    def variables(self) -> tuple[str, ...]:
        names: set[str] = set()
        for m in self.terms:
            names.update(m.variables)
        return tuple(sorted(names))

    @property
    def degree(self) -> int:
        return max((m.degree for m in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    # arithmetic
    def __add__(self, other) -> "Polynomial":
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return Polynomial.coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        return Polynomial({m: c * v for m, v in self.terms.items()})

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def substitute(self, values: Mapping[str, Union["Polynomial", Scalar]]) -> "Polynomial":
        """Substitute polynomials (or scalars) for variables."""
        out = Polynomial()
        for m, c in self.terms.items():
            term = Polynomial.const(c)
            for v, e in m.exps:
                if v in values:
                    if e < 0:
                        raise ValueError("cannot substitute into a negative power")
                    term = term * Polynomial.coerce(values[v]) ** e
                else:
                    term = term * Polynomial.monomial(Monomial.var(v, e))
            out = out + term
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(frozenset(self.terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            if m.is_one:
                body = format_rational(a)
            elif a == 1:
                body = str(m)
            else:
                body = f"{format_rational(a)}*{m}"
            if i == 0:
                out = f"-{body}" if neg else body
            else:
                out += f" - {body}" if neg else f" + {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def _eval_poly(node: ast.AST, text: str, laurent: bool) -> Polynomial:
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            base = _eval_poly(node.left, text, laurent)
            k = _int_literal(node.right, text)
            if k < 0:
                if not laurent or len(base.terms) != 1:
                    raise ValueError(f"negative exponent not allowed in {text!r}")
                ((m, c),) = base.terms.items()
                return Polynomial({m ** k: Fraction(c) ** k})
            return base ** k
        left = _eval_poly(node.left, text, laurent)
        right = _eval_poly(node.right, text, laurent)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or right.is_zero:
                raise ValueError(f"division by a non-constant in {text!r}")
            return left.scale(1 / right.constant())
    elif isinstance(node, ast.UnaryOp):
        inner = _eval_poly(node.operand, text, laurent)
        if isinstance(node.op, ast.USub):
            return -inner
        if isinstance(node.op, ast.UAdd):
            return inner
    elif isinstance(node, ast.Name):
        return Polynomial.var(node.id)
    elif isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Polynomial.const(node.value)
    raise ValueError(f"unsupported syntax in polynomial {text!r}")


def _int_literal(node: ast.AST, text: str) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_literal(node.operand, text)
    raise ValueError(f"exponent must be an integer literal in {text!r}")


def poly_arith(p: Polynomial, q, op: str) -> Polynomial:
    """Dispatch helper: op in {"add", "mul", "scalar_mul"}."""
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "scalar_mul":
        return p.scale(q)
    raise ValueError(f"unknown polynomial op {op!r}")


def _grlex_key(m: Monomial, names: Sequence[str]) -> tuple:
    return (m.degree,) + tuple(m[v] for v in names)


def poly_divmod(p: Polynomial, f: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Division of p by f with graded-lex leading terms: p = q*f + r with no
    term of r divisible by the leading monomial of f (so r is unique)."""
    if f.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_laurent or f.is_laurent:
        raise ValueError("division needs ordinary polynomials")
    names = sorted(set(p.variables) | set(f.variables))
    lead_f = max(f.terms, key=lambda m: _grlex_key(m, names))
    lc_f = f.terms[lead_f]
    quot: dict[Monomial, Fraction] = {}
    rem: dict[Monomial, Fraction] = {}
    cur = p
    while not cur.is_zero:
        lead = max(cur.terms, key=lambda m: _grlex_key(m, names))
        c = cur.terms[lead]
        if lead_f.divides(lead):
            t = lead / lead_f
            quot[t] = quot.get(t, Fraction(0)) + c / lc_f
            cur = cur - Polynomial({t: c / lc_f}) * f
        else:
            rem[lead] = c
            cur = cur - Polynomial({lead: c})
    return Polynomial(quot), Polynomial(rem)


# ---------------------------------------------------------------------------
# Cyclotomic numbers


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # dense integer polynomials, lowest degree first, den monic
    num = list(num)
    dq = len(den) - 1
    if len(num) - 1 < dq:
        return [0], num
    quot = [0] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i]
        if c:
            quot[i - dq] = c
            for j in range(dq + 1):
                num[i - dq + j] -= c * den[j]
    return quot, num[:dq] or [0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


_ZERO = Fraction(0)


class Cyclotomic:
    """Element of Q(zeta_n) with zeta_n = exp(2*pi*i/n).

    The canonical form is the remainder modulo the n-th cyclotomic
    polynomial: only the powers 1, zeta, ..., zeta^(phi(n)-1) carry
    coefficients, the rest of the length-n coefficient list is zero.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[Scalar]) -> None:
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        raw = [_ZERO] * order
        for k, c in enumerate(coeffs):
            if c:
                raw[k % order] += c if isinstance(c, Fraction) else Fraction(c)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(_reduce_cyclo(raw, order)))

    @classmethod
    def _reduced(cls, order: int, coeffs: tuple[Fraction, ...]) -> "Cyclotomic":
        # coefficients already in canonical form
        obj = object.__new__(cls)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    def __setattr__(self, key, value):  # pragma: no cover - immutability guard
        raise AttributeError("Cyclotomic is immutable")

    @staticmethod
    def zeta(n: int, k: int = 1) -> "Cyclotomic":
        c = [0] * n
        c[k % n] = 1
        return Cyclotomic(n, c)

    @staticmethod
    def rational(q: Scalar) -> "Cyclotomic":
        return Cyclotomic(1, [q])

    @staticmethod
    def coerce(x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return Cyclotomic.rational(x)
        raise TypeError(f"cannot make a cyclotomic number from {x!r}")

    def embed(self, m: int) -> "Cyclotomic":
        """Same number written in Q(zeta_m); requires order | m."""
        if m % self.order:
            raise ValueError(f"cannot embed order {self.order} into order {m}")
        step = m // self.order
        c = [Fraction(0)] * m
        for k, v in enumerate(self.coeffs):
            c[k * step] = v
        return Cyclotomic(m, c)

    def _pair(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        other = Cyclotomic.coerce(other)
        m = math.lcm(self.order, other.order)
        return self.embed(m), other.embed(m)

    def __add__(self, other) -> "Cyclotomic":
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        if other.order == 1 or self.order == 1:
            big, small = (self, other) if other.order == 1 else (other, self)
            return Cyclotomic._reduced(big.order, (big.coeffs[0] + small.coeffs[0],) + big.coeffs[1:])
        if self.order == other.order:
            return Cyclotomic._reduced(self.order, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))
        a, b = self._pair(other)
        return Cyclotomic._reduced(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic._reduced(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other) -> "Cyclotomic":
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Cyclotomic":
        return Cyclotomic.coerce(other) - self

    def __mul__(self, other) -> "Cyclotomic":
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        if other.order == 1:
            return self.scale(other.coeffs[0])
        if self.order == 1:
            return other.scale(self.coeffs[0])
        a, b = (self, other) if self.order == other.order else self._pair(other)
        n = a.order
        out = [_ZERO] * n
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        out[(i + j) % n] += x * y
        return Cyclotomic(n, out)

    __rmul__ = __mul__

    @staticmethod
    def dot(xs: Sequence["Cyclotomic"], ys: Sequence["Cyclotomic"], weights: Sequence[Scalar] | None = None) -> "Cyclotomic":
        """sum of w_k * x_k * y_k, reduced once at the end."""
        xs = [Cyclotomic.coerce(x) for x in xs]
        ys = [Cyclotomic.coerce(y) for y in ys]
        if len(xs) != len(ys):
            raise ValueError("dot product of sequences of different lengths")
        ws = [Fraction(w) for w in weights] if weights is not None else [Fraction(1)] * len(xs)
        n = 1
        for z in xs + ys:
            n = math.lcm(n, z.order)
        out = [_ZERO] * n
        for x, y, w in zip(xs, ys, ws):
            sx, sy = n // x.order, n // y.order
            for i, a in enumerate(x.coeffs):
                if a:
                    aw = a * w
                    for j, b in enumerate(y.coeffs):
                        if b:
                            k = (i * sx + j * sy) % n
                            out[k] += aw * b
        return Cyclotomic(n, out)

    def conj(self) -> "Cyclotomic":
        n = self.order
        return Cyclotomic(n, [self.coeffs[(-k) % n] for k in range(n)])

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = Cyclotomic.rational(1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, q: Scalar) -> "Cyclotomic":
        q = Fraction(q)
        return Cyclotomic._reduced(self.order, tuple(q * x for x in self.coeffs))

    def is_rational(self) -> bool:
        return all(x == 0 for x in self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        n = self.order
        return sum((float(c) * cmath.exp(2j * math.pi * k / n) for k, c in enumerate(self.coeffs) if c), 0j)

    def __eq__(self, other) -> bool:
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        # equal numbers may be stored at different orders; only rationals
        # have an order-independent cheap key
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash("cyclotomic")

    def __str__(self) -> str:
        if self.is_rational():
            return format_rational(self.coeffs[0])
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            z = "1" if k == 0 else (f"z{self.order}" if k == 1 else f"z{self.order}^{k}")
            if k == 0:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(z)
            elif c == -1:
                parts.append(f"-{z}")
            else:
                parts.append(f"{format_rational(c)}*{z}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Cyclotomic({self})"


def _reduce_cyclo(raw: list[Fraction], n: int) -> list[Fraction]:
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    c = list(raw)
    for i in range(n - 1, d - 1, -1):
        v = c[i]
        if v:
            c[i] = _ZERO
            for j in range(d):
                if phi[j]:
                    c[i - d + j] -= v * phi[j]
    return c


def cyclotomic_arith(a: Cyclotomic, b: Cyclotomic | None, op: str) -> Cyclotomic:
    """Dispatch helper: op in {"add", "mul", "conj"} (conj ignores ``b``)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "conj":
        return a.conj()
    raise ValueError(f"unknown cyclotomic op {op!r}")
