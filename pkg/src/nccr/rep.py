"""Finite-dimensional quiver representations.

Matrices use the row-vector convention: the matrix of an arrow ``a`` has
shape dim(tail) x dim(head), and a path evaluates to the ordered product of
its arrow matrices.  Entries are Fractions, or Polynomials in symbolic mode
(1x1 entries carrying chart coordinates).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

from .quiver import AlgebraElement, Path, Quiver, Relation
from .scalars import Monomial, Polynomial, format_rational, parse_rational

Entry = Union[Fraction, Polynomial]
Matrix = tuple[tuple[Entry, ...], ...]


class RepresentationError(ValueError):
    pass


def _is_zero(x: Entry) -> bool:
    return x.is_zero if isinstance(x, Polynomial) else x == 0


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(c)) for _ in range(r))


def mat_mul(x: Matrix, y: Matrix, inner: int, cols: int) -> Matrix:
    """x (r x inner) times y (inner x cols); sizes are explicit for empty shapes."""
    out = []
    for row in x:
        new = []
        for j in range(cols):
            acc: Entry = Fraction(0)
            for k in range(inner):
                acc = acc + row[k] * y[k][j]
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def mat_is_zero(m: Matrix) -> bool:
    return all(_is_zero(x) for row in m for x in row)


@dataclass(frozen=True)
class Representation:
    quiver: Quiver
    dims: Mapping[str, int]
    matrices: Mapping[str, Matrix]

    def __post_init__(self) -> None:
        dims = {v: int(self.dims.get(v, 0)) for v in self.quiver.vertices}
        extra = set(self.dims) - set(self.quiver.vertices)
        if extra:
            raise RepresentationError(f"unknown vertices in dimension vector: {sorted(extra)}")
        if any(d < 0 for d in dims.values()):
            raise RepresentationError("negative dimension")
        mats: dict[str, Matrix] = {}
        unknown = set(self.matrices) - set(self.quiver.arrow_names)
        if unknown:
            raise RepresentationError(f"matrices given for unknown arrows: {sorted(unknown)}")
        for a in self.quiver.arrows:
            r, c = dims[a.tail], dims[a.head]
            m = self.matrices.get(a.name)
            if m is None:
                m = zeros(r, c)
            m = tuple(tuple(_coerce_entry(x) for x in row) for row in m)
            if len(m) != r or any(len(row) != c for row in m):
                raise RepresentationError(f"matrix of {a.name!r} must be {r}x{c}")
            if any(isinstance(x, Polynomial) for row in m for x in row) and (r, c) != (1, 1):
                raise RepresentationError("symbolic entries are only supported on 1x1 matrices")
            mats[a.name] = m
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrices", mats)

    @staticmethod
    def scalar(q: Quiver, values: Mapping[str, Union[int, Fraction, Polynomial, Monomial, str]]) -> "Representation":
        """All dimensions 1; ``values`` gives each arrow's 1x1 entry (missing = 0)."""
        mats = {}
        for a in q.arrows:
            v = values.get(a.name, 0)
            if isinstance(v, Monomial):
                v = Polynomial.monomial(v)
            mats[a.name] = ((v,),)
        return Representation(q, {v: 1 for v in q.vertices}, mats)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def support(self) -> list[str]:
        return [v for v in self.quiver.vertices if self.dims[v] > 0]

    def nonzero_arrows(self) -> list[str]:
        return [a.name for a in self.quiver.arrows if not mat_is_zero(self.matrices[a.name])]


def _coerce_entry(x) -> Entry:
    if isinstance(x, Polynomial):
        return x.constant() if x.is_constant() else x
    if isinstance(x, Monomial):
        return Polynomial.monomial(x) if not x.is_one else Fraction(1)
    if isinstance(x, str):
        try:
            return parse_rational(x)
        except ValueError:
            return _coerce_entry(Polynomial.parse(x, laurent=True))
    return parse_rational(x)


def evaluate_path(rep: Representation, p: Path) -> Matrix:
    if p.is_trivial:
        return identity(rep.dims[p.tail])
    q = rep.quiver
    out = rep.matrices[p.arrows[0]]
    for name in p.arrows[1:]:
        a = q.arrow(name)
        out = mat_mul(out, rep.matrices[name], rep.dims[a.tail], rep.dims[a.head])
    return out


def evaluate_element(rep: Representation, x: AlgebraElement) -> Matrix | None:
    """Sum of coefficient times path matrix; None for the zero element."""
    total = None
    for p, c in sorted(x.terms.items(), key=lambda t: t[0].sort_key()):
        m = evaluate_path(rep, p)
        scaled = tuple(tuple(c * e for e in row) for row in m)
        if total is None:
            total = scaled
        else:
            total = tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(total, scaled))
    return total


def check_relations(rep: Representation, rels: Sequence[Relation]) -> tuple[bool, list[Relation]]:
    """Return (all satisfied, violated relations)."""
    bad = []
    for r in rels:
        m = evaluate_element(rep, r.element)
        if m is not None and not mat_is_zero(m):
            bad.append(r)
    return (not bad, bad)


def direct_sum(x: Representation, y: Representation) -> Representation:
    if x.quiver != y.quiver:
        raise RepresentationError("direct sum of representations of different quivers")
    q = x.quiver
    dims = {v: x.dims[v] + y.dims[v] for v in q.vertices}
    mats = {}
    for a in q.arrows:
        r1, c1 = x.dims[a.tail], x.dims[a.head]
        r2, c2 = y.dims[a.tail], y.dims[a.head]
        mx, my = x.matrices[a.name], y.matrices[a.name]
        rows = [tuple(mx[i]) + (Fraction(0),) * c2 for i in range(r1)]
        rows += [(Fraction(0),) * c1 + tuple(my[i]) for i in range(r2)]
        mats[a.name] = tuple(rows)
    return Representation(q, dims, mats)


def zero_representation(q: Quiver) -> Representation:
    return Representation(q, {v: 0 for v in q.vertices}, {})


def closed_subsets(rep: Representation) -> list[frozenset[str]]:
    """Vertex subsets of the support closed under the nonzero arrows.

    Only defined when every dimension is 0 or 1; these are exactly the
    supports of subrepresentations.  Ordered by size, then vertex order.
    """
    if any(d > 1 for d in rep.dims.values()):
        raise RepresentationError("closed_subsets needs every dimension to be 0 or 1")
    q = rep.quiver
    supp = rep.support()
    edges = [(q.arrow(n).tail, q.arrow(n).head) for n in rep.nonzero_arrows()]
    out = []
    for k in range(len(supp) + 1):
        for combo in combinations(supp, k):
            s = set(combo)
            if all(h in s for t, h in edges if t in s):
                out.append(frozenset(combo))
    return out


def subset_order_key(q: Quiver, s: Iterable[str]) -> tuple:
    pos = {v: i for i, v in enumerate(q.vertices)}
    idx = sorted(pos[v] for v in s)
    return (len(idx), idx)


# ---------------------------------------------------------------------------
# JSON


def _entry_to_json(x: Entry) -> str:
    return format_rational(x) if isinstance(x, Fraction) else str(x)


def representation_to_json(rep: Representation) -> dict:
    return {
        "dims": {v: rep.dims[v] for v in rep.quiver.vertices},
        "matrices": {
            a.name: [[_entry_to_json(x) for x in row] for row in rep.matrices[a.name]]
            for a in rep.quiver.arrows
        },
    }


def representation_from_json(q: Quiver, data: Mapping) -> Representation:
    if not isinstance(data, Mapping) or "dims" not in data:
        raise RepresentationError("representation JSON needs a 'dims' object")
    dims = data["dims"]
    mats = data.get("matrices", {})
    if not isinstance(dims, Mapping) or not isinstance(mats, Mapping):
        raise RepresentationError("'dims' and 'matrices' must be objects")
    return Representation(q, dict(dims), {k: tuple(tuple(row) for row in v) for k, v in mats.items()})
