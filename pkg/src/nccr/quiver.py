"""Quivers, paths and the path algebra kQ.

Composition convention: ``p*q`` means "first p, then q", so it is nonzero
exactly when the head of p equals the tail of q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .scalars import Scalar, format_rational


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    tail: str
    head: str
    label: str | None = None


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex id")
        index = {}
        for a in self.arrows:
            if a.name in index:
                raise QuiverError(f"duplicate arrow name {a.name!r}")
            if a.tail not in self.vertices or a.head not in self.vertices:
                raise QuiverError(f"arrow {a.name!r} references an unknown vertex")
            index[a.name] = a
        object.__setattr__(self, "_index", index)

    @staticmethod
    def build(vertices: Iterable, arrows: Iterable[tuple]) -> "Quiver":
        """``arrows`` holds (name, tail, head) or (name, tail, head, label)."""
        return Quiver(tuple(str(v) for v in vertices), tuple(Arrow(*(str(x) if x is not None else None for x in a)) for a in arrows))

    def arrow(self, name: str) -> Arrow:
        try:
            return self._index[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    @property
    def arrow_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.arrows)

    def out_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.tail == v]

    def in_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.head == v]

    def has_oriented_cycle(self) -> bool:
        state: dict[str, int] = {}

        def visit(v: str) -> bool:
            state[v] = 1
            for a in self.out_arrows(v):
                s = state.get(a.head, 0)
                if s == 1 or (s == 0 and visit(a.head)):
                    return True
            state[v] = 2
            return False

        return any(state.get(v, 0) == 0 and visit(v) for v in self.vertices)

    def path(self, arrows: Sequence[str] | str) -> "Path":
        if isinstance(arrows, str):
            arrows = [arrows]
        return Path.of(self, arrows)

    def trivial(self, v: str) -> "Path":
        if v not in self.vertices:
            raise QuiverError(f"unknown vertex {v!r}")
        return Path(v, v, ())


@dataclass(frozen=True, order=True)
class Path:
    """A path, stored with its endpoints; trivial paths have no arrows."""

    tail: str
    head: str
    arrows: tuple[str, ...] = ()

    @staticmethod
    def of(q: Quiver, arrows: Sequence[str]) -> "Path":
        arrows = tuple(arrows)
        if not arrows:
            raise QuiverError("use Quiver.trivial for trivial paths")
        objs = [q.arrow(n) for n in arrows]
        for x, y in zip(objs, objs[1:]):
            if x.head != y.tail:
                raise QuiverError(f"arrows {x.name!r} and {y.name!r} do not compose")
        return Path(objs[0].tail, objs[-1].head, arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __len__(self) -> int:
        return len(self.arrows)

    def sort_key(self) -> tuple:
        return (len(self.arrows), self.arrows if self.arrows else (self.tail,))

    def __str__(self) -> str:
        return f"e_{self.tail}" if self.is_trivial else "*".join(self.arrows)


def _concat(p: Path, r: Path) -> Path | None:
    if p.head != r.tail:
        return None
    return Path(p.tail, r.head, p.arrows + r.arrows)


class AlgebraElement:
    """Finite linear combination of paths with Fraction coefficients."""

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver: Quiver, terms: Mapping[Path, Scalar] | None = None) -> None:
        clean: dict[Path, Fraction] = {}
        for p, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[p] = clean.get(p, Fraction(0)) + c
                if clean[p] == 0:
                    del clean[p]
        self.quiver = quiver
        self.terms = clean

    @staticmethod
    def zero(q: Quiver) -> "AlgebraElement":
        return AlgebraElement(q)

    @staticmethod
    def unit(q: Quiver) -> "AlgebraElement":
        return AlgebraElement(q, {q.trivial(v): 1 for v in q.vertices})

    @staticmethod
    def of_path(q: Quiver, p: Path, c: Scalar = 1) -> "AlgebraElement":
        return AlgebraElement(q, {p: c})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "AlgebraElement") -> None:
        if other.quiver != self.quiver:
            raise QuiverError("elements live in different quivers")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, Fraction(0)) + c
        return AlgebraElement(self.quiver, out)

    def __neg__(self) -> "AlgebraElement":
        return self.scale(-1)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c: Scalar) -> "AlgebraElement":
        return AlgebraElement(self.quiver, {p: Fraction(c) * v for p, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.quiver == other.quiver and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for p in sorted(self.terms, key=Path.sort_key):
            c = self.terms[p]
            parts.append(str(p) if c == 1 else f"{format_rational(c)}*{p}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"AlgebraElement({self})"


def compose(q: Quiver, p: Path, r: Path) -> AlgebraElement:
    """``p*r`` in kQ: the concatenated path, or zero."""
    for x in (p, r):
        for n in x.arrows:
            q.arrow(n)
    c = _concat(p, r)
    return AlgebraElement(q, {c: 1} if c is not None else {})


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._check(y)
    out: dict[Path, Fraction] = {}
    for p, a in x.terms.items():
        for r, b in y.terms.items():
            c = _concat(p, r)
            if c is not None:
                out[c] = out.get(c, Fraction(0)) + a * b
    return AlgebraElement(x.quiver, out)


def enumerate_paths(q: Quiver, max_len: int) -> list[Path]:
    """All paths of length at most ``max_len``, sorted by length then names."""
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    layer = [q.trivial(v) for v in q.vertices]
    out = list(layer)
    for _ in range(max_len):
        nxt = []
        for p in layer:
            for a in q.out_arrows(p.head):
                nxt.append(Path(p.tail, a.head, p.arrows + (a.name,)))
        if not nxt:
            break
        out.extend(nxt)
        layer = nxt
    return sorted(out, key=Path.sort_key)


@dataclass(frozen=True)
class Relation:
    """An element of kQ whose paths share one tail and one head."""

    element: AlgebraElement
    name: str = ""

    def __post_init__(self) -> None:
        ends = {(p.tail, p.head) for p in self.element.terms}
        if len(ends) > 1:
            raise QuiverError(f"relation {self.name or self.element} mixes paths with different endpoints")

    @staticmethod
    def binomial(q: Quiver, lhs: Sequence[str], rhs: Sequence[str], name: str = "") -> "Relation":
        """The relation lhs - rhs between two (nontrivial) paths."""
        el = AlgebraElement.of_path(q, q.path(lhs)) - AlgebraElement.of_path(q, q.path(rhs))
        return Relation(el, name or f"{'*'.join(lhs)}={'*'.join(rhs)}")

    @property
    def quiver(self) -> Quiver:
        return self.element.quiver

    def __str__(self) -> str:
        return self.name or str(self.element)


def quiver_to_dot(q: Quiver, name: str = "Q", vertex_labels: Mapping[str, str] | None = None) -> str:
    lines = [f"digraph {_dot_id(name)} {{"]
    for v in q.vertices:
        label = (vertex_labels or {}).get(v, v)
        lines.append(f"  {_dot_id(v)} [label={_dot_id(label)}];")
    for a in q.arrows:
        label = a.label if a.label is not None else a.name
        lines.append(f"  {_dot_id(a.tail)} -> {_dot_id(a.head)} [label={_dot_id(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_id(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'
