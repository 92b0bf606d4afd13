"""Invariant rings, weight modules and endomorphism quivers for diagonal
abelian actions.

Weight convention: the generator of 1/r(a1,...,an) multiplies the monomial
x1^e1 ... xn^en by e^(a1 e1 + ... + an en), and S_i collects the monomials of
weight i (mod r).  For a torus with weights w the weight is the plain sum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .mckay import GroupError, parse_group, variable_names
from .monoids import IncompleteError, LatticeMonoid, degree_bound, find_relations, hilbert_basis
from .quiver import Arrow, Quiver
from .scalars import Monomial

Vector = tuple[int, ...]


class ActionError(ValueError):
    pass


@dataclass(frozen=True)
class AbelianAction:
    kind: str  # "cyclic" or "torus"
    weights: tuple[int, ...]
    r: int = 0
    variables: tuple[str, ...] = ()

    @staticmethod
    def cyclic(r: int, weights: Sequence[int]) -> "AbelianAction":
        if r < 1:
            raise ActionError("group order must be positive")
        weights = tuple(int(a) for a in weights)
        if not weights:
            raise ActionError("at least one weight is needed")
        if any(not 0 <= a < r for a in weights):
            raise ActionError("cyclic weights must satisfy 0 <= a < r")
        return AbelianAction("cyclic", weights, r, variable_names(len(weights)))

    @staticmethod
    def torus(weights: Sequence[int]) -> "AbelianAction":
        weights = tuple(int(w) for w in weights)
        if not weights:
            raise ActionError("at least one weight is needed")
        names = []
        pos = neg = 0
        for w in weights:
            if w >= 0:
                pos += 1
                names.append(f"x{pos}")
            else:
                neg += 1
                names.append(f"y{neg}")
        return AbelianAction("torus", weights, 0, tuple(names))

    @staticmethod
    def parse_group(text: str) -> "AbelianAction":
        try:
            g = parse_group(text)
        except GroupError as exc:
            raise ActionError(str(exc)) from None
        if g.kind != "cyclic":
            raise ActionError(f"{text!r} is not a diagonal cyclic group")
        return AbelianAction.cyclic(g.r, g.weights)

    @staticmethod
    def parse_torus(text: str) -> "AbelianAction":
        try:
            return AbelianAction.torus([int(w) for w in text.split(",")])
        except ValueError:
            raise ActionError(f"cannot parse torus weights {text!r}; use a list like 1,1,-1,-1") from None

    @property
    def nvars(self) -> int:
        return len(self.weights)

    @property
    def name(self) -> str:
        w = ",".join(str(a) for a in self.weights)
        return f"1/{self.r}({w})" if self.kind == "cyclic" else f"torus({w})"

    def weight(self, e: Sequence[int]) -> int:
        s = sum(a * x for a, x in zip(self.weights, e))
        return s % self.r if self.kind == "cyclic" else s

    def monomial(self, e: Sequence[int]) -> Monomial:
        return Monomial.of({v: x for v, x in zip(self.variables, e) if x})

    def exponents(self, m: Monomial) -> Vector:
        return tuple(m[v] for v in self.variables)

    def monoid(self) -> LatticeMonoid:
        return LatticeMonoid((self.weights,), self.nvars, self.r if self.kind == "cyclic" else None)


def _bound(act: AbelianAction, bound: int | None) -> int:
    if bound is not None:
        if bound < 1:
            raise ActionError("degree bound must be at least 1")
        return bound
    return degree_bound(3 * act.r) if act.kind == "cyclic" else degree_bound()


def _sorted_monomials(ms) -> list[Monomial]:
    return sorted(ms, key=lambda m: (m.degree, m.sort_key()))


@dataclass(frozen=True)
class ToricRelation:
    lhs: Monomial  # in generator names g0, g1, ...
    rhs: Monomial
    text: str

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class ToricInvariantRing:
    action: AbelianAction
    generators: tuple[Monomial, ...]
    relations: tuple[ToricRelation, ...]
    certified_degree: int
    relation_degree: int
    gorenstein: bool | None

    def to_json(self) -> dict:
        out = {
            "action": self.action.name,
            "generators": [str(g) for g in self.generators],
            "relations": [str(r) for r in self.relations],
            "certified_degree": self.certified_degree,
            "relation_degree": self.relation_degree,
        }
        if self.gorenstein is not None:
            out["gorenstein"] = self.gorenstein
        return out


def invariant_ring_generators(act: AbelianAction, degree_bound: int | None = None) -> list[Monomial]:
    return list(invariant_ring(act, degree_bound).generators)


def invariant_ring(act: AbelianAction, bound: int | None = None) -> ToricInvariantRing:
    """Hilbert basis of the weight-zero monomials plus the binomial relations
    among them found up to twice the largest generator degree."""
    b = _bound(act, bound)
    hb = hilbert_basis(act.monoid(), b)
    gens = [act.monomial(v) for v in hb.generators]
    order = sorted(range(len(gens)), key=lambda i: (gens[i].degree, gens[i].sort_key()))
    vecs = [hb.generators[i] for i in order]
    gens = [gens[i] for i in order]
    rel_deg = 2 * hb.max_degree
    rels = []
    if vecs:
        for lhs, rhs in find_relations(vecs, rel_deg, key=lambda v: v):
            rels.append(_relation(gens, lhs, rhs))
    gor = sum(act.weights) == 0 if act.kind == "torus" else None
    return ToricInvariantRing(act, tuple(gens), tuple(rels), hb.certified_degree, rel_deg, gor)


def _relation(gens: Sequence[Monomial], lhs: Vector, rhs: Vector) -> ToricRelation:
    def side(e: Vector) -> str:
        parts = []
        for g, k in zip(gens, e):
            if k:
                base = f"({g})" if len(g.exps) > 1 or g.degree > 1 and k > 1 else str(g)
                parts.append(base if k == 1 else f"{base}^{k}")
        return " * ".join(parts)

    name = lambda e: Monomial.of({f"g{i}": k for i, k in enumerate(e) if k})
    return ToricRelation(name(lhs), name(rhs), f"{side(lhs)} = {side(rhs)}")


# ---------------------------------------------------------------------------
# Weight modules


@dataclass(frozen=True)
class WeightModule:
    weight: int
    generators: tuple[Monomial, ...]
    certified_degree: int


def _monomials_of_degree(n: int, d: int) -> Iterator[Vector]:
    for cut in itertools.combinations(range(d + n - 1), n - 1):
        prev = -1
        e = []
        for c in cut + (d + n - 1,):
            e.append(c - prev - 1)
            prev = c
        yield tuple(e)


def _divides(a: Vector, b: Vector) -> bool:
    return all(x <= y for x, y in zip(a, b))


def module_generators(act: AbelianAction, i: int, degree_bound: int | None = None) -> WeightModule:
    """Minimal generators of S_i over S_0.

    A weight-i monomial is a generator exactly when no nonconstant invariant
    monomial divides it.  Once every monomial of some degree d is divisible by
    an invariant, so is every monomial of higher degree, which certifies the
    list.
    """
    if act.kind != "cyclic":
        raise ActionError("weight modules are only defined for cyclic actions")
    b = _bound(act, degree_bound)
    i %= act.r
    inv = invariant_ring_generators(act, b)
    inv_vecs = [act.exponents(m) for m in inv]
    gens = []
    for d in range(0, b + 1):
        all_divisible = d > 0
        for e in _monomials_of_degree(act.nvars, d):
            hit = any(_divides(v, e) for v in inv_vecs)
            if not hit:
                all_divisible = False
                if act.weight(e) == i:
                    gens.append(act.monomial(e))
        if all_divisible:
            return WeightModule(i, tuple(_sorted_monomials(gens)), d)
    raise IncompleteError(f"generators of S_{i} not certified within degree bound {b}")


# ---------------------------------------------------------------------------
# Endomorphism quivers


@dataclass(frozen=True)
class EndoQuiver:
    quiver: Quiver
    classes: tuple[int, ...]
    certified_degree: int
    complete: bool

    def to_json(self) -> dict:
        from .jsonio import quiver_to_json

        return quiver_to_json(self.quiver, (), {"certified_degree": self.certified_degree, "complete": self.complete})


def _divisors(e: Vector) -> Iterator[Vector]:
    return itertools.product(*(range(x + 1) for x in e))


def _reducible(act: AbelianAction, e: Vector, source: int, classes: frozenset[int]) -> bool:
    """Whether multiplication by x^e out of S_source factors through some
    S_k in ``classes`` with both factors nonconstant."""
    total = sum(e)
    for f in _divisors(e):
        if 0 < sum(f) < total and (source + act.weight(f)) % act.r in classes:
            return True
    return False


def endo_quiver(act: AbelianAction, degree_bound: int | None = None, classes: Sequence[int] | None = None) -> EndoQuiver:
    """Quiver of End(sum of S_i over ``classes``), default all weight classes.

    Arrows are monomial maps S_i -> S_j that do not factor through any listed
    S_k.  With every class present, a monomial of degree d+1 factors whenever
    each of degree d does, so the search stops at the first such degree; for a
    partial sum the search runs to the bound and the result is marked
    incomplete when the last degree still had irreducible maps.
    """
    if act.kind != "cyclic":
        raise ActionError("endomorphism quivers are only computed for cyclic actions")
    if act.r > 12:
        raise ActionError("endomorphism quivers are limited to r <= 12")
    b = _bound(act, degree_bound)
    cls = sorted({c % act.r for c in (range(act.r) if classes is None else classes)})
    if not cls:
        raise ActionError("at least one weight class is needed")
    full = len(cls) == act.r
    cset = frozenset(cls)
    found: list[tuple[int, int, Vector]] = []
    certified = b
    complete = False
    for d in range(1, b + 1):
        new = 0
        for e in _monomials_of_degree(act.nvars, d):
            w = act.weight(e)
            for i in cls:
                j = (i + w) % act.r
                if j in cset and not _reducible(act, e, i, cset):
                    found.append((i, j, e))
                    new += 1
        if new == 0 and full:
            certified, complete = d, True
            break
    arrows = []
    used: dict[str, int] = {}
    for i, j, e in sorted(found, key=lambda t: (sum(t[2]), t[0], act.monomial(t[2]).sort_key())):
        m = act.monomial(e)
        label = str(m)
        base = f"{label.replace('*', '').replace('^', '')}_{i}"
        used[base] = used.get(base, 0) + 1
        name = base if used[base] == 1 else f"{base}_{used[base]}"
        arrows.append(Arrow(name, f"S{i}", f"S{j}", label))
    q = Quiver(tuple(f"S{c}" for c in cls), tuple(arrows))
    return EndoQuiver(q, tuple(cls), certified, complete)


def mckay_identification(r: int) -> dict[str, str]:
    """Vertex relabelling S_i -> rho_{-i} under which the endomorphism quiver
    and the McKay quiver coincide as labelled multigraphs."""
    return {f"S{i}": f"rho{(-i) % r}" for i in range(r)}


def two_generated_classes(act: AbelianAction, degree_bound: int | None = None) -> list[int]:
    """Weight classes i > 0 whose S_i needs exactly two generators, plus 0."""
    out = [0]
    for i in range(1, act.r):
        if len(module_generators(act, i, degree_bound).generators) == 2:
            out.append(i)
    return out
