"""Affine monoids of lattice points {m in N^n : A m = 0 (mod r)}.

Hilbert bases are found by graded enumeration: a degree-d element is a new
generator exactly when it does not dominate an earlier generator (the
monoids here are saturated, so the difference then lies in the monoid).
The search stops once it has run through both twice the largest generator
degree and a proven bound on generator degrees (the group order for
congruence monoids, a parallelotope bound from the extremal rays for
cones); running out of the degree bound first is an error.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import deque
from fractions import Fraction
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np
from scipy.optimize import linprog

Vector = tuple[int, ...]

DEFAULT_BOUND = 12


class IncompleteError(RuntimeError):
    """The degree bound ran out before the generator set was certified."""


def degree_bound(default: int = DEFAULT_BOUND) -> int:
    """Default bound, overridden by the NCCR_DEGREE_BOUND environment variable."""
    raw = os.environ.get("NCCR_DEGREE_BOUND")
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"NCCR_DEGREE_BOUND must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("NCCR_DEGREE_BOUND must be positive")
    return value


@dataclass(frozen=True)
class LatticeMonoid:
    rows: tuple[tuple[int, ...], ...]
    nvars: int
    modulus: int | None = None

    def contains(self, m: Sequence[int]) -> bool:
        for row in self.rows:
            s = sum(a * x for a, x in zip(row, m))
            if (s % self.modulus if self.modulus else s) != 0:
                return False
        return all(x >= 0 for x in m)

    def is_trivial(self) -> bool:
        """True when 0 is the only element."""
        if self.modulus:
            return self.nvars == 0
        if self.nvars == 0:
            return True
        a_eq = np.array([list(r) for r in self.rows] + [[1] * self.nvars], dtype=float)
        b_eq = np.array([0.0] * len(self.rows) + [1.0])
        res = linprog(np.zeros(self.nvars), A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * self.nvars, method="highs")
        return res.status != 0

    def elements_of_degree(self, d: int, avoid: Sequence[Vector] = ()) -> Iterator[Vector]:
        """Elements of total degree d that dominate none of ``avoid``."""
        n = self.nvars
        rows = [list(r) for r in self.rows]
        # suffix ranges of each row's coefficients, for pruning equalities
        lo = [[0] * (n + 1) for _ in rows]
        hi = [[0] * (n + 1) for _ in rows]
        for j, row in enumerate(rows):
            for i in range(n - 1, -1, -1):
                lo[j][i] = min(lo[j][i + 1], row[i])
                hi[j][i] = max(hi[j][i + 1], row[i])
        vec = [0] * n
        partial = [0] * len(rows)
        avoid = [tuple(a) for a in avoid]

        def dominated() -> bool:
            return any(all(v >= a for v, a in zip(vec, g)) for g in avoid)

        def rec(i: int, rem: int) -> Iterator[Vector]:
            if i == n - 1:
                vec[i] = rem
                for j, row in enumerate(rows):
                    partial[j] += row[i] * rem
                ok = all((p % self.modulus if self.modulus else p) == 0 for p in partial)
                if ok and not dominated():
                    yield tuple(vec)
                for j, row in enumerate(rows):
                    partial[j] -= row[i] * rem
                vec[i] = 0
                return
            for e in range(rem, -1, -1):
                vec[i] = e
                for j, row in enumerate(rows):
                    partial[j] += row[i] * e
                feasible = True
                if not self.modulus:
                    r2 = rem - e
                    for j in range(len(rows)):
                        if not (-partial[j] >= r2 * lo[j][i + 1] and -partial[j] <= r2 * hi[j][i + 1]):
                            feasible = False
                            break
                if feasible and avoid and dominated():
                    feasible = False
                if feasible:
                    yield from rec(i + 1, rem - e)
                for j, row in enumerate(rows):
                    partial[j] -= row[i] * e
                vec[i] = 0

        if n == 0:
            return iter(())
        return rec(0, d)


@dataclass(frozen=True)
class HilbertBasis:
    generators: tuple[Vector, ...]
    certified_degree: int
    bound: int

    @property
    def max_degree(self) -> int:
        return max((sum(g) for g in self.generators), default=0)


def hilbert_basis(monoid: LatticeMonoid, bound: int | None = None) -> HilbertBasis:
    bound = degree_bound() if bound is None else bound
    if bound < 1:
        raise ValueError("degree bound must be at least 1")
    if monoid.is_trivial():
        return HilbertBasis((), 0, bound)
    proven = generator_degree_bound(monoid)
    found: list[Vector] = []
    for d in range(1, bound + 1):
        new = sorted(monoid.elements_of_degree(d, found), reverse=True)
        found.extend(new)
        top = max((sum(g) for g in found), default=0)
        if found and d >= max(2 * top, proven):
            return HilbertBasis(tuple(found), d, bound)
    raise IncompleteError(
        f"generator set not certified within degree bound {bound} "
        f"(found {len(found)} generators, largest degree {max((sum(g) for g in found), default=0)}, "
        f"generators may have degree up to {proven})"
    )


def generator_degree_bound(monoid: LatticeMonoid) -> int:
    """An upper bound for the degree of every Hilbert basis element.

    For {m : A m = 0 mod r} an irreducible element is a zero-sum sequence
    with no zero-sum subsequence in the group generated by the columns, so
    its degree is at most the order of that group.  For a cone every
    irreducible element is a ray generator or lies in the half-open
    parallelotope of a simplicial subcone, so its degree is below the sum of
    the dim largest ray degrees.
    """
    if monoid.modulus:
        return _column_group_order(monoid)
    rays = extremal_rays(monoid)
    if not rays:
        return 0
    degs = sorted((sum(v) for v in rays), reverse=True)
    dim = monoid.nvars - _rank([[Fraction(x) for x in row] for row in monoid.rows])
    return max(degs[0], sum(degs[:dim]) - 1)


def _column_group_order(monoid: LatticeMonoid) -> int:
    r = monoid.modulus
    cols = [tuple(row[i] % r for row in monoid.rows) for i in range(monoid.nvars)]
    zero = tuple(0 for _ in monoid.rows)
    seen = {zero}
    queue = deque([zero])
    while queue:
        u = queue.popleft()
        for c in cols:
            w = tuple((a + b) % r for a, b in zip(u, c))
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen)


def _rank(rows: list[list[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _null_vector(rows: list[list[Fraction]], k: int) -> list[Fraction] | None:
    """A spanning vector of the kernel when it is one-dimensional."""
    m = [list(r) for r in rows]
    pivots = []
    rank = 0
    for c in range(k):
        pivot = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        lead = m[rank][c]
        m[rank] = [a / lead for a in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(k) if c not in pivots]
    if len(free) != 1:
        return None
    v = [Fraction(0)] * k
    v[free[0]] = Fraction(1)
    for i, c in enumerate(pivots):
        v[c] = -m[i][free[0]]
    return v


def extremal_rays(monoid: LatticeMonoid) -> list[Vector]:
    """Primitive generators of the extremal rays of {m >= 0 : A m = 0}.

    A ray's support S is minimal: A restricted to S has a one-dimensional
    kernel spanned by a vector with no zero entry, all of one sign.
    """
    n = monoid.nvars
    rows = [[Fraction(x) for x in row] for row in monoid.rows]
    rank = _rank(rows) if rows else 0
    out = []
    for size in range(1, min(n, rank + 1) + 1):
        for support in itertools.combinations(range(n), size):
            sub = [[row[i] for i in support] for row in rows] or [[Fraction(0)] * size]
            v = _null_vector(sub, size)
            if v is None or any(x == 0 for x in v):
                continue
            if all(x < 0 for x in v):
                v = [-x for x in v]
            elif not all(x > 0 for x in v):
                continue
            den = math.lcm(*(x.denominator for x in v))
            ints = [int(x * den) for x in v]
            g = math.gcd(*ints)
            full = [0] * n
            for i, x in zip(support, ints):
                full[i] = x // g
            out.append(tuple(full))
    return out


def minimal_elements(vectors: Sequence[Vector]) -> list[Vector]:
    """Elements not dominating another element of the list."""
    out = []
    for v in vectors:
        if not any(w != v and all(a >= b for a, b in zip(v, w)) for w in vectors):
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# Congruences and relations


class CongruenceClosure:
    """Equivalence on N^n generated by binomial moves lhs <-> rhs (with
    multipliers).  Classes are explored by breadth-first search."""

    def __init__(self, moves: Sequence[tuple[Vector, Vector]], cap: int = 20000) -> None:
        self.moves = [(tuple(a), tuple(b)) for a, b in moves]
        self.cap = cap
        self._key: dict[Vector, Vector] = {}
        self._class: dict[Vector, frozenset[Vector]] = {}

    def closure(self, m: Vector, max_degree: int | None = None) -> frozenset[Vector]:
        m = tuple(m)
        if max_degree is None and m in self._class:
            return self._class[m]
        seen = {m}
        queue = deque([m])
        while queue:
            u = queue.popleft()
            for a, b in self.moves:
                for x, y in ((a, b), (b, a)):
                    if all(ui >= xi for ui, xi in zip(u, x)):
                        w = tuple(ui - xi + yi for ui, xi, yi in zip(u, x, y))
                        if max_degree is not None and sum(w) > max_degree:
                            continue
                        if w not in seen:
                            seen.add(w)
                            if len(seen) > self.cap:
                                raise IncompleteError(f"congruence class of {m} exceeds {self.cap} elements")
                            queue.append(w)
        cls = frozenset(seen)
        if max_degree is None:
            for w in cls:
                self._class[w] = cls
        return cls

    def key(self, m: Vector) -> Vector:
        m = tuple(m)
        if m not in self._key:
            cls = self.closure(m)
            k = min(cls, key=lambda v: (sum(v), tuple(-x for x in v)))
            for w in cls:
                self._key[w] = k
        return self._key[m]

    def equivalent(self, u: Vector, v: Vector) -> bool:
        return self.key(u) == self.key(v)


def multisets(weights: Sequence[int], max_weight: int) -> Iterator[Vector]:
    """Exponent vectors e with sum e_i * weights_i <= max_weight, e != 0."""
    n = len(weights)
    vec = [0] * n

    def rec(i: int, rem: int) -> Iterator[Vector]:
        if i == n:
            if any(vec):
                yield tuple(vec)
            return
        e = 0
        while e * weights[i] <= rem:
            vec[i] = e
            yield from rec(i + 1, rem - e * weights[i])
            e += 1
        vec[i] = 0

    return rec(0, max_weight)


def find_relations(
    generators: Sequence[Vector],
    max_degree: int,
    key: Callable[[Vector], object],
) -> list[tuple[Vector, Vector]]:
    """Binomial relations among generators, as pairs of exponent vectors.

    Products of generators up to ``max_degree`` are grouped by ``key`` (the
    class of the product in the underlying monoid).  A relation is kept only
    when it does not already follow from the kept ones.
    """
    degs = [max(sum(g), 1) for g in generators]
    groups: dict[object, list[Vector]] = {}
    for e in multisets(degs, max_degree):
        total = tuple(sum(ei * g[i] for ei, g in zip(e, generators)) for i in range(len(generators[0])))
        groups.setdefault(key(total), []).append(e)
    kept: list[tuple[Vector, Vector]] = []
    weight = lambda e: sum(x * d for x, d in zip(e, degs))
    order = sorted(groups.values(), key=lambda g: min(weight(e) for e in g))
    for members in order:
        if len(members) < 2:
            continue
        members = sorted(members, key=lambda e: (weight(e), tuple(-x for x in e)))
        base = members[0]
        for other in members[1:]:
            if other not in _reach(kept, base, degs, 2 * max_degree):
                kept.append((base, other))
    return kept


def _reach(moves: Sequence[tuple[Vector, Vector]], start: Vector, degs: Sequence[int], max_weight: int) -> set[Vector]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for a, b in moves:
            for x, y in ((a, b), (b, a)):
                if all(ui >= xi for ui, xi in zip(u, x)):
                    w = tuple(ui - xi + yi for ui, xi, yi in zip(u, x, y))
                    if w not in seen and sum(wi * d for wi, d in zip(w, degs)) <= max_weight:
                        seen.add(w)
                        queue.append(w)
    return seen
