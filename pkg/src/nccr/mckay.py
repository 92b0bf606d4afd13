"""Character tables of small subgroups of GL(n), McKay quivers and the
passage between McKay quivers and dual graphs.

Cyclic groups 1/r(a1,...,an) are generated by diag(e^a1, ..., e^an) with
e = exp(2 pi i / r).  The binary dihedral group BD_4n is generated by
psi = diag(e, e^-1), e = exp(pi i / n), and tau = [[0, i], [i, 0]].
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .graphs import ADEType, DualGraph, classify_ade
from .quiver import Arrow, Quiver
from .scalars import Cyclotomic


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class Irrep:
    name: str
    dim: int
    values: tuple[Cyclotomic, ...]


@dataclass(frozen=True)
class GroupData:
    kind: str  # "cyclic" or "binary_dihedral"
    r: int = 0
    weights: tuple[int, ...] = ()
    n: int = 0
    class_names: tuple[str, ...] = ()
    class_sizes: tuple[int, ...] = ()
    irreps: tuple[Irrep, ...] = ()
    natural: tuple[Cyclotomic, ...] = ()
    # one-dimensional summands of the natural representation, when diagonal
    summands: tuple[tuple[str, tuple[Cyclotomic, ...]], ...] = ()

    @property
    def order(self) -> int:
        return self.r if self.kind == "cyclic" else 4 * self.n

    @property
    def name(self) -> str:
        if self.kind == "cyclic":
            return f"1/{self.r}({','.join(str(a) for a in self.weights)})"
        return f"BD{4 * self.n}"

    @property
    def is_sl(self) -> bool:
        if self.kind == "cyclic":
            return sum(self.weights) % self.r == 0
        return True

    @property
    def has_table(self) -> bool:
        return bool(self.irreps)

    def irrep(self, name: str) -> Irrep:
        for x in self.irreps:
            if x.name == name:
                return x
        raise GroupError(f"unknown irreducible representation {name!r}")


def variable_names(n: int) -> tuple[str, ...]:
    return ("x", "y") if n == 2 else ("x",) if n == 1 else tuple(f"x{i}" for i in range(1, n + 1))


def cyclic_group(r: int, weights: Sequence[int]) -> GroupData:
    if r < 1:
        raise GroupError("group order must be positive")
    weights = tuple(int(a) for a in weights)
    if not weights:
        raise GroupError("at least one weight is needed")
    if any(not 0 <= a < r for a in weights) and r > 1:
        raise GroupError("weights must satisfy 0 <= a < r")
    if r == 1:
        weights = tuple(0 for _ in weights)
    return GroupData("cyclic", r=r, weights=weights)


def binary_dihedral(n: int) -> GroupData:
    if n < 1:
        raise GroupError("BD_4n needs n >= 1")
    return GroupData("binary_dihedral", n=n)


_CYCLIC = re.compile(r"^\s*1\s*/\s*(\d+)\s*\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)\s*$")
_BD = re.compile(r"^\s*BD\s*(\d+)\s*$", re.IGNORECASE)


def parse_group(text: str) -> GroupData:
    """``"1/3(1,2)"`` (weights taken mod r) or ``"BD8"``."""
    m = _CYCLIC.match(text)
    if m:
        r = int(m.group(1))
        if r < 1:
            raise GroupError("group order must be positive")
        return cyclic_group(r, [int(a) % r for a in m.group(2).split(",")])
    m = _BD.match(text)
    if m:
        order = int(m.group(1))
        if order % 4 or order < 4:
            raise GroupError("binary dihedral groups are BD_4n with n >= 1")
        return binary_dihedral(order // 4)
    raise GroupError(f"cannot parse group {text!r}; use forms like 1/3(1,2) or BD8")


def character_table(g: GroupData) -> GroupData:
    if g.kind == "cyclic":
        return _cyclic_table(g)
    if g.kind == "binary_dihedral":
        return _bd_table(g)
    raise GroupError(f"unsupported group kind {g.kind!r}")


def _cyclic_table(g: GroupData) -> GroupData:
    r = g.r
    z = lambda k: Cyclotomic.zeta(r, k)
    irreps = tuple(Irrep(f"rho{j}", 1, tuple(z(j * k) for k in range(r))) for j in range(r))
    summands = tuple(
        (name, tuple(z(a * k) for k in range(r))) for name, a in zip(variable_names(len(g.weights)), g.weights)
    )
    natural = tuple(sum((s[1][k] for s in summands), Cyclotomic.rational(0)) for k in range(r))
    return replace(
        g,
        class_names=tuple(f"g^{k}" for k in range(r)),
        class_sizes=(1,) * r,
        irreps=irreps,
        natural=natural,
        summands=summands,
    )


def _bd_table(g: GroupData) -> GroupData:
    n = g.n
    z = lambda k: Cyclotomic.zeta(2 * n, k)
    i = Cyclotomic.zeta(4, 1)
    names = ["1", "-1"] + [f"psi^{k}" for k in range(1, n)] + ["tau", "psi*tau"]
    sizes = [1, 1] + [2] * (n - 1) + [n, n]
    one = Cyclotomic.rational(1)

    def linear(s: int, t: Cyclotomic) -> tuple[Cyclotomic, ...]:
        vals = [one, Cyclotomic.rational(s**n)]
        vals += [Cyclotomic.rational(s**k) for k in range(1, n)]
        vals += [t, t.scale(s)]
        return tuple(vals)

    t0 = one if n % 2 == 0 else i
    irreps = [
        Irrep("rho0", 1, linear(1, one)),
        Irrep("rho1", 1, linear(1, -one)),
        Irrep("rho2", 1, linear(-1, t0)),
        Irrep("rho3", 1, linear(-1, -t0)),
    ]
    for j in range(1, n):
        vals = [Cyclotomic.rational(2), Cyclotomic.rational(2 * (-1) ** j)]
        vals += [z(j * k) + z(-j * k) for k in range(1, n)]
        vals += [Cyclotomic.rational(0), Cyclotomic.rational(0)]
        irreps.append(Irrep(f"sigma{j}", 2, tuple(vals)))
    natural = irreps[4].values if n > 1 else _bd_natural_n1()
    return replace(g, class_names=tuple(names), class_sizes=tuple(sizes), irreps=tuple(irreps), natural=natural)


def _bd_natural_n1() -> tuple[Cyclotomic, ...]:
    # BD4 is cyclic of order 4 generated by tau; V = diag-free 2x2 with trace 0 on tau
    return (Cyclotomic.rational(2), Cyclotomic.rational(-2), Cyclotomic.rational(0), Cyclotomic.rational(0))


def inner_product(g: GroupData, chi: Sequence[Cyclotomic], psi: Sequence[Cyclotomic]) -> Cyclotomic:
    total = Cyclotomic.rational(0)
    for size, a, b in zip(g.class_sizes, chi, psi):
        total = total + (a * b.conj()).scale(size)
    return total.scale(Fraction(1, g.order))


def gram_matrix(g: GroupData) -> list[list[Cyclotomic]]:
    return [[inner_product(g, a.values, b.values) for b in g.irreps] for a in g.irreps]


def _count(g: GroupData, chi_conj: Sequence[Cyclotomic], psi: Sequence[Cyclotomic]) -> int:
    total = Cyclotomic.dot(chi_conj, psi, g.class_sizes)
    val = total.scale(Fraction(1, g.order))
    if not val.is_rational():
        raise GroupError(f"non-rational inner product {val}: corrupted character table")
    q = val.to_rational()
    if q.denominator != 1 or q < 0:
        raise GroupError(f"inner product {q} is not a nonnegative integer: corrupted character table")
    return int(q)


@dataclass(frozen=True)
class McKayQuiver:
    quiver: Quiver
    dims: Mapping[str, int]
    star: str

    def multigraph(self, relabel: Mapping[str, str] | None = None) -> Counter:
        rl = relabel or {}
        return Counter((rl.get(a.tail, a.tail), rl.get(a.head, a.head), a.label) for a in self.quiver.arrows)

    def unlabeled(self) -> Counter:
        return Counter((a.tail, a.head) for a in self.quiver.arrows)

    def to_json(self) -> dict:
        from .jsonio import quiver_to_json

        return quiver_to_json(self.quiver, (), {"dims": dict(self.dims), "star": self.star})


def _arrows_from_counts(counts: Sequence[tuple[str, str, str | None, int]]) -> tuple[Arrow, ...]:
    arrows = []
    used: Counter = Counter()
    for tail, head, label, k in counts:
        for _ in range(k):
            base = f"{label}_{tail}_{head}" if label else f"{tail}_{head}"
            used[base] += 1
            name = base if used[base] == 1 else f"{base}_{used[base]}"
            arrows.append(Arrow(name, tail, head, label))
    return tuple(arrows)


def mckay_quiver(g: GroupData) -> McKayQuiver:
    """Arrows rho1 -> rho2 counted by the multiplicity of rho1 in rho2 (x) V.

    For diagonal cyclic groups V splits into lines, and each arrow is
    labelled by the variable of the line it comes from.
    """
    if not g.has_table:
        g = character_table(g)
    verts = tuple(x.name for x in g.irreps)
    # conjugates are taken once; the pairing below equals inner_product(g, r1, prod)
    # because the result is a real integer
    conj = {x.name: tuple(v.conj() for v in x.values) for x in g.irreps}
    found: dict[tuple[str, str, str | None], int] = {}
    for r2 in g.irreps:
        parts = g.summands or ((None, g.natural),)
        for label, chi_v in parts:
            prod = tuple(a * b for a, b in zip(r2.values, chi_v))
            for r1 in g.irreps:
                found[(r1.name, r2.name, label)] = _count(g, conj[r1.name], prod)
    labels = [s[0] for s in g.summands] or [None]
    counts = [(a.name, b.name, lab, found[(a.name, b.name, lab)]) for a in g.irreps for b in g.irreps for lab in labels]
    q = Quiver(verts, _arrows_from_counts(counts))
    return McKayQuiver(q, {x.name: x.dim for x in g.irreps}, g.irreps[0].name)


def mckay_to_dual_graph(m: McKayQuiver) -> DualGraph:
    """Delete the star and merge opposite arrows into undirected edges."""
    q = m.quiver
    nodes = [v for v in q.vertices if v != m.star]
    count: Counter = Counter()
    for a in q.arrows:
        if m.star in (a.tail, a.head):
            continue
        if a.tail == a.head:
            raise GroupError(f"loop {a.name!r} at {a.tail!r}: not a doubled graph")
        count[(a.tail, a.head)] += 1
    edges = []
    for (u, v), k in sorted(count.items()):
        if count.get((v, u), 0) != k:
            raise GroupError(f"unpaired arrows between {u!r} and {v!r}")
        if k > 1:
            raise GroupError(f"{k} arrow pairs between {u!r} and {v!r}: the merged graph is not simple")
        if nodes.index(u) < nodes.index(v):
            edges.append((u, v))
    return DualGraph(tuple(nodes), tuple(edges))


def _extension_vertex(g: DualGraph, t: ADEType) -> list[str]:
    """Nodes joined to the new vertex of the extended Dynkin diagram."""
    if t.family == "A":
        if t.rank == 1:
            return [g.nodes[0], g.nodes[0]]
        ends = [v for v in g.nodes if g.degree(v) == 1]
        return sorted(ends, key=g.nodes.index)
    from .graphs import _arms

    centre = next(v for v in g.nodes if g.degree(v) == 3)
    arms = sorted(_arms(g, centre), key=len)
    lengths = [len(a) for a in arms]
    if t.family == "D":
        if t.rank == 4:
            return [centre]
        return [arms[2][-2]]
    # E6 (1,2,2) -> extend the short arm; E7 (1,2,3) -> the middle arm;
    # E8 (1,2,4) -> the long arm
    target = {6: 0, 7: 1, 8: 2}[t.rank]
    assert lengths[0] == 1
    return [arms[target][-1]]


def _null_root(nodes: Sequence[str], edges: Sequence[tuple[str, str]], star: str) -> dict[str, int]:
    idx = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    cartan = [[Fraction(2 if i == j else 0) for j in range(n)] for i in range(n)]
    for u, v in edges:
        cartan[idx[u]][idx[v]] -= 1
        cartan[idx[v]][idx[u]] -= 1
    # solve cartan * d = 0 with d[star] = 1
    s = idx[star]
    rows = [row[:s] + row[s + 1 :] + [-row[s]] for row in cartan]
    m = n - 1
    piv_cols = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    sol = [Fraction(0)] * m
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][m]
    vals = sol[:s] + [Fraction(1)] + sol[s:]
    return {v: int(x) for v, x in zip(nodes, vals)}


def dual_graph_to_mckay(d: DualGraph, star: str = "star") -> McKayQuiver:
    """Add the extending vertex of the affine Dynkin diagram, then double.

    Vertex dimensions are the coefficients of the null root (1 at the star).
    """
    t = classify_ade(d)
    if t is None:
        raise GroupError("dual graph is not of ADE type")
    if star in d.nodes:
        raise GroupError(f"node name {star!r} is reserved for the extending vertex")
    attach = _extension_vertex(d, t)
    edges = list(d.edges) + [(star, v) for v in attach]
    nodes = (star,) + d.nodes
    dims = _null_root(nodes, edges, star)
    counts = []
    for u, v in edges:
        counts.append((u, v, None, 1))
        counts.append((v, u, None, 1))
    merged: Counter = Counter()
    for u, v, _, k in counts:
        merged[(u, v)] += k
    order = {v: i for i, v in enumerate(nodes)}
    flat = [(u, v, None, k) for (u, v), k in sorted(merged.items(), key=lambda e: (order[e[0][0]], order[e[0][1]]))]
    return McKayQuiver(Quiver(nodes, _arrows_from_counts(flat)), dims, star)


def mckay_dot(m: McKayQuiver) -> str:
    from .quiver import quiver_to_dot

    labels = {v: f"{v} ({m.dims[v]})" + (" *" if v == m.star else "") for v in m.quiver.vertices}
    return quiver_to_dot(m.quiver, "McKay", labels)
