"""Moduli of representations with dimension vector (1,...,1).

Relations are made commutative, the invariant ring of the base-change torus
is generated by cycles (a Hilbert basis of the vertex-balanced arrow
multisets), and the stable locus for a star parameter is covered by charts
indexed by spanning arborescences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .graphs import DualGraph
from .monoids import CongruenceClosure, LatticeMonoid, Vector, find_relations, hilbert_basis
from .quiver import Quiver, Relation
from .rep import Representation
from .scalars import Monomial
from .stability import Stability, classify, costar_criterion, star_criterion, star_form, star_parameter


class ModuliError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Commutative relations


@dataclass(frozen=True)
class BinomialRelationSet:
    quiver: Quiver
    pairs: tuple[tuple[Monomial, Monomial], ...]
    sources: tuple[str, ...] = ()
    dropped: tuple[str, ...] = ()

    def vectors(self) -> list[tuple[Vector, Vector]]:
        names = self.quiver.arrow_names
        return [(tuple(a[n] for n in names), tuple(b[n] for n in names)) for a, b in self.pairs]

    def satisfied_by(self, values: Mapping[str, Monomial]) -> bool:
        return all(a.substitute(values) == b.substitute(values) for a, b in self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


def _path_monomial(arrows: Sequence[str]) -> Monomial:
    out: dict[str, int] = {}
    for a in arrows:
        out[a] = out.get(a, 0) + 1
    return Monomial.of(out)


def commutativize(q: Quiver, rels: Sequence[Relation]) -> BinomialRelationSet:
    """Turn each relation p - q into the monomial pair (p, q).

    Pairs whose two monomials agree hold identically and are dropped, as are
    repeats.  Anything other than a difference of two paths is rejected.
    """
    pairs: list[tuple[Monomial, Monomial]] = []
    sources: list[str] = []
    dropped: list[str] = []
    seen: set[frozenset] = set()
    for r in rels:
        terms = list(r.element.terms.items())
        if len(terms) != 2 or terms[0][1] != -terms[1][1]:
            raise ModuliError(f"relation {r} is not a difference of two paths (unsupported form)")
        (p1, c1), (p2, _) = terms
        if p1.is_trivial or p2.is_trivial:
            raise ModuliError(f"relation {r} involves a trivial path (unsupported form)")
        if c1 < 0:
            p1, p2 = p2, p1
        m1, m2 = _path_monomial(p1.arrows), _path_monomial(p2.arrows)
        if m1 == m2:
            dropped.append(str(r))
            continue
        key = frozenset((m1, m2))
        if key in seen:
            dropped.append(str(r))
            continue
        seen.add(key)
        pairs.append((m1, m2))
        sources.append(str(r))
    return BinomialRelationSet(q, tuple(pairs), tuple(sources), tuple(dropped))


def relation_rank(brs: BinomialRelationSet) -> int:
    """Rank over Q of the exponent-difference vectors of the pairs."""
    rows = [[Fraction(x - y) for x, y in zip(a, b)] for a, b in brs.vectors()]
    return _rank(rows)


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# Invariants


@dataclass(frozen=True)
class InvariantGenerator:
    name: str
    cycle: Monomial
    members: tuple[Monomial, ...] = ()


@dataclass(frozen=True)
class GeneratorRelation:
    lhs: Mapping[str, int]
    rhs: Mapping[str, int]

    def __str__(self) -> str:
        return f"{_product_str(self.lhs)} = {_product_str(self.rhs)}"


def _product_str(exps: Mapping[str, int]) -> str:
    parts = []
    for name, e in exps.items():
        if e == 0:
            continue
        base = name if "*" not in name else f"({name})"
        parts.append(base if e == 1 else f"{base}^{e}")
    return " * ".join(parts) if parts else "1"


@dataclass(frozen=True)
class InvariantRing:
    generators: tuple[InvariantGenerator, ...]
    relations: tuple[GeneratorRelation, ...]
    hilbert_basis: tuple[Monomial, ...]
    certified_degree: int
    relation_degree: int


def incidence_monoid(q: Quiver) -> LatticeMonoid:
    rows = []
    for v in q.vertices:
        rows.append(tuple((a.head == v) - (a.tail == v) for a in q.arrows))
    return LatticeMonoid(tuple(rows), len(q.arrows))


def invariant_generators(q: Quiver, brs: BinomialRelationSet, bound: int | None = None) -> InvariantRing:
    """Generators of the invariant ring and the relations among them.

    Cycle generators that become equal modulo the relations are merged into
    one class; classes that are products of other generators are dropped.
    Relations are searched among products up to twice the largest
    generator degree.
    """
    if len(q.arrows) > 12:
        raise ModuliError("invariant computation is limited to quivers with at most 12 arrows")
    names = q.arrow_names
    hb = hilbert_basis(incidence_monoid(q), bound)
    cong = CongruenceClosure(brs.vectors())
    basis = list(hb.generators)

    classes: dict[Vector, list[Vector]] = {}
    for g in basis:
        classes.setdefault(cong.key(g), []).append(g)

    def decomposable(m: Vector) -> bool:
        return any(h != m and all(x >= y for x, y in zip(m, h)) for h in basis)

    kept = []
    for k, members in classes.items():
        if any(decomposable(m) for m in cong.closure(k)):
            continue
        kept.append(sorted(members, key=lambda v: (sum(v), str(_vec_mono(names, v)))))
    kept.sort(key=lambda ms: (sum(ms[0]), str(_vec_mono(names, ms[0]))))

    gens = []
    for members in kept:
        monos = tuple(_vec_mono(names, v) for v in members)
        gens.append(InvariantGenerator("=".join(str(m) for m in monos), monos[0], monos))

    reps = [tuple(m[n] for n in names) for m in (g.cycle for g in gens)]
    rel_degree = 2 * max((sum(v) for v in reps), default=0)
    rels = []
    if reps:
        for lhs, rhs in find_relations(reps, rel_degree, cong.key):
            rels.append(
                GeneratorRelation(
                    {g.name: e for g, e in zip(gens, lhs) if e},
                    {g.name: e for g, e in zip(gens, rhs) if e},
                )
            )
    return InvariantRing(
        tuple(gens),
        tuple(rels),
        tuple(_vec_mono(names, v) for v in basis),
        hb.certified_degree,
        rel_degree,
    )


def _vec_mono(names: Sequence[str], v: Sequence[int]) -> Monomial:
    return Monomial.of({n: e for n, e in zip(names, v) if e})


# ---------------------------------------------------------------------------
# Charts


@dataclass(frozen=True)
class Chart:
    tree: tuple[str, ...]
    free_coords: tuple[str, ...]
    expressions: Mapping[str, Monomial]
    star: str
    orientation: str = "out"
    status: str = "ok"
    reason: str = ""
    label: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def expression(self, arrow: str) -> Monomial:
        return self.expressions[arrow]


def arborescences(q: Quiver, star: str, orientation: str = "out") -> list[tuple[str, ...]]:
    """Spanning trees directed away from (``out``) or towards (``in``) ``star``."""
    if star not in q.vertices:
        raise ModuliError(f"unknown star vertex {star!r}")
    if orientation not in ("out", "in"):
        raise ModuliError("orientation must be 'out' or 'in'")
    others = [v for v in q.vertices if v != star]
    choices = []
    for v in others:
        if orientation == "out":
            opts = [a.name for a in q.arrows if a.head == v and a.tail != v]
        else:
            opts = [a.name for a in q.arrows if a.tail == v and a.head != v]
        choices.append(opts)
    order = {n: i for i, n in enumerate(q.arrow_names)}
    out = []
    for combo in itertools.product(*choices):
        parent = {}
        for v, n in zip(others, combo):
            a = q.arrow(n)
            parent[v] = a.tail if orientation == "out" else a.head
        if all(_reaches_root(parent, v, star) for v in others):
            out.append(tuple(sorted(combo, key=order.__getitem__)))
    return sorted(out, key=lambda t: [order[n] for n in t])


def _reaches_root(parent: Mapping[str, str], v: str, root: str) -> bool:
    seen = set()
    while v != root:
        if v in seen:
            return False
        seen.add(v)
        v = parent[v]
    return True


def _solve_chart(q: Quiver, brs: BinomialRelationSet, tree: tuple[str, ...], star: str, orientation: str, expected_free: int) -> Chart:
    values: dict[str, Monomial] = {n: Monomial.one() for n in tree}
    pending = list(brs.pairs)

    def current(m: Monomial) -> Monomial:
        return m.substitute(values)

    progress = True
    while progress:
        progress = False
        remaining = []
        for lhs, rhs in pending:
            a, b = current(lhs), current(rhs)
            if a == b:
                continue
            remaining.append((lhs, rhs))
        pending = remaining
        for lhs, rhs in pending:
            a, b = current(lhs), current(rhs)
            solved = False
            for x, y in ((a, b), (b, a)):
                if len(x.exps) == 1 and x.exps[0][1] == 1:
                    var = x.exps[0][0]
                    if y[var] == 0:
                        values[var] = y
                        for k in list(values):
                            values[k] = values[k].substitute({var: y})
                        solved = True
                        break
            if solved:
                progress = True
                break

    free = tuple(n for n in q.arrow_names if n not in values)
    expressions = {n: (values[n] if n in values else Monomial.var(n)) for n in q.arrow_names}
    status, reason = "ok", ""
    if pending:
        status = "unresolved"
        reason = "no relation can be solved for a single arrow: " + "; ".join(
            f"{current(a)} = {current(b)}" for a, b in pending
        )
    elif any(m.is_laurent for m in expressions.values()):
        status, reason = "unresolved", "an arrow expression has a negative exponent"
    elif len(free) != expected_free:
        status = "unresolved"
        reason = f"expected {expected_free} free coordinates, found {len(free)}"
    return Chart(tree, free, expressions, star, orientation, status, reason)


def enumerate_charts(q: Quiver, brs: BinomialRelationSet, star: str, orientation: str = "out") -> list[Chart]:
    """Charts of the stable locus for theta = (-n,1,..,1) at ``star``
    (``orientation="out"``) or (n,-1,..,-1) (``orientation="in"``).

    One chart per arborescence; charts contained in another one (all of the
    other's tree arrows are identically 1 here) are pruned.  Charts that
    cannot be solved are returned with status "unresolved".
    """
    expected = len(q.arrows) - relation_rank(brs) - (len(q.vertices) - 1)
    charts = [_solve_chart(q, brs, t, star, orientation, expected) for t in arborescences(q, star, orientation)]
    kept = []
    for i, c in enumerate(charts):
        redundant = False
        if c.ok:
            for j, d in enumerate(charts):
                if i == j or not d.ok:
                    continue
                inside = all(c.expressions[n].is_one for n in d.tree)
                back = all(d.expressions[n].is_one for n in c.tree)
                if inside and (not back or j < i):
                    redundant = True
                    break
        if not redundant:
            kept.append(c)
    return [
        Chart(c.tree, c.free_coords, c.expressions, c.star, c.orientation, c.status, c.reason, f"U{k + 1}")
        for k, c in enumerate(kept)
    ]


def charts_for_theta(q: Quiver, brs: BinomialRelationSet, theta: Mapping[str, int]) -> list[Chart]:
    form = star_form({v: theta[v] for v in q.vertices})
    if form is None:
        raise ModuliError("charts are only computed for theta of the form (-n,1,..,1) or (n,-1,..,-1)")
    return enumerate_charts(q, brs, form[0], form[1])


def chart_theta(q: Quiver, c: Chart) -> dict[str, int]:
    return star_parameter(q.vertices, c.star, 1 if c.orientation == "out" else -1)


def generic_representation(q: Quiver, c: Chart) -> Representation:
    """Chart point with the free coordinates set to distinct primes."""
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    point = {n: Fraction(p) for n, p in zip(c.free_coords, primes)}
    vals = {}
    for n in q.arrow_names:
        m = c.expressions[n]
        v = Fraction(1)
        for var, e in m.exps:
            v *= point[var] ** e
        vals[n] = v
    return Representation.scalar(q, vals)


def chart_is_stable(q: Quiver, c: Chart) -> bool:
    rep = generic_representation(q, c)
    crit = star_criterion if c.orientation == "out" else costar_criterion
    return crit(rep, c.star) and classify(rep, chart_theta(q, c)) is Stability.STABLE


# ---------------------------------------------------------------------------
# Transitions and base maps


@dataclass(frozen=True)
class Transition:
    source: str
    target: str
    mapping: Mapping[str, Monomial]
    nonzero: tuple[str, ...]
    overlap: bool = True

    def apply(self, point_map: Mapping[str, Monomial]) -> dict[str, Monomial]:
        """Compose with a map expressing the source coordinates."""
        return {k: v.substitute(point_map) for k, v in self.mapping.items()}


def _tree_potential(q: Quiver, c: Chart, values: Mapping[str, Monomial]) -> dict[str, Monomial]:
    """Product of tree arrows from the star to v (out) or from v to the star (in)."""
    pot = {c.star: Monomial.one()}
    tree = [q.arrow(n) for n in c.tree]
    while len(pot) < len(q.vertices):
        grew = False
        for a in tree:
            if c.orientation == "out" and a.tail in pot and a.head not in pot:
                pot[a.head] = pot[a.tail] * values[a.name]
                grew = True
            elif c.orientation == "in" and a.head in pot and a.tail not in pot:
                pot[a.tail] = values[a.name] * pot[a.head]
                grew = True
        if not grew:
            raise ModuliError("chart tree does not span the quiver")
    return pot


def transition(q: Quiver, c1: Chart, c2: Chart) -> Transition:
    """Coordinates of ``c2`` as Laurent monomials in the coordinates of ``c1``.

    Uses the torus-invariant normal form of each arrow relative to c2's tree.
    The overlap is where c2's tree arrows are nonzero, recorded as the c1
    coordinates that must not vanish.
    """
    if not (c1.ok and c2.ok):
        raise ModuliError("transitions need resolved charts")
    if (c1.star, c1.orientation) != (c2.star, c2.orientation):
        raise ModuliError("charts come from different stability parameters")
    vals = c1.expressions
    pot = _tree_potential(q, c2, vals)
    mapping = {}
    for n in c2.free_coords:
        a = q.arrow(n)
        if c2.orientation == "out":
            mapping[n] = vals[n] * pot[a.tail] / pot[a.head]
        else:
            mapping[n] = vals[n] * pot[a.head] / pot[a.tail]
    nonzero = set()
    for n in c2.tree:
        nonzero.update(vals[n].variables)
    nz = tuple(v for v in c1.free_coords if v in nonzero)
    return Transition(c1.label, c2.label, mapping, nz, True)


def base_map(c: Chart, gens: Sequence[InvariantGenerator]) -> list[Monomial]:
    return [g.cycle.substitute(c.expressions) for g in gens]


# ---------------------------------------------------------------------------
# Exceptional curves of surface charts


def exceptional_dual_graph(q: Quiver, charts: Sequence[Chart], base_maps: Sequence[Sequence[Monomial]]) -> DualGraph:
    """Dual graph of the fibre over the origin, glued from coordinate axes.

    In a chart with coordinates (x, y) the line {x=0} lies over the origin
    when x divides every base monomial.  Lines are identified across charts
    when a transition is defined at the generic point of the line and sends
    it onto a line of the other chart; nodes meeting at a chart origin are
    adjacent.
    """
    if any(len(c.free_coords) != 2 or not c.ok for c in charts):
        raise ModuliError("the dual graph is only computed for resolved charts with two coordinates")
    axes = []
    for i, (c, bm) in enumerate(zip(charts, base_maps)):
        for x in c.free_coords:
            if all(m[x] > 0 for m in bm):
                axes.append((i, x))
    parent = {ax: ax for ax in axes}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    axis_set = set(axes)
    for (i, x) in axes:
        for j, d in enumerate(charts):
            if j == i:
                continue
            t = transition(q, charts[i], d)
            if x in t.nonzero or any(m[x] < 0 for m in t.mapping.values()):
                continue
            vanishing = [y for y, m in t.mapping.items() if m[x] > 0]
            if len(vanishing) == 1 and (j, vanishing[0]) in axis_set:
                ra, rb = find((i, x)), find((j, vanishing[0]))
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)

    groups: dict = {}
    for ax in axes:
        groups.setdefault(find(ax), []).append(ax)
    ordered = sorted(groups.values(), key=lambda g: min(g))
    names = {}
    members = {}
    for k, g in enumerate(ordered):
        node = f"E{k + 1}"
        members[node] = tuple(f"{charts[i].label or i}:{x}=0" for i, x in sorted(g))
        for ax in g:
            names[ax] = node
    edges = set()
    for i, c in enumerate(charts):
        here = [names[(i, x)] for x in c.free_coords if (i, x) in names]
        if len(here) == 2 and here[0] != here[1]:
            edges.add(tuple(sorted(here)))
    return DualGraph(tuple(members), tuple(sorted(edges)), members)


# ---------------------------------------------------------------------------
# Reporting


@dataclass
class ModuliReport:
    relations: BinomialRelationSet
    invariants: InvariantRing | None = None
    charts: list[Chart] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
