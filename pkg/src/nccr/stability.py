"""King stability for representations with 0/1 dimension vectors, the
star-reachability criterion, genericity and chamber enumeration.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.optimize import linprog

from .quiver import Quiver
from .rep import Representation, closed_subsets


class StabilityError(ValueError):
    pass


class Stability(str, Enum):
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly_semistable"
    UNSTABLE = "unstable"


def theta_value(theta: Mapping[str, int], beta: Mapping[str, int]) -> int:
    if set(theta) != set(beta):
        raise StabilityError("theta and beta must use the same vertex set")
    return sum(theta[v] * beta[v] for v in theta)


def _subset_value(theta: Mapping[str, int], s: Iterable[str]) -> int:
    return sum(theta[v] for v in s)


def classify(rep: Representation, theta: Mapping[str, int]) -> Stability:
    q = rep.quiver
    if set(theta) != set(q.vertices):
        raise StabilityError("theta must give a weight for every vertex")
    if any(d > 1 for d in rep.dims.values()):
        raise StabilityError("classification is only supported for 0/1 dimension vectors")
    if theta_value(theta, rep.dims) != 0:
        raise StabilityError("theta(alpha) must vanish")
    support = frozenset(rep.support())
    seen_zero = False
    for s in closed_subsets(rep):
        if not s or s == support:
            continue
        val = _subset_value(theta, s)
        if val < 0:
            return Stability.UNSTABLE
        if val == 0:
            seen_zero = True
    return Stability.STRICTLY_SEMISTABLE if seen_zero else Stability.STABLE


def _reach(q: Quiver, rep: Representation, start: str, forward: bool) -> set[str]:
    edges = [(q.arrow(n).tail, q.arrow(n).head) for n in rep.nonzero_arrows()]
    if not forward:
        edges = [(h, t) for t, h in edges]
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for t, h in edges:
            if t == v and h not in seen:
                seen.add(h)
                stack.append(h)
    return seen


def star_criterion(rep: Representation, star: str) -> bool:
    """Every vertex is reached from ``star`` along arrows with nonzero value."""
    q = rep.quiver
    if star not in q.vertices:
        raise StabilityError(f"unknown star vertex {star!r}")
    return _reach(q, rep, star, True) == set(q.vertices)


def costar_criterion(rep: Representation, star: str) -> bool:
    """Every vertex reaches ``star`` along arrows with nonzero value."""
    q = rep.quiver
    if star not in q.vertices:
        raise StabilityError(f"unknown star vertex {star!r}")
    return _reach(q, rep, star, False) == set(q.vertices)


def star_parameter(vertices: Sequence[str], star: str, sign: int = 1) -> dict[str, int]:
    """theta = (-n, 1, ..., 1) at ``star`` (sign=1) or its negative (sign=-1)."""
    n = len(vertices) - 1
    return {v: sign * (-n if v == star else 1) for v in vertices}


def star_form(theta: Mapping[str, int]) -> tuple[str, str] | None:
    """Recognise (star, "out") for (-n,1,..,1) and (star, "in") for (n,-1,..,-1)."""
    verts = list(theta)
    n = len(verts) - 1
    if n == 0:
        return (verts[0], "out")
    for sign, kind in ((1, "out"), (-1, "in")):
        stars = [v for v in verts if theta[v] == -sign * n]
        rest = [v for v in verts if theta[v] == sign]
        if len(stars) == 1 and len(rest) == n:
            return (stars[0], kind)
    return None


def _proper_subsets(vertices: Sequence[str]) -> list[tuple[str, ...]]:
    out = []
    for k in range(1, len(vertices)):
        out.extend(itertools.combinations(vertices, k))
    return out


def is_generic(theta: Mapping[str, int], alpha: Mapping[str, int]) -> bool:
    verts = list(theta)
    if any(alpha.get(v, 0) != 1 for v in verts) or set(alpha) != set(verts):
        raise StabilityError("genericity is only decided for the all-ones dimension vector")
    if theta_value(theta, alpha) != 0:
        raise StabilityError("theta(alpha) must vanish")
    return all(_subset_value(theta, s) != 0 for s in _proper_subsets(verts))


# ---------------------------------------------------------------------------
# Chambers


@dataclass(frozen=True)
class Chamber:
    signs: tuple[tuple[tuple[str, ...], int], ...]
    representative: tuple[tuple[str, int], ...]
    minimal: bool

    @property
    def theta(self) -> dict[str, int]:
        return dict(self.representative)

    def contains(self, theta: Mapping[str, int]) -> bool:
        return all(sgn * _subset_value(theta, s) > 0 for s, sgn in self.signs)


def _walls(vertices: Sequence[str]) -> list[tuple[str, ...]]:
    # theta(S) = -theta(complement) on the hyperplane, so one of each pair
    # suffices: keep the subsets avoiding the first vertex
    return [s for s in _proper_subsets(vertices) if vertices[0] not in s]


def _ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def _feasible_point(rows: np.ndarray, signs: Sequence[int]) -> list[Fraction] | None:
    """Rational point x with sign_i * rows_i . x >= 1, or None."""
    d = rows.shape[1]
    a_ub = -np.array([s * r for s, r in zip(signs, rows)], dtype=float)
    b_ub = -np.ones(len(signs))
    res = linprog(np.zeros(d), A_ub=a_ub, b_ub=b_ub, bounds=[(None, None)] * d, method="highs")
    if res.status != 0:
        return None
    x = [Fraction(v).limit_denominator(10**6) for v in res.x]
    ok = all(s * sum(Fraction(int(c)) * xi for c, xi in zip(r, x)) > 0 for s, r in zip(signs, rows))
    return x if ok else None


def chambers(q: Quiver | Sequence[str], alpha: Mapping[str, int] | None = None) -> list[Chamber]:
    """Regions of {theta : theta(alpha)=0} cut out by all walls theta(S)=0.

    Walls are every proper nonempty vertex subset.  Regions are found by
    adding walls one at a time and splitting regions with a linear
    feasibility test; each region gets the integer point of smallest norm
    found by a box search (``minimal`` records whether the search radius
    certifies minimality).
    """
    vertices = list(q.vertices) if isinstance(q, Quiver) else [str(v) for v in q]
    if alpha is not None and any(alpha.get(v, 0) != 1 for v in vertices):
        raise StabilityError("chambers are only computed for the all-ones dimension vector")
    n = len(vertices)
    if n == 0:
        raise StabilityError("empty vertex set")
    if n > 6:
        raise StabilityError("chamber enumeration is limited to at most 6 vertices")
    if n == 1:
        return [Chamber((), ((vertices[0], 0),), True)]
    walls = _walls(vertices)
    free = vertices[1:]
    # theta(S) for S avoiding vertex 0 is a 0/1 row over the free coordinates
    rows = np.array([[1 if v in s else 0 for v in free] for s in walls], dtype=int)

    regions: list[tuple[list[int], list[Fraction]]] = [([], [Fraction(0)] * (n - 1))]
    for k in range(len(walls)):
        nxt = []
        for signs, pt in regions:
            val = sum(int(c) * x for c, x in zip(rows[k], pt))
            for s in (1, -1):
                if val * s > 0:
                    nxt.append((signs + [s], pt))
                    continue
                p2 = _feasible_point(rows[: k + 1], signs + [s])
                if p2 is not None:
                    nxt.append((signs + [s], p2))
        regions = nxt

    sign_index = {tuple(sg): i for i, (sg, _) in enumerate(regions)}
    best: dict[int, tuple[int, tuple[int, ...]]] = {}
    radius = 2
    while True:
        grid = np.array(list(itertools.product(range(-radius, radius + 1), repeat=n - 1)), dtype=int)
        vals = grid @ rows.T
        good = np.all(vals != 0, axis=1)
        for pt, v in zip(grid[good], vals[good]):
            idx = sign_index[tuple(int(x) for x in np.sign(v))]
            full = (-int(pt.sum()),) + tuple(int(x) for x in pt)
            key = (sum(x * x for x in full), full)
            if idx not in best or key < best[idx]:
                best[idx] = key
        certified = all(i in best and _ceil_sqrt(best[i][0]) <= radius for i in range(len(regions)))
        if certified or radius >= _max_radius(n):
            break
        radius *= 2

    out = []
    for i, (signs, pt) in enumerate(regions):
        if i in best:
            rep = best[i][1]
            minimal = _ceil_sqrt(best[i][0]) <= radius
        else:
            den = math.lcm(*(x.denominator for x in pt))
            ints = [int(x * den) for x in pt]
            g = math.gcd(*ints) or 1
            ints = [x // g for x in ints]
            rep = (-sum(ints),) + tuple(ints)
            minimal = False
        out.append(
            Chamber(
                tuple((s, sg) for s, sg in zip(walls, signs)),
                tuple(zip(vertices, rep)),
                minimal,
            )
        )
    out.sort(key=lambda c: tuple(x for _, x in c.representative))
    return out


def _max_radius(n: int) -> int:
    return {2: 2, 3: 4, 4: 16, 5: 16, 6: 8}.get(n, 4)


def chamber_fan(chs: Sequence[Chamber]) -> dict:
    """Plane picture for three vertices in coordinates (theta_1, theta_2)."""
    if not chs or len(chs[0].representative) != 3:
        raise StabilityError("fan description is only available for three vertices")
    rays = [(1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1)]
    angle = lambda p: math.atan2(p[1], p[0]) % (2 * math.pi)
    rays.sort(key=angle)
    cones = []
    for c in chs:
        t = [x for _, x in c.representative]
        p = (t[1], t[2])
        a = angle(p)
        for i in range(len(rays)):
            lo, hi = angle(rays[i]), angle(rays[(i + 1) % len(rays)])
            inside = lo < a < hi if lo < hi else (a > lo or a < hi)
            if inside:
                cones.append({"representative": list(p), "rays": [list(rays[i]), list(rays[(i + 1) % len(rays)])]})
                break
    return {"coordinates": ["theta_1", "theta_2"], "walls": [list(r) for r in rays], "cones": cones}
