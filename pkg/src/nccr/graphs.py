"""Simple undirected graphs used as dual graphs, plus ADE recognition."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping


@dataclass(frozen=True)
class DualGraph:
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    members: Mapping[str, tuple[str, ...]] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        nodes = tuple(self.nodes)
        if len(set(nodes)) != len(nodes):
            raise ValueError("duplicate node in dual graph")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError("dual graphs have no loops")
            if u not in nodes or v not in nodes:
                raise ValueError(f"edge ({u}, {v}) uses an unknown node")
            e = tuple(sorted((u, v), key=nodes.index))
            if e in norm:
                raise ValueError(f"repeated edge ({u}, {v}); dual graphs are simple")
            norm.add(e)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", tuple(sorted(norm, key=lambda e: (nodes.index(e[0]), nodes.index(e[1])))))

    @staticmethod
    def build(nodes: Iterable[str], edges: Iterable[tuple[str, str]]) -> "DualGraph":
        return DualGraph(tuple(nodes), tuple(edges))

    def neighbours(self, v: str) -> list[str]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return out

    def degree(self, v: str) -> int:
        return len(self.neighbours(v))

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        seen = {self.nodes[0]}
        stack = [self.nodes[0]]
        while stack:
            for w in self.neighbours(stack.pop()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.nodes)

    def to_json(self) -> dict:
        out = {"nodes": list(self.nodes), "edges": [list(e) for e in self.edges]}
        if self.members:
            out["members"] = {k: list(v) for k, v in self.members.items()}
        return out

    def to_dot(self, name: str = "G") -> str:
        lines = [f'graph "{name}" {{']
        for v in self.nodes:
            lines.append(f'  "{v}";')
        for a, b in self.edges:
            lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ADEType:
    family: str
    rank: int

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


NOT_ADE = None


def path_graph(n: int, prefix: str = "v") -> DualGraph:
    nodes = [f"{prefix}{i}" for i in range(1, n + 1)]
    return DualGraph.build(nodes, zip(nodes, nodes[1:]))


def d_graph(n: int, prefix: str = "v") -> DualGraph:
    """D_n: a path v1..v_{n-1} with an extra leaf v_n on v_{n-2}."""
    if n < 4:
        raise ValueError("D_n needs n >= 4")
    nodes = [f"{prefix}{i}" for i in range(1, n + 1)]
    edges = list(zip(nodes[: n - 1], nodes[1 : n - 1]))
    edges.append((nodes[n - 3], nodes[n - 1]))
    return DualGraph.build(nodes, edges)


def e_graph(n: int, prefix: str = "v") -> DualGraph:
    """E_n: arms of length 1, 2 and n-4 from a centre."""
    if n not in (6, 7, 8):
        raise ValueError("E_n needs n in 6, 7, 8")
    return _star_with_arms((1, 2, n - 4), prefix)


def _star_with_arms(arms: tuple[int, ...], prefix: str) -> DualGraph:
    nodes = [f"{prefix}1"]
    edges = []
    k = 2
    for length in arms:
        prev = nodes[0]
        for _ in range(length):
            v = f"{prefix}{k}"
            k += 1
            nodes.append(v)
            edges.append((prev, v))
            prev = v
    return DualGraph.build(nodes, edges)


def _arms(g: DualGraph, centre: str) -> list[list[str]]:
    arms = []
    for start in g.neighbours(centre):
        arm = [start]
        prev, cur = centre, start
        while True:
            nxt = [w for w in g.neighbours(cur) if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            arm.append(cur)
        arms.append(arm)
    return arms


def classify_ade(g: DualGraph) -> ADEType | None:
    """ADE type of a connected simple graph, or None when it is not Dynkin."""
    n = len(g.nodes)
    if n == 0 or not g.is_connected() or len(g.edges) != n - 1:
        return NOT_ADE
    degs = [g.degree(v) for v in g.nodes]
    if max(degs, default=0) <= 2:
        return ADEType("A", n)
    branch = [v for v in g.nodes if g.degree(v) >= 3]
    if len(branch) != 1 or g.degree(branch[0]) != 3:
        return NOT_ADE
    lengths = sorted(len(a) for a in _arms(g, branch[0]))
    if lengths[0] == 1 and lengths[1] == 1:
        return ADEType("D", n)
    if lengths[0] == 1 and lengths[1] == 2 and lengths[2] in (2, 3, 4):
        return ADEType("E", n)
    return NOT_ADE
