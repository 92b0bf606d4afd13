"""JSON formats shared by the command line and the fixtures.

Every file carries ``"schema_version": 1``; a missing field is read as 1 and
any other value is rejected.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Any, Mapping, Sequence

from .quiver import AlgebraElement, Arrow, Quiver, Relation
from .scalars import format_rational, parse_rational

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    """Malformed input; the message starts with the JSON path of the problem."""

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = path


def check_version(data: Any, path: str = "$") -> None:
    if not isinstance(data, Mapping):
        raise SchemaError(path, "expected an object")
    v = data.get("schema_version", SCHEMA_VERSION)
    if v != SCHEMA_VERSION:
        raise SchemaError(f"{path}.schema_version", f"unsupported schema version {v!r} (expected {SCHEMA_VERSION})")


def _expect(cond: bool, path: str, msg: str) -> None:
    if not cond:
        raise SchemaError(path, msg)


def quiver_from_json(data: Any) -> tuple[Quiver, list[Relation]]:
    check_version(data)
    _expect("vertices" in data, "$", "missing 'vertices'")
    verts = data["vertices"]
    _expect(isinstance(verts, list) and all(isinstance(v, (str, int)) for v in verts), "$.vertices", "expected a list of vertex ids")
    arrows_raw = data.get("arrows", [])
    _expect(isinstance(arrows_raw, list), "$.arrows", "expected a list")
    arrows = []
    for i, a in enumerate(arrows_raw):
        p = f"$.arrows[{i}]"
        _expect(isinstance(a, Mapping), p, "expected an object")
        for key in ("name", "tail", "head"):
            _expect(key in a, p, f"missing '{key}'")
        label = a.get("label")
        arrows.append(Arrow(str(a["name"]), str(a["tail"]), str(a["head"]), None if label is None else str(label)))
    try:
        q = Quiver(tuple(str(v) for v in verts), tuple(arrows))
    except ValueError as exc:
        raise SchemaError("$", str(exc)) from None
    rels = []
    rels_raw = data.get("relations", [])
    _expect(isinstance(rels_raw, list), "$.relations", "expected a list")
    for i, r in enumerate(rels_raw):
        p = f"$.relations[{i}]"
        _expect(isinstance(r, list) and r, p, "expected a nonempty list of terms")
        terms = {}
        for j, t in enumerate(r):
            tp = f"{p}[{j}]"
            _expect(isinstance(t, Mapping) and "path" in t, tp, "expected an object with 'path'")
            try:
                c = parse_rational(t.get("coeff", "1"))
            except ValueError as exc:
                raise SchemaError(f"{tp}.coeff", str(exc)) from None
            path = t["path"]
            _expect(isinstance(path, list), f"{tp}.path", "expected a list of arrow names")
            try:
                if path:
                    pth = q.path([str(x) for x in path])
                else:
                    _expect("vertex" in t, tp, "trivial paths need a 'vertex'")
                    pth = q.trivial(str(t["vertex"]))
            except ValueError as exc:
                raise SchemaError(f"{tp}.path", str(exc)) from None
            terms[pth] = terms.get(pth, Fraction(0)) + c
        try:
            rels.append(Relation(AlgebraElement(q, terms), _relation_name(r)))
        except ValueError as exc:
            raise SchemaError(p, str(exc)) from None
    return q, rels


def _relation_name(terms: Sequence[Mapping]) -> str:
    parts = []
    for t in terms:
        c = parse_rational(t.get("coeff", "1"))
        body = "*".join(t["path"]) if t["path"] else f"e_{t.get('vertex')}"
        parts.append((c, body))
    if len(parts) == 2 and parts[0][0] == -parts[1][0]:
        a, b = (parts[0][1], parts[1][1]) if parts[0][0] > 0 else (parts[1][1], parts[0][1])
        return f"{a}={b}"
    return " + ".join(f"{format_rational(c)}*{b}" for c, b in parts)


def quiver_to_json(q: Quiver, rels: Sequence[Relation] = (), extra: Mapping | None = None) -> dict:
    out: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "vertices": list(q.vertices)}
    arrows = []
    for a in q.arrows:
        d = {"name": a.name, "tail": a.tail, "head": a.head}
        if a.label is not None:
            d["label"] = a.label
        arrows.append(d)
    out["arrows"] = arrows
    out["relations"] = [
        [
            {"coeff": format_rational(c), "path": list(p.arrows)} if not p.is_trivial else {"coeff": format_rational(c), "path": [], "vertex": p.tail}
            for p, c in sorted(r.element.terms.items(), key=lambda t: (-t[1], t[0].sort_key()))
        ]
        for r in rels
    ]
    if extra:
        out.update(extra)
    return out


def dumps(data: Any) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_fixture(name: str) -> Any:
    """Read one of the bundled example files (``z3``, ``spp`` ...)."""
    text = resources.files("nccr").joinpath("data").joinpath(f"{name}.json").read_text()
    return json.loads(text)


def fixture_quiver(name: str) -> tuple[Quiver, list[Relation]]:
    return quiver_from_json(load_fixture(name))
