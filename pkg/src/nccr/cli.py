"""Command line interface.

Every command writes canonical JSON (sorted keys, schema_version 1) to
``--out`` or standard output.  Exit status: 0 on success, 1 when the input
is rejected by the mathematics or the schema, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .graphs import classify_ade
from .jsonio import SCHEMA_VERSION, SchemaError, dumps, load_fixture, quiver_from_json, quiver_to_json
from .mckay import GroupError, character_table, dual_graph_to_mckay, mckay_dot, mckay_quiver, mckay_to_dual_graph, parse_group
from .mf import cokernel_presentation, knorrer, mf_from_json, mf_to_json, syzygy, validate
from .moduli import (
    base_map,
    chart_is_stable,
    charts_for_theta,
    commutativize,
    enumerate_charts,
    exceptional_dual_graph,
    invariant_generators,
    transition,
)
from .monoids import IncompleteError
from .quiver import enumerate_paths, quiver_to_dot
from .rep import check_relations, closed_subsets, representation_from_json, subset_order_key
from .skew import SkewRing, demo_products
from .stability import chamber_fan, chambers, classify, costar_criterion, star_criterion, star_form
from .toricend import AbelianAction, endo_quiver, invariant_ring, module_generators

WEIGHT_CONVENTION = (
    "the generator of 1/r(a1,..,an) multiplies x1^e1...xn^en by e^(a1 e1+...+an en); "
    "S_i collects the monomials of weight i mod r"
)


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


# ---------------------------------------------------------------------------
# Input helpers


class Inputs:
    """Records every file read, for the run report digest."""

    def __init__(self) -> None:
        self.digest = hashlib.sha256()
        self.outputs: list[str] = []

    def read_json(self, path: str) -> Any:
        p = Path(path)
        try:
            raw = p.read_bytes()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        self.digest.update(p.name.encode() + b"\0" + raw + b"\0")
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise SchemaError("$", f"invalid JSON in {path}: {exc}") from None


def _load_quiver(args, inputs: Inputs):
    if getattr(args, "fixture", None):
        try:
            data = load_fixture(args.fixture)
        except FileNotFoundError:
            raise UsageError(f"no bundled example named {args.fixture!r}") from None
        inputs.digest.update(f"fixture:{args.fixture}\0".encode())
    elif getattr(args, "quiver", None):
        data = inputs.read_json(args.quiver)
    else:
        raise UsageError("give --quiver FILE or --fixture NAME")
    return quiver_from_json(data)


def _parse_theta(text: str, vertices: Sequence[str]) -> dict[str, int]:
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse theta {text!r}; use comma-separated integers") from None
    if len(vals) != len(vertices):
        raise UsageError(f"theta has {len(vals)} entries but the quiver has {len(vertices)} vertices")
    return dict(zip(vertices, vals))


def _write_text(path: str, text: str, inputs: Inputs) -> None:
    Path(path).write_text(text, encoding="utf-8")
    inputs.outputs.append(path)


def _mono_map(m) -> dict[str, str]:
    return {k: str(v) for k, v in m.items()}


# ---------------------------------------------------------------------------
# Commands


def cmd_quiver(args, inputs: Inputs) -> dict:
    q, rels = _load_quiver(args, inputs)
    out = quiver_to_json(q, rels)
    out["summary"] = {
        "vertices": len(q.vertices),
        "arrows": len(q.arrows),
        "relations": len(rels),
        "acyclic": not q.has_oriented_cycle(),
    }
    if args.max_len is not None:
        if args.max_len < 0:
            raise UsageError("--max-len must be nonnegative")
        paths = enumerate_paths(q, args.max_len)
        out["paths"] = [
            {"tail": p.tail, "head": p.head, "arrows": list(p.arrows)} for p in paths
        ]
    if args.dot:
        _write_text(args.dot, quiver_to_dot(q), inputs)
    return out


def _load_rep(args, inputs: Inputs, q):
    data = inputs.read_json(args.rep)
    if isinstance(data, dict):
        from .jsonio import check_version

        check_version(data)
    try:
        return representation_from_json(q, data)
    except ValueError as exc:
        raise SchemaError("$", str(exc)) from None


def cmd_rep(args, inputs: Inputs) -> dict:
    q, rels = _load_quiver(args, inputs)
    rep = _load_rep(args, inputs, q)
    ok, violated = check_relations(rep, rels)
    subs = [sorted(s, key=q.vertices.index) for s in closed_subsets(rep)]
    return {
        "dims": {v: rep.dims[v] for v in q.vertices},
        "satisfies_relations": ok,
        "violated": [str(r) for r in violated],
        "closed_subsets": subs,
    }


def cmd_stability_classify(args, inputs: Inputs) -> dict:
    q, rels = _load_quiver(args, inputs)
    rep = _load_rep(args, inputs, q)
    theta = _parse_theta(args.theta, q.vertices)
    out = {"theta": [theta[v] for v in q.vertices], "classification": classify(rep, theta).value}
    form = star_form(theta)
    if form is not None and all(rep.dims[v] == 1 for v in q.vertices):
        star, kind = form
        crit = star_criterion if kind == "out" else costar_criterion
        out["star"] = star
        out["star_orientation"] = kind
        out["star_criterion"] = crit(rep, star)
    return out


def cmd_stability_chambers(args, inputs: Inputs) -> dict:
    if args.vertices is not None:
        if args.vertices < 1:
            raise UsageError("--vertices must be positive")
        verts = [str(i) for i in range(args.vertices)]
    else:
        q, _ = _load_quiver(args, inputs)
        verts = list(q.vertices)
    chs = chambers(verts)
    out = {
        "vertices": verts,
        "count": len(chs),
        "chambers": [
            {
                "representative": [x for _, x in c.representative],
                "minimal": c.minimal,
                "signs": {",".join(s): sg for s, sg in c.signs},
            }
            for c in chs
        ],
    }
    if len(verts) == 3:
        out["fan"] = chamber_fan(chs)
    return out


def _theta_star(args, q) -> tuple[str, str]:
    if args.theta:
        form = star_form(_parse_theta(args.theta, q.vertices))
        if form is None:
            raise DomainError("charts are only computed for theta of the form (-n,1,..,1) or (n,-1,..,-1)")
        return form
    star = args.star if args.star is not None else q.vertices[0]
    if star not in q.vertices:
        raise UsageError(f"unknown star vertex {star!r}")
    return star, ("in" if args.costar else "out")


def _chart_json(q, c) -> dict:
    return {
        "label": c.label,
        "tree": list(c.tree),
        "free_coordinates": list(c.free_coords),
        "expressions": _mono_map(c.expressions),
        "status": c.status,
        "reason": c.reason,
        "stable": chart_is_stable(q, c) if c.ok else False,
    }


def _charts(args, inputs):
    q, rels = _load_quiver(args, inputs)
    brs = commutativize(q, rels)
    star, kind = _theta_star(args, q)
    return q, brs, star, kind, enumerate_charts(q, brs, star, kind)


def _theta_list(q, star, kind):
    n = len(q.vertices) - 1
    s = 1 if kind == "out" else -1
    return [s * (-n if v == star else 1) for v in q.vertices]


def cmd_moduli_invariants(args, inputs: Inputs) -> dict:
    q, rels = _load_quiver(args, inputs)
    brs = commutativize(q, rels)
    ring = invariant_generators(q, brs, args.bound)
    zero_div = [str(r) for r in ring.relations if set(r.lhs) & set(r.rhs)]
    notes = []
    if zero_div:
        notes.append(
            "relations with a common factor on both sides exhibit zero divisors: the invariant ring "
            "of the commutative relations is not a domain, so it is not the coordinate ring of the "
            "irreducible singularity"
        )
    return {
        "relations_used": list(brs.sources),
        "relations_dropped": list(brs.dropped),
        "generators": [{"name": g.name, "members": [str(m) for m in g.members]} for g in ring.generators],
        "generator_relations": [str(r) for r in ring.relations],
        "hilbert_basis": [str(m) for m in ring.hilbert_basis],
        "certified_degree": ring.certified_degree,
        "relation_degree": ring.relation_degree,
        "zero_divisor_relations": zero_div,
        "notes": notes,
    }


def cmd_moduli_charts(args, inputs: Inputs) -> dict:
    q, brs, star, kind, charts = _charts(args, inputs)
    return {
        "star": star,
        "orientation": kind,
        "theta": _theta_list(q, star, kind),
        "relation_count": len(brs),
        "charts": [_chart_json(q, c) for c in charts],
    }


def cmd_moduli_transitions(args, inputs: Inputs) -> dict:
    q, brs, star, kind, charts = _charts(args, inputs)
    ok = [c for c in charts if c.ok]
    out = []
    for c1 in ok:
        for c2 in ok:
            if c1.label == c2.label:
                continue
            t = transition(q, c1, c2)
            out.append({"source": t.source, "target": t.target, "mapping": _mono_map(t.mapping), "nonzero": list(t.nonzero)})
    return {"star": star, "orientation": kind, "transitions": out}


def cmd_moduli_dual_graph(args, inputs: Inputs) -> dict:
    q, brs, star, kind, charts = _charts(args, inputs)
    ring = invariant_generators(q, brs, args.bound)
    ok = [c for c in charts if c.ok]
    maps = [base_map(c, ring.generators) for c in ok]
    graph = exceptional_dual_graph(q, ok, maps)
    ade = classify_ade(graph) if graph.nodes else None
    if args.dot:
        _write_text(args.dot, graph.to_dot("dual"), inputs)
    return {
        "star": star,
        "orientation": kind,
        "generators": [g.name for g in ring.generators],
        "base_maps": {c.label: [str(m) for m in bm] for c, bm in zip(ok, maps)},
        "dual_graph": graph.to_json(),
        "ade_type": str(ade) if ade else None,
    }


def cmd_moduli_resolve(args, inputs: Inputs) -> dict:
    q, rels = _load_quiver(args, inputs)
    brs = commutativize(q, rels)
    rows = []
    for ch in chambers(list(q.vertices)):
        theta = dict(ch.representative)
        form = star_form(theta)
        entry: dict[str, Any] = {"theta": [theta[v] for v in q.vertices]}
        if form is None:
            entry["status"] = "skipped: not a star parameter"
        else:
            cs = charts_for_theta(q, brs, theta)
            entry["star"], entry["orientation"] = form
            entry["charts"] = len(cs)
            entry["free_coordinates"] = [len(c.free_coords) for c in cs]
            entry["all_resolved"] = all(c.ok for c in cs)
            entry["all_stable"] = all(c.ok and chart_is_stable(q, c) for c in cs)
        rows.append(entry)
    return {"chambers": rows}


def _group(text: str):
    try:
        return character_table(parse_group(text))
    except GroupError as exc:
        raise UsageError(str(exc)) from None


def cmd_mckay_quiver(args, inputs: Inputs) -> dict:
    g = _group(args.group)
    m = mckay_quiver(g)
    out = m.to_json()
    out["group"] = g.name
    out["special_linear"] = g.is_sl
    out["convention"] = WEIGHT_CONVENTION
    if args.dot:
        _write_text(args.dot, mckay_dot(m), inputs)
    return out


def cmd_mckay_dual_graph(args, inputs: Inputs) -> dict:
    g = _group(args.group)
    m = mckay_quiver(g)
    graph = mckay_to_dual_graph(m)
    ade = classify_ade(graph)
    if args.dot:
        _write_text(args.dot, graph.to_dot("dual"), inputs)
    back = dual_graph_to_mckay(graph, star=m.star) if ade else None
    return {
        "group": g.name,
        "dual_graph": graph.to_json(),
        "ade_type": str(ade) if ade else None,
        "extended_dims": dict(back.dims) if back else None,
    }


def cmd_mckay_characters(args, inputs: Inputs) -> dict:
    g = _group(args.group)
    return {
        "group": g.name,
        "order": g.order,
        "classes": list(g.class_names),
        "class_sizes": list(g.class_sizes),
        "irreducibles": [{"name": x.name, "dim": x.dim, "values": [str(v) for v in x.values]} for x in g.irreps],
        "natural": [str(v) for v in g.natural],
    }


def _action(args) -> AbelianAction:
    try:
        if args.group and args.torus:
            raise UsageError("give either --group or --torus, not both")
        if args.group:
            return AbelianAction.parse_group(args.group)
        if args.torus:
            return AbelianAction.parse_torus(args.torus)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError("give --group or --torus")


def cmd_invariants(args, inputs: Inputs) -> dict:
    act = _action(args)
    ring = invariant_ring(act, args.bound)
    out = ring.to_json()
    out["variables"] = list(act.variables)
    out["convention"] = WEIGHT_CONVENTION
    if args.modules:
        if act.kind != "cyclic":
            raise UsageError("--modules needs a cyclic group")
        out["modules"] = {
            str(i): [str(m) for m in module_generators(act, i, args.bound).generators] for i in range(act.r)
        }
    return out


def cmd_endo_quiver(args, inputs: Inputs) -> dict:
    try:
        act = AbelianAction.parse_group(args.group)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    classes = None
    if args.classes:
        try:
            classes = [int(c) for c in args.classes.split(",")]
        except ValueError:
            raise UsageError(f"cannot parse --classes {args.classes!r}") from None
    e = endo_quiver(act, args.bound, classes)
    out = e.to_json()
    out["group"] = act.name
    out["convention"] = WEIGHT_CONVENTION
    if args.dot:
        _write_text(args.dot, quiver_to_dot(e.quiver, "End"), inputs)
    return out


def cmd_skew_demo(args, inputs: Inputs) -> dict:
    try:
        g = parse_group(args.group)
    except GroupError as exc:
        raise UsageError(str(exc)) from None
    if g.kind != "cyclic":
        raise UsageError("the skew ring demo needs a cyclic group")
    ring = SkewRing(g.r, g.weights, args.truncation)
    return {
        "group": g.name,
        "truncation": ring.truncation,
        "action": "g(m) = z^(-w(m)) m with z = exp(2 pi i / r)",
        "products": [{"left": a, "right": b, "product": c} for a, b, c in demo_products(ring)],
    }


def _load_mf(args, inputs: Inputs):
    return mf_from_json(inputs.read_json(args.inp))


def cmd_mf_validate(args, inputs: Inputs) -> dict:
    mf = _load_mf(args, inputs)
    v = validate(mf)
    out = {"valid": v.valid, "sign": v.sign, "size": mf.size}
    if v.witness:
        w = v.witness
        out["witness"] = {"product": w.product, "row": w.row, "col": w.col, "expected": str(w.expected), "actual": str(w.actual)}
    return out


def cmd_mf_syzygy(args, inputs: Inputs) -> dict:
    return mf_to_json(syzygy(_load_mf(args, inputs)))


def cmd_mf_knorrer(args, inputs: Inputs) -> dict:
    return mf_to_json(knorrer(_load_mf(args, inputs), args.u, args.v))


def cmd_mf_present(args, inputs: Inputs) -> dict:
    return cokernel_presentation(_load_mf(args, inputs))


# ---------------------------------------------------------------------------
# Parser


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit status 2 with a one-line message
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out", help="write the JSON result here instead of standard output")
    p.add_argument("--report", help="write a run report (inputs digest, outputs, timing) here")
    p.add_argument("--seed", type=int, help="accepted for compatibility; all commands are deterministic")
    return p


def _quiver_source(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--quiver", help="quiver JSON file")
    g.add_argument("--fixture", help="bundled example quiver (z3, spp, kronecker, blowup, ...)")


def _star_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--star", help="star vertex for theta = (-n,1,..,1); default: the first vertex")
    p.add_argument("--costar", action="store_true", help="use theta = (n,-1,..,-1) at the star instead")
    p.add_argument("--theta", help="comma-separated theta in vertex order (must be a star parameter); write --theta=-2,1,1 when it starts with a minus sign")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="nccr", description="Quivers, stability, moduli charts, McKay quivers and matrix factorizations.")
    parser.add_argument("--version", action="version", version=f"nccr {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(container, name: str, func: Callable, help_text: str) -> argparse.ArgumentParser:
        p = container.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    p = leaf(sub, "quiver", cmd_quiver, "validate and normalise a quiver file")
    _quiver_source(p)
    p.add_argument("--max-len", type=int, help="also list all paths up to this length")
    p.add_argument("--dot", help="write a Graphviz digraph here")

    p = leaf(sub, "rep", cmd_rep, "check a representation against the quiver relations")
    _quiver_source(p)
    p.add_argument("--rep", required=True, help="representation JSON file")

    st = sub.add_parser("stability", help="King stability").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = leaf(st, "classify", cmd_stability_classify, "classify a representation for a stability parameter")
    _quiver_source(p)
    p.add_argument("--rep", required=True)
    p.add_argument("--theta", required=True, help="comma-separated theta in vertex order; write --theta=-1,1 when it starts with a minus sign")
    p = leaf(st, "chambers", cmd_stability_chambers, "chambers of generic parameters for dimension (1,..,1)")
    p.add_argument("--vertices", type=int, help="number of vertices")
    _quiver_source(p)

    mo = sub.add_parser("moduli", help="moduli of (1,..,1) representations").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = leaf(mo, "invariants", cmd_moduli_invariants, "invariant ring generators and relations")
    _quiver_source(p)
    p.add_argument("--bound", type=int, help="degree bound for the Hilbert basis")
    for name, func, text in (
        ("charts", cmd_moduli_charts, "affine charts of the stable locus"),
        ("transitions", cmd_moduli_transitions, "transition maps between charts"),
        ("dual-graph", cmd_moduli_dual_graph, "base maps and dual graph of the exceptional fibre"),
    ):
        p = leaf(mo, name, func, text)
        _quiver_source(p)
        _star_args(p)
        if name == "dual-graph":
            p.add_argument("--bound", type=int, help="degree bound for the Hilbert basis")
            p.add_argument("--dot", help="write a Graphviz graph here")
    p = leaf(mo, "resolve", cmd_moduli_resolve, "charts for a representative of every chamber")
    _quiver_source(p)

    mk = sub.add_parser("mckay", help="McKay quivers").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = leaf(mk, "quiver", cmd_mckay_quiver, "McKay quiver of a group such as 1/3(1,2) or BD8")
    p.add_argument("--group", required=True)
    p.add_argument("--dot", help="write a Graphviz digraph here")
    p = leaf(mk, "dual-graph", cmd_mckay_dual_graph, "dual graph obtained by deleting the trivial representation")
    p.add_argument("--group", required=True)
    p.add_argument("--dot", help="write a Graphviz graph here")
    p = leaf(mk, "characters", cmd_mckay_characters, "character table")
    p.add_argument("--group", required=True)

    p = leaf(sub, "invariants", cmd_invariants, "invariant monomials of a cyclic group or torus")
    p.add_argument("--group", help="cyclic group such as 1/3(1,2)")
    p.add_argument("--torus", help="torus weights such as 1,1,-1,-1")
    p.add_argument("--bound", type=int, help="degree bound (default 3r, or 12 for a torus)")
    p.add_argument("--modules", action="store_true", help="also list generators of every S_i")

    p = leaf(sub, "endo-quiver", cmd_endo_quiver, "quiver of the endomorphism ring of the weight modules")
    p.add_argument("--group", required=True)
    p.add_argument("--classes", help="comma-separated weight classes to include (default: all)")
    p.add_argument("--bound", type=int)
    p.add_argument("--dot", help="write a Graphviz digraph here")

    sk = sub.add_parser("skew", help="skew group rings").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = leaf(sk, "demo", cmd_skew_demo, "sample products in a skew group ring")
    p.add_argument("--group", default="1/3(1,2)")
    p.add_argument("--truncation", type=int, default=10)

    mfp = sub.add_parser("mf", help="matrix factorizations").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, func, text in (
        ("validate", cmd_mf_validate, "check phi*psi = psi*phi = sign*f*I"),
        ("syzygy", cmd_mf_syzygy, "swap the pair"),
        ("knorrer", cmd_mf_knorrer, "factorization of uv - f"),
        ("present", cmd_mf_present, "presentation matrix of coker(phi)"),
    ):
        p = leaf(mfp, name, func, text)
        p.add_argument("--in", dest="inp", required=True, help="factorization JSON file")
        if name == "knorrer":
            p.add_argument("--u", default="u")
            p.add_argument("--v", default="v")
    return parser


DOMAIN_ERRORS = (ValueError, IncompleteError, ArithmeticError)


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    inputs = Inputs()
    inputs.digest.update("\0".join(a for a in argv if a != args.report).encode())
    start = time.perf_counter()
    try:
        result = args.func(args, inputs)
    except UsageError as exc:
        print(f"nccr: error: {exc}", file=sys.stderr)
        return 2
    except SchemaError as exc:
        print(f"nccr: invalid input: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"nccr: {exc}", file=sys.stderr)
        return 1
    except DOMAIN_ERRORS as exc:
        print(f"nccr: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    payload = {"schema_version": SCHEMA_VERSION, **result}
    text = dumps(payload)
    if args.out:
        _write_text(args.out, text, inputs)
    else:
        sys.stdout.write(text)
    if args.report:
        report = {
            "schema_version": SCHEMA_VERSION,
            "command": " ".join(argv[:2]) if len(argv) > 1 and not argv[1].startswith("-") else argv[0],
            "argv": argv,
            "inputs_digest": inputs.digest.hexdigest(),
            "outputs": inputs.outputs or ["<stdout>"],
            "result_digest": hashlib.sha256(text.encode()).hexdigest(),
            "timing_seconds": round(time.perf_counter() - start, 6),
            "tool_version": __version__,
        }
        Path(args.report).write_text(dumps(report), encoding="utf-8")
    return 0


def main() -> None:
    sys.exit(run())
