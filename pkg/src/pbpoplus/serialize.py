"""JSON and DOT formats.

A standalone graph file is ``{"lattice": descriptor, "vertices": [...],
"edges": [...]}``. Everything with more than one graph (rules, matches, step
results, squares) is a *bundle*::

    {"kind": ..., "lattice": descriptor,
     "graphs": {name: {"vertices": [...], "edges": [...]}},
     "morphisms": {name: {"dom": name, "cod": name,
                          "vertices": {id: id}, "edges": {id: id}}}}

Labels are written by name. Output key order and id order are fixed so the
same object always serializes to the same bytes.
"""
from __future__ import annotations

import json

from .errors import FormatError, NotCanonical, PbpoError
from .graph import Graph, Morphism
from .lattice import Lattice, from_descriptor

RULE_SHAPE = {"l": ("K", "L"), "r": ("K", "R"), "tL": ("L", "Lp"), "tK": ("K", "Kp"),
              "lp": ("Kp", "Lp")}
PBPO_SHAPE = {**RULE_SHAPE, "tR": ("R", "Rp"), "rp": ("Kp", "Rp")}
DPO_SHAPE = {"l": ("K", "L"), "r": ("K", "R")}
AGREE_SHAPE = {**DPO_SHAPE, "tK": ("K", "Kp")}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None


def _get(d, key, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise FormatError(f"missing field {key!r}")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise FormatError(f"field {key!r} has the wrong type")
    return v


# -- lattices, graphs, morphisms ---------------------------------------------------

def lattice_to_json(lat: Lattice) -> dict:
    return lat.descriptor()


def lattice_from_json(d) -> Lattice:
    return from_descriptor(d)


def graph_body(G: Graph) -> dict:
    lat = G.lattice
    return {
        "vertices": [{"id": v, "label": lat.name(G.vlabel(v))} for v in G.vertices],
        "edges": [{"id": e, "src": s, "tgt": t, "label": lat.name(lab)}
                  for e, (s, t, lab) in G.edge_items()],
    }


def graph_to_json(G: Graph) -> dict:
    return {"lattice": lattice_to_json(G.lattice), **graph_body(G)}


def graph_from_json(d, lattice: Lattice | None = None) -> Graph:
    if not isinstance(d, dict):
        raise FormatError("a graph must be a JSON object")
    if "lattice" in d and not isinstance(d["lattice"], str):
        own = lattice_from_json(d["lattice"])
        if lattice is not None and own != lattice:
            raise FormatError("graph lattice differs from the enclosing lattice")
        lattice = own
    if lattice is None:
        raise FormatError("graph has no lattice")
    try:
        vs = {_get(v, "id", str): lattice.label(_get(v, "label", str))
              for v in _get(d, "vertices", list)}
        es = {_get(e, "id", str): (_get(e, "src", str), _get(e, "tgt", str),
                                   lattice.label(_get(e, "label", str)))
              for e in _get(d, "edges", list)}
    except TypeError:
        raise FormatError("malformed vertex or edge entry") from None
    if len(vs) != len(d["vertices"]) or len(es) != len(d["edges"]):
        raise FormatError("duplicate vertex or edge id")
    return Graph(lattice, vs, es)


def morphism_body(f: Morphism) -> dict:
    return {"vertices": {x: f.vmap[x] for x in f.dom.vertices},
            "edges": {x: f.emap[x] for x in f.dom.edges}}


def morphism_from_json(d, dom: Graph, cod: Graph) -> Morphism:
    vm = _get(d, "vertices", dict)
    em = _get(d, "edges", dict)
    return Morphism(dom, cod, vm, em)


# -- bundles -------------------------------------------------------------------------

def bundle_to_json(kind: str, graphs: dict, morphisms: dict, **extra) -> dict:
    """``morphisms`` maps name -> (morphism, dom name, cod name)."""
    lat = next(iter(graphs.values())).lattice
    out = {"kind": kind, "lattice": lattice_to_json(lat),
           "graphs": {n: graph_body(G) for n, G in graphs.items()},
           "morphisms": {n: {"dom": a, "cod": b, **morphism_body(f)}
                         for n, (f, a, b) in morphisms.items()}}
    out.update(extra)
    return out


def bundle_from_json(d, kind: str | tuple | None = None):
    """``(lattice, graphs, morphisms)`` from a bundle."""
    if not isinstance(d, dict):
        raise FormatError("a bundle must be a JSON object")
    if kind is not None:
        kinds = (kind,) if isinstance(kind, str) else kind
        if d.get("kind") not in kinds:
            raise FormatError(f"expected kind {' or '.join(kinds)}, got {d.get('kind')!r}")
    lat = lattice_from_json(_get(d, "lattice"))
    graphs = {n: graph_from_json(g, lat) for n, g in _get(d, "graphs", dict).items()}
    morphisms = {}
    for n, m in _get(d, "morphisms", dict).items():
        a, b = _get(m, "dom", str), _get(m, "cod", str)
        if a not in graphs or b not in graphs:
            raise FormatError(f"morphism {n!r} refers to an unknown graph")
        morphisms[n] = morphism_from_json(m, graphs[a], graphs[b])
    return lat, graphs, morphisms


def _need(names, table, what):
    for n in names:
        if n not in table:
            raise FormatError(f"{what} {n!r} missing")
    return [table[n] for n in names]


def _shaped(obj, shape):
    return {n: (getattr(obj, n), a, b) for n, (a, b) in shape.items()}


# -- rules ---------------------------------------------------------------------------

def rule_to_json(rule, *, with_rprime: bool = False) -> dict:
    graphs = {n: getattr(rule, n) for n in ("L", "K", "R", "Lp", "Kp")}
    morphisms = _shaped(rule, RULE_SHAPE)
    if with_rprime:
        Rp, rp, tR = rule.right_pushout()
        graphs["Rp"] = Rp
        morphisms.update(tR=(tR, "R", "Rp"), rp=(rp, "Kp", "Rp"))
    return bundle_to_json("pbpo+rule", graphs, morphisms, name=rule.name)


def rule_from_json(d, *, validate: bool = True):
    from .limits import is_pushout_square
    from .rewrite import Rule, validate_rule

    _, g, m = bundle_from_json(d, "pbpo+rule")
    L, K, R, Lp, Kp = _need(("L", "K", "R", "Lp", "Kp"), g, "graph")
    l, r, tL, tK, lp = _need(("l", "r", "tL", "tK", "lp"), m, "morphism")
    rule = Rule(L, K, R, Lp, Kp, l, r, tL, tK, lp, name=d.get("name", ""))
    if validate:
        validate_rule(rule)
    if {"Rp"} <= set(g) and {"tR", "rp"} <= set(m):
        if not is_pushout_square(tK, r, m["rp"], m["tR"]):
            raise NotCanonical("the supplied R' data is not a pushout of tK and r")
    return rule


def dpo_rule_to_json(rule) -> dict:
    return bundle_to_json("dpo-rule", {"L": rule.L, "K": rule.K, "R": rule.R},
                          _shaped(rule, DPO_SHAPE))


def dpo_rule_from_json(d):
    from .interop import DpoRule

    _, g, m = bundle_from_json(d, "dpo-rule")
    return DpoRule(*_need(("L", "K", "R"), g, "graph"), *_need(("l", "r"), m, "morphism"))


def agree_rule_to_json(rule) -> dict:
    return bundle_to_json("agree-rule", {"L": rule.L, "K": rule.K, "R": rule.R, "Kp": rule.Kp},
                          _shaped(rule, AGREE_SHAPE))


def agree_rule_from_json(d):
    from .interop import AgreeRule

    _, g, m = bundle_from_json(d, "agree-rule")
    return AgreeRule(*_need(("L", "K", "R", "Kp"), g, "graph"),
                     *_need(("l", "r", "tK"), m, "morphism"))


def pbpo_rule_to_json(rule) -> dict:
    graphs = {n: getattr(rule, n) for n in ("L", "K", "R", "Lp", "Kp", "Rp")}
    return bundle_to_json("pbpo-rule", graphs, _shaped(rule, PBPO_SHAPE))


def pbpo_rule_from_json(d):
    """A canonical PBPO rule; R', r' and tR are recomputed when absent."""
    from .interop import PbpoRule

    _, g, m = bundle_from_json(d, "pbpo-rule")
    L, K, R, Lp, Kp = _need(("L", "K", "R", "Lp", "Kp"), g, "graph")
    l, r, tL, tK, lp = _need(("l", "r", "tL", "tK", "lp"), m, "morphism")
    if "Rp" in g and "tR" in m and "rp" in m:
        rule = PbpoRule(L, K, R, Lp, Kp, g["Rp"], l, r, tL, tK, m["tR"], lp, m["rp"])
    else:
        rule = PbpoRule.from_left(L, K, R, Lp, Kp, l, r, tL, tK, lp)
    return rule.check_canonical()


def any_rule_to_json(rule) -> dict:
    from .interop import AgreeRule, DpoRule, PbpoRule

    if isinstance(rule, DpoRule):
        return dpo_rule_to_json(rule)
    if isinstance(rule, AgreeRule):
        return agree_rule_to_json(rule)
    if isinstance(rule, PbpoRule):
        return pbpo_rule_to_json(rule)
    return rule_to_json(rule)


# -- matches and steps ---------------------------------------------------------------

def match_to_json(m: Morphism, alpha: Morphism, index: int | None = None) -> dict:
    out = {"m": morphism_body(m), "alpha": morphism_body(alpha)}
    if index is not None:
        out = {"index": index, **out}
    return out


def step_to_json(res) -> dict:
    graphs = {"GL": res.GL, "GK": res.GK, "GR": res.GR}
    morphisms = {"gL": (res.gL, "GK", "GL"), "gR": (res.gR, "GK", "GR")}
    extra = {"match": match_to_json(res.m, res.alpha),
             "u": morphism_body(res.u), "up": morphism_body(res.up), "w": morphism_body(res.w),
             "certificates": dict(res.certificates), "certified": res.certified,
             "notes": list(res.notes)}
    if res.Rp is not None:
        extra["rprime"] = {"Rp": graph_body(res.Rp), "wp": morphism_body(res.wp)}
    return bundle_to_json("step", graphs, morphisms, **extra)


def trace_to_json(trace) -> dict:
    steps = [{"rule": s.rule_index, "candidates": s.candidates,
              "match": match_to_json(s.result.m, s.result.alpha),
              "result": graph_body(s.result.GR)} for s in trace.steps]
    return {"kind": "trace", "lattice": lattice_to_json(trace.start.lattice),
            "strategy": trace.strategy, "start": graph_body(trace.start), "steps": steps,
            "final": graph_body(trace.final), "normal_form": trace.normal_form,
            "budget_exhausted": trace.budget_exhausted}


def square_from_json(d):
    """``(kind, f, g, p1, p2)`` for a square file.

    The four morphisms are looked up by the names in ``"square"``: ``f: A -> C``,
    ``g: B -> C``, ``p1: P -> A``, ``p2: P -> B`` for a pullback, and
    ``f: A -> B``, ``g: A -> C``, ``q1: B -> Q``, ``q2: C -> Q`` for a pushout.
    """
    _, _, m = bundle_from_json(d, "square")
    sq = _get(d, "square", dict)
    kind = _get(sq, "type", str)
    if kind not in ("pullback", "pushout"):
        raise FormatError(f"unknown square type {kind!r}")
    names = ("f", "g", "p1", "p2") if kind == "pullback" else ("f", "g", "q1", "q2")
    fs = []
    for n in names:
        ref = _get(sq, n, str)
        if ref not in m:
            raise FormatError(f"square refers to unknown morphism {ref!r}")
        fs.append(m[ref])
    return (kind, *fs)


# -- files ----------------------------------------------------------------------------

def read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def wrap_format_errors(fn, *args, **kwargs):
    """Run a parser, turning stray structural errors into FormatError."""
    try:
        return fn(*args, **kwargs)
    except PbpoError:
        raise
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        raise FormatError(f"malformed input: {exc}") from None


# -- DOT --------------------------------------------------------------------------------

def _dot_str(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(G: Graph, name: str = "G") -> str:
    lat = G.lattice
    lines = [f"digraph {_dot_str(name)} {{"]
    for v in G.vertices:
        lines.append(f"  {_dot_str(v)} [label={_dot_str(v + '^' + lat.name(G.vlabel(v)))}];")
    for e, (s, t, lab) in G.edge_items():
        lines.append(f"  {_dot_str(s)} -> {_dot_str(t)} "
                     f"[id={_dot_str(e)}, label={_dot_str(lat.name(lab))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graphs_to_dot(graphs: dict) -> str:
    return "".join(graph_to_dot(G, n) for n, G in graphs.items())
