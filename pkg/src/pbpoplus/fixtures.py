"""Built-in worked examples, embedded as data.

Each fixture function returns a dict with the objects it defines (a rule and
usually one or more hosts with the intended match). Names follow the ids
used in the figures they reproduce.
"""
from __future__ import annotations

from .graph import Graph, Morphism, identity
from .interop import AgreeRule, PbpoRule
from .lattice import Lattice, explicit_lattice, flat_lattice, unit_lattice
from .rewrite import Rule, validate_rule


def graph(lat: Lattice, vertices, edges=()) -> Graph:
    """Build a graph from compact specs.

    ``vertices`` is a mapping id -> label or a list of ids (bottom label).
    ``edges`` holds tuples ``(id, src, tgt)`` or ``(id, src, tgt, label)``.
    """
    if not isinstance(vertices, dict):
        vertices = {v: lat.bottom for v in vertices}
    ed = {}
    for e in edges:
        ed[e[0]] = (e[1], e[2], e[3] if len(e) > 3 else lat.bottom)
    return Graph(lat, vertices, ed)


def hom(A: Graph, B: Graph, vmap: dict, emap: dict | None = None) -> Morphism:
    """Morphism given by explicit maps; unlisted elements map to the same id."""
    v = {x: vmap.get(x, x) for x in A.vertices}
    e = {x: (emap or {}).get(x, x) for x in A.edges}
    return Morphism(A, B, v, e)


def _rule(L, K, R, Lp, Kp, l, r, tL, tK, lp, name) -> Rule:
    return validate_rule(Rule(L, K, R, Lp, Kp, l, r, tL, tK, lp, name=name))


# -- the running example ---------------------------------------------------------------

def example4() -> dict:
    U = unit_lattice()
    L = graph(U, ["xx", "y"], [("p", "xx", "y")])
    K = graph(U, ["x1", "x2", "y"])
    R = graph(U, ["x1y", "x2", "u"], [("lp2", "x2", "x2")])
    Lp = graph(U, ["xx", "y", "z"], [("p", "xx", "y"), ("yx", "y", "xx"), ("zx", "z", "xx"),
                                    ("zz", "z", "z"), ("yz", "y", "z")])
    Kp = graph(U, ["x1", "x2", "y", "z"], [("yx2a", "y", "x2"), ("yx2b", "y", "x2"),
                                          ("zz", "z", "z"), ("zx1", "z", "x1")])
    l = hom(K, L, {"x1": "xx", "x2": "xx"})
    r = hom(K, R, {"x1": "x1y", "y": "x1y"})
    tL = hom(L, Lp, {})
    tK = hom(K, Kp, {})
    lp = hom(Kp, Lp, {"x1": "xx", "x2": "xx"},
             {"yx2a": "yx", "yx2b": "yx", "zx1": "zx"})
    return {"rule": _rule(L, K, R, Lp, Kp, l, r, tL, tK, lp, "example4")}


def example6() -> dict:
    """The example4 rule applied to a host with a copied vertex and a patch (8 edges)."""
    d = example4()
    rule = d["rule"]
    U = rule.lattice
    G = graph(U, ["xx", "y", "z1", "z2", "z3"], [
        ("p", "xx", "y"), ("z1x", "z1", "xx"), ("z2z1", "z2", "z1"), ("z2x", "z2", "xx"),
        ("z1z2", "z1", "z2"), ("yx1", "y", "xx"), ("yx2", "y", "xx"), ("yz2", "y", "z2")])
    m = hom(rule.L, G, {})
    alpha = hom(G, rule.Lp, {"z1": "z", "z2": "z", "z3": "z"},
                {"z1x": "zx", "z2z1": "zz", "z2x": "zx", "z1z2": "zz", "yx1": "yx",
                 "yx2": "yx", "yz2": "yz"})
    d.update(host=G, m=m, alpha=alpha, expected={"GK": (6, 8), "GR": (6, 9)})
    return d


def example14() -> dict:
    """Loop deletion on an isolated single-loop vertex; also given as a PBPO rule."""
    U = unit_lattice()
    L = graph(U, ["x"], [("lx", "x", "x")])
    K = graph(U, ["x"])
    R = graph(U, ["x"])
    Lp = graph(U, ["x", "y"], [("lx", "x", "x"), ("ly", "y", "y")])
    Kp = graph(U, ["x", "y"], [("ly", "y", "y")])
    l, r = hom(K, L, {}), hom(K, R, {})
    tL, tK, lp = hom(L, Lp, {}), hom(K, Kp, {}), hom(Kp, Lp, {})
    rule = _rule(L, K, R, Lp, Kp, l, r, tL, tK, lp, "example14")
    pbpo = PbpoRule.from_left(L, K, R, Lp, Kp, l, r, tL, tK, lp).check_canonical()
    one_loop = graph(U, ["a"], [("la", "a", "a")])
    two_loops = graph(U, ["a"], [("la", "a", "a"), ("lb", "a", "a")])
    two_vertices = graph(U, ["a", "b"], [("la", "a", "a"), ("lb", "b", "b")])
    m = hom(L, two_vertices, {"x": "a"}, {"lx": "la"})
    fold = hom(two_vertices, Lp, {"a": "x", "b": "x"}, {"la": "lx", "lb": "lx"})
    with_cycle = graph(U, ["a", "c1", "c2"], [("la", "a", "a"), ("c12", "c1", "c2"),
                                               ("c21", "c2", "c1")])
    return {"rule": rule, "pbpo": pbpo, "one_loop": one_loop, "two_loops": two_loops,
            "two_vertices": two_vertices, "fold_m": m, "fold_alpha": fold,
            "with_cycle": with_cycle}


def example15() -> dict:
    """The spiral: PBPO duplicates everything typed over x."""
    U = unit_lattice()
    L = graph(U, ["x", "y"], [("xy", "x", "y"), ("yx", "y", "x")])
    K = graph(U, ["x", "y", "x'"], [("xy", "x", "y"), ("yx", "y", "x"), ("x'y", "x'", "y")])
    R = graph(U, ["x", "yx'"], [("xy", "x", "yx'"), ("yx", "yx'", "x"), ("loop", "yx'", "yx'")])
    l = hom(K, L, {"x'": "x"}, {"x'y": "xy"})
    r = hom(K, R, {"y": "yx'", "x'": "yx'"}, {"x'y": "loop"})
    pbpo = PbpoRule.from_left(L, K, R, L, K, l, r, identity(L), identity(K), l).check_canonical()
    G = graph(U, ["x", "y", "x1", "y1", "x2"], [
        ("xy", "x", "y"), ("yx", "y", "x"), ("yx1", "y", "x1"), ("x1y1", "x1", "y1"),
        ("y1x2", "y1", "x2")])
    m = hom(L, G, {})
    alpha = hom(G, L, {"x1": "x", "x2": "x", "y1": "y"},
                {"yx1": "yx", "x1y1": "xy", "y1x2": "yx"})
    return {"pbpo": pbpo, "host": G, "m": m, "alpha": alpha,
            "expected": {"GK": (8, 7), "GR": (7, 7)}}


def remark_u() -> dict:
    """PBPO step where u' o v = tK has four solutions but one mediator."""
    U = unit_lattice()
    L = graph(U, ["x"])
    K = graph(U, ["x1", "x2"])
    l = hom(K, L, {"x1": "x", "x2": "x"})
    pbpo = PbpoRule.from_left(L, K, K, L, K, l, identity(K), identity(L), identity(K),
                              l).check_canonical()
    G = graph(U, ["a", "b"])
    m = hom(L, G, {"x": "a"})
    alpha = hom(G, L, {"a": "x", "b": "x"})
    return {"pbpo": pbpo, "host": G, "m": m, "alpha": alpha}


def agree_not_pbpo() -> dict:
    """AGREE node deletion; its PBPO reading admits a fold that empties G_R."""
    from .classifier import classify_object, classify_partial

    U = unit_lattice()
    L = graph(U, ["x"])
    E = graph(U, [])
    TE = classify_object(E)
    agree = AgreeRule(L, E, E, TE.T, hom(E, L, {}), identity(E), TE.eta)
    TL = classify_object(L)
    lp = classify_partial(agree.tK, agree.l)
    pbpo = PbpoRule.from_left(L, E, E, TL.T, TE.T, agree.l, agree.r, TL.eta, TE.eta,
                              lp).check_canonical()
    G = graph(U, ["x", "y"])
    m = hom(L, G, {})
    fold = hom(G, TL.T, {"x": "x", "y": "x"})
    return {"agree": agree, "pbpo": pbpo, "host": G, "m": m, "fold_alpha": fold}


def prop36() -> dict:
    """Deletion of a single vertex in a host without edges."""
    U = unit_lattice()
    L = graph(U, ["x"])
    E = graph(U, [])
    Lp = graph(U, ["x", "y"])
    Kp = graph(U, ["y"])
    rule = _rule(L, E, E, Lp, Kp, hom(E, L, {}), hom(E, E, {}), hom(L, Lp, {}), hom(E, Kp, {}),
                 hom(Kp, Lp, {}), "prop36")
    return {"rule": rule}


# -- label-lattice examples ----------------------------------------------------------------

def relabel() -> dict:
    F = flat_lattice(["a", "b", "c"])
    B, T = F.bottom, F.top
    L = graph(F, {"x": B})
    K = graph(F, {"x": B})
    R = graph(F, {"x": "c"})
    ctx = [("xx", "x", "x", T), ("xz", "x", "z", T), ("zx", "z", "x", T), ("zz", "z", "z", T)]
    Lp = graph(F, {"x": T, "z": T}, ctx)
    Kp = graph(F, {"x": B, "z": T}, ctx)
    rule = _rule(L, K, R, Lp, Kp, hom(K, L, {}), hom(K, R, {}), hom(L, Lp, {}), hom(K, Kp, {}),
                 hom(Kp, Lp, {}), "relabel")
    G = graph(F, {"x": "a", "z": "b"}, [("e", "x", "z", B)])
    expected = graph(F, {"x": "c", "z": "b"}, [("e", "x", "z", B)])
    m = hom(L, G, {})
    alpha = hom(G, Lp, {}, {"e": "xz"})
    return {"rule": rule, "host": G, "m": m, "alpha": alpha, "expected": expected}


def sorts_lattice() -> Lattice:
    els = ["_bot", "p1", "p2", "P", "d1", "d2", "D", ">", "@", "_top"]
    covers = [("_bot", "p1"), ("_bot", "p2"), ("p1", "P"), ("p2", "P"), ("P", "_top"),
              ("_bot", "d1"), ("_bot", "d2"), ("d1", "D"), ("d2", "D"), ("D", "_top"),
              ("_bot", ">"), (">", "_top"), ("_bot", "@"), ("@", "_top")]
    return explicit_lattice(els, covers)


def sorts() -> dict:
    S = sorts_lattice()
    B, T = S.bottom, S.top
    L = graph(S, {"x": B, "y": B}, [("c", "x", "y", ">")])
    ctx = [("zz", "z", "z", T), ("zx", "z", "x", T), ("zy", "z", "y", T), ("yz", "y", "z", T)]
    Lp = graph(S, {"x": "D", "y": "P", "z": T}, [("c", "x", "y", ">")] + ctx)
    K = graph(S, {"x1": B, "y": B, "x2": B})
    Kp = graph(S, {"x1": B, "y": "P", "z": T, "x2": "D"},
               [("zz", "z", "z", T), ("zx1", "z", "x1", T), ("zy", "z", "y", T),
                ("yz", "y", "z", T)])
    R = graph(S, {"x1y": B, "x2": B}, [("at", "x2", "x1y", "@")])
    l = hom(K, L, {"x1": "x", "x2": "x"})
    r = hom(K, R, {"x1": "x1y", "y": "x1y"})
    lp = hom(Kp, Lp, {"x1": "x", "x2": "x"}, {"zx1": "zx"})
    rule = _rule(L, K, R, Lp, Kp, l, r, hom(L, Lp, {}), hom(K, Kp, {}), lp, "sorts")
    G = graph(S, {"q1": "p1", "e1": "d1", "q2": "p2"},
              [("c1", "q1", "e1", ">"), ("c2", "e1", "q2", ">")])
    m = hom(L, G, {"x": "e1", "y": "q2"}, {"c": "c2"})
    alpha = hom(G, Lp, {"q1": "z", "e1": "x", "q2": "y"}, {"c1": "zx", "c2": "c"})
    expected = graph(S, {"q1": "p1", "e1": "d1", "q2": "p2"},
                     [("c1", "q1", "q2", ">"), ("at", "e1", "q2", "@")])
    return {"rule": rule, "host": G, "m": m, "alpha": alpha, "expected": expected}


def variables_lattice() -> Lattice:
    return flat_lattice(["f", "g", "h", "1", "2", "3", "a", "b", "c", "d"])


def variables() -> dict:
    """f(g(x), y) -> h(g(x), g(y), x) on tree encodings."""
    V = variables_lattice()
    B, T = V.bottom, V.top
    L = graph(V, {"v": "f", "w": "g", "y": B, "x12": B},
              [("v1", "v", "w", "1"), ("w1", "w", "x12", "1"), ("v2", "v", "y", "2")])
    K = graph(V, {"v": B, "y": B, "x1": B, "x2": B})
    R = graph(V, {"v": "h", "z1": "g", "z2": "g", "x1": B, "x2": B, "y": B},
              [("h1", "v", "z1", "1"), ("h2", "v", "z2", "2"), ("h3", "v", "x2", "3"),
               ("z1x1", "z1", "x1", "1"), ("z2y", "z2", "y", "1")])
    Lp = graph(V, {"u": T, "v": "f", "w": "g", "y": T, "x12": T, "x12'": T, "y'": T},
               [("uu", "u", "u", T), ("uv", "u", "v", T),
                ("v1", "v", "w", "1"), ("w1", "w", "x12", "1"), ("v2", "v", "y", "2"),
                ("xx", "x12", "x12'", T), ("x'x'", "x12'", "x12'", T),
                ("yy", "y", "y'", T), ("y'y'", "y'", "y'", T)])
    Kp = graph(V, {"u": T, "v": B, "y": T, "y'": T, "x1": T, "x2": T, "x1'": T, "x2'": T},
               [("uu", "u", "u", T), ("uv", "u", "v", T), ("yy", "y", "y'", T),
                ("y'y'", "y'", "y'", T), ("x1x", "x1", "x1'", T), ("x1'x1'", "x1'", "x1'", T),
                ("x2x", "x2", "x2'", T), ("x2'x2'", "x2'", "x2'", T)])
    l = hom(K, L, {"x1": "x12", "x2": "x12"})
    r = hom(K, R, {})
    lp = hom(Kp, Lp, {"x1": "x12", "x2": "x12", "x1'": "x12'", "x2'": "x12'"},
             {"x1x": "xx", "x2x": "xx", "x1'x1'": "x'x'", "x2'x2'": "x'x'"})
    rule = _rule(L, K, R, Lp, Kp, l, r, hom(L, Lp, {}), hom(K, Kp, {}), lp, "variables")
    return {"rule": rule, "hosts": variables_hosts(V)}


def variables_hosts(V: Lattice) -> dict:
    """Term encodings with the vertex/edge counts expected after one step."""
    small = graph(V, {"r": "f", "s": "g", "a": "a", "b": "b"},
                  [("rs", "r", "s", "1"), ("sa", "s", "a", "1"), ("rb", "r", "b", "2")])
    nested = graph(V, {"r": "f", "s": "g", "a": "a", "d": "d", "b": "b", "c": "c"},
                   [("rs", "r", "s", "1"), ("sa", "s", "a", "1"), ("ad", "a", "d", "1"),
                    ("rb", "r", "b", "2"), ("bc", "b", "c", "1")])
    return {"f(g(a),b)": (small, (6, 5)), "f(g(a(d)),b(c))": (nested, (9, 8))}


def intro_patch() -> dict:
    """Match of a labeled 3-cycle into a 5-vertex host with three patch edges."""
    F = flat_lattice(["a", "b", "c"])
    P = graph(F, ["p3", "p4", "p5"], [("q1", "p3", "p4", "b"), ("q2", "p4", "p5", "a"),
                                      ("q3", "p5", "p3", "a")])
    G = graph(F, ["3", "4", "5", "6", "7"], [
        ("34", "3", "4", "b"), ("45", "4", "5", "a"), ("53", "5", "3", "a"),
        ("46", "4", "6", "b"), ("75", "7", "5", "a"), ("67", "6", "7", "b"),
        ("53c", "5", "3", "c")])
    x = hom(P, G, {"p3": "3", "p4": "4", "p5": "5"}, {"q1": "34", "q2": "45", "q3": "53"})
    return {"pattern": P, "host": G, "match": x}


FIXTURES = {
    "example4": example4,
    "example6": example6,
    "example14": example14,
    "example15": example15,
    "relabel": relabel,
    "sorts": sorts,
    "variables": variables,
    "prop36": prop36,
    "agree-not-pbpo": agree_not_pbpo,
    "remark-u": remark_u,
    "intro-patch": intro_patch,
}


def load(name: str) -> dict:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {sorted(FIXTURES)}") from None
