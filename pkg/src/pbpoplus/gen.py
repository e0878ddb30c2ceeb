"""Exhaustive and random generators for graphs, morphisms and rules.

Used by the test suite, the benchmark and the acceptance runs. Random
generators take a ``numpy.random.Generator`` so every run is reproducible
from a seed.
"""
from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Iterator

import numpy as np

from .graph import Graph, Morphism
from .lattice import Lattice
from .search import IsoBucket, enumerate_morphisms


def all_graphs(lat: Lattice, max_vertices: int, max_edges: int, *,
               min_vertices: int = 0, up_to_iso: bool = True) -> Iterator[Graph]:
    """Every graph with at most the given numbers of vertices and edges."""
    labels = list(lat.elements)
    seen = IsoBucket() if up_to_iso else None
    for nv in range(min_vertices, max_vertices + 1):
        vids = [f"v{i}" for i in range(nv)]
        slots = [(s, t, l) for s in range(nv) for t in range(nv) for l in range(len(labels))]
        for vlabs in combinations_with_replacement(range(len(labels)), nv):
            for ne in range(max_edges + 1):
                if ne and not slots:
                    break
                for es in combinations_with_replacement(slots, ne):
                    G = Graph._trusted(
                        lat, {v: labels[i] for v, i in zip(vids, vlabs)},
                        {f"e{j}": (vids[s], vids[t], labels[l]) for j, (s, t, l) in enumerate(es)})
                    if seen is None or seen.add(G):
                        yield G


def random_graph(rng: np.random.Generator, lat: Lattice, nv: int, ne: int, *,
                 prefix: str = "", labels=None) -> Graph:
    labels = list(lat.elements) if labels is None else list(labels)
    vids = [f"{prefix}v{i}" for i in range(nv)]
    vl = {v: labels[rng.integers(len(labels))] for v in vids}
    ed = {}
    if nv:
        for j in range(ne):
            ed[f"{prefix}e{j}"] = (vids[rng.integers(nv)], vids[rng.integers(nv)],
                                   labels[rng.integers(len(labels))])
    return Graph(lat, vl, ed)


def random_morphism(rng: np.random.Generator, A: Graph, B: Graph, constraint: str = "any",
                    limit: int = 200) -> Morphism | None:
    """A morphism drawn from the first ``limit`` enumerated ones (or None)."""
    ms = []
    for m in enumerate_morphisms(A, B, constraint):
        ms.append(m)
        if len(ms) >= limit:
            break
    if not ms:
        return None
    return ms[rng.integers(len(ms))]


def random_rule(rng: np.random.Generator, lat: Lattice, *, max_vertices: int = 4,
                max_edges: int = 5, merge_prob: float = 0.0):
    """A random valid PBPO+ rule.

    L is mapped into L' (raising labels, adding context and, with probability
    ``merge_prob`` per opportunity, identifying vertices or parallel edges),
    K' is a graph over L' via a random morphism l', K is the pullback of tL
    and l', and R is obtained from K by merging and adding elements.
    """
    from .limits import pullback
    from .rewrite import Rule

    labels = list(lat.elements)
    nL = int(rng.integers(1, 3))
    L = random_graph(rng, lat, nL, int(rng.integers(0, 3)), prefix="l")
    nctx = int(rng.integers(0, max_vertices - nL + 1))
    order = lat.order_matrix

    def raise_label(x):
        i = lat.index(x)
        ups = [labels[j] for j in np.flatnonzero(order[i])]
        return ups[rng.integers(len(ups))]

    # image of L in L'
    vimg = {}
    for v in L.vertices:
        if vimg and rng.random() < merge_prob:
            vimg[v] = list(vimg.values())[rng.integers(len(vimg))]
        else:
            vimg[v] = v
    vl = {}
    for v in L.vertices:
        vl[vimg[v]] = lat.join2(vl.get(vimg[v], lat.bottom), L.vlabel(v))
    vl = {v: raise_label(lab) for v, lab in vl.items()}
    ed, eimg = {}, {}
    for e in L.edges:
        s, t, lab = L.edge(e)
        s, t = vimg[s], vimg[t]
        par = [d for d in eimg.values() if ed[d][:2] == (s, t)]
        if par and rng.random() < merge_prob:
            d = par[rng.integers(len(par))]
            ed[d] = (s, t, lat.join2(ed[d][2], lab))
        else:
            d = e
            ed[d] = (s, t, raise_label(lab))
        eimg[e] = d
    for i in range(nctx):
        vl[f"c{i}"] = labels[rng.integers(len(labels))]
    allv = list(vl)
    n_extra = int(rng.integers(0, max(1, max_edges - len(ed) + 1)))
    for j in range(n_extra):
        ed[f"x{j}"] = (allv[rng.integers(len(allv))], allv[rng.integers(len(allv))],
                       labels[rng.integers(len(labels))])
    Lp = Graph(lat, vl, ed)
    tL = Morphism(L, Lp, vimg, eimg)
    # K' with a random l': K' -> L'
    Kp = random_graph(rng, lat, int(rng.integers(1, max_vertices + 1)),
                      int(rng.integers(0, max_edges + 1)), prefix="k", labels=[lat.bottom])
    # choose vertex images freely; edges only where L' offers them
    vmap = {v: allv[rng.integers(len(allv))] for v in Kp.vertices}
    kvl = {v: Lp.vlabel(vmap[v]) if rng.random() < 0.6 else lat.bottom for v in Kp.vertices}
    ked, emap = {}, {}
    for e in Kp.edges:
        s, t, _ = Kp.edge(e)
        opts = Lp.edges_between(vmap[s], vmap[t])
        if opts:
            d = opts[rng.integers(len(opts))]
            ked[e] = (s, t, Lp.elabel(d) if rng.random() < 0.6 else lat.bottom)
            emap[e] = d
    Kp = Graph(lat, kvl, ked)
    lp = Morphism(Kp, Lp, vmap, emap)
    K, l, tK = pullback(tL, lp)
    r = _random_right(rng, K, max_vertices, max_edges)
    return Rule(L, K, r.cod, Lp, Kp, l, r, tL, tK, lp)


def _random_right(rng: np.random.Generator, K: Graph, max_vertices: int,
                  max_edges: int) -> Morphism:
    lat = K.lattice
    labels = list(lat.elements)
    order = lat.order_matrix
    vs = list(K.vertices)
    # random merges of K-vertices
    rep = {}
    for v in vs:
        if rep and rng.random() < 0.25:
            rep[v] = list(rep.values())[rng.integers(len(rep))]
        else:
            rep[v] = f"r{v}"
    vl = {}
    for v in vs:
        lab = K.vlabel(v)
        vl[rep[v]] = lat.join2(vl.get(rep[v], lat.bottom), lab)
    ed, emap = {}, {}
    for e in K.edges:
        s, t, lab = K.edge(e)
        emap[e] = f"r{e}"
        ed[f"r{e}"] = (rep[s], rep[t], lab)
    # raise some labels
    for v in list(vl):
        if rng.random() < 0.3:
            ups = [labels[j] for j in np.flatnonzero(order[lat.index(vl[v])])]
            vl[v] = ups[rng.integers(len(ups))]
    # fresh elements, within the size caps
    if len(vl) < max_vertices and rng.random() < 0.5:
        vl["new0"] = labels[rng.integers(len(labels))]
    rv = list(vl)
    if rv and len(ed) < max_edges and rng.random() < 0.5:
        ed["newe0"] = (rv[rng.integers(len(rv))], rv[rng.integers(len(rv))],
                       labels[rng.integers(len(labels))])
    R = Graph(lat, vl, ed)
    return Morphism(K, R, rep, emap)


def random_host(rng: np.random.Generator, rule, *, max_vertices: int = 5,
                max_extra_edges: int = 3) -> tuple[Graph, Morphism | None]:
    """A host built around a copy of L typed over L'.

    Returns ``(G, alpha)`` where ``alpha`` is the adherence used to build it
    (the host is generated together with a typing so that strong matches are
    likely). Context vertices are typed onto L' vertices outside the image of
    tL; extra edges are only added where L' has a typing edge.
    """
    lat = rule.L.lattice
    Lp, tL = rule.Lp, rule.tL
    order = lat.order_matrix
    labels = list(lat.elements)
    img_v = set(tL.vmap.values())
    img_e = set(tL.emap.values())
    ctx_types = [v for v in Lp.vertices if v not in img_v]
    vl, ed, av, ae = {}, {}, {}, {}

    def below(x):
        i = lat.index(x)
        downs = [labels[j] for j in np.flatnonzero(order[:, i])]
        return downs[rng.integers(len(downs))]

    for v in rule.L.vertices:
        vl[f"g{v}"] = rule.L.vlabel(v)
        av[f"g{v}"] = tL.vmap[v]
    for e in rule.L.edges:
        s, t, lab = rule.L.edge(e)
        ed[f"g{e}"] = (f"g{s}", f"g{t}", lab)
        ae[f"g{e}"] = tL.emap[e]
    n_ctx = int(rng.integers(0, max(1, max_vertices - rule.L.num_vertices + 1)))
    if ctx_types:
        for i in range(n_ctx):
            t = ctx_types[rng.integers(len(ctx_types))]
            vl[f"h{i}"] = below(Lp.vlabel(t))
            av[f"h{i}"] = t
    verts = list(vl)
    for j in range(int(rng.integers(0, max_extra_edges + 1))):
        s, t = verts[rng.integers(len(verts))], verts[rng.integers(len(verts))]
        opts = [d for d in Lp.edges_between(av[s], av[t]) if d not in img_e]
        if not opts:
            continue
        d = opts[rng.integers(len(opts))]
        ed[f"f{j}"] = (s, t, below(Lp.elabel(d)))
        ae[f"f{j}"] = d
    G = Graph(lat, vl, ed)
    return G, Morphism(G, Lp, av, ae)
