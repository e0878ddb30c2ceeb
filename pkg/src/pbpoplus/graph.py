"""Lattice-labeled multigraphs and label-nondecreasing premorphisms."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import (ComposabilityMismatch, InvalidGraph, InvalidMorphism,
                     LatticeMismatch)
from .lattice import Label, Lattice


class Graph:
    """A finite directed multigraph labeled from a lattice.

    Vertices and edges are identified by strings. The constructor sorts both
    id sets, so two graphs with the same content compare and serialize
    identically regardless of construction order.
    """

    __slots__ = ("lattice", "_vlabel", "_edges", "_hash", "_arrays", "_adj")

    def __init__(self, lattice: Lattice, vertices: Mapping[str, Label] | Iterable = (),
                 edges: Mapping[str, tuple] | Iterable = ()):
        self.lattice = lattice
        vitems = vertices.items() if isinstance(vertices, Mapping) else vertices
        vl = {}
        for v, lab in vitems:
            if not isinstance(v, str):
                raise InvalidGraph(f"vertex id {v!r} is not a string")
            if v in vl:
                raise InvalidGraph(f"duplicate vertex id {v!r}")
            vl[v] = lattice.check(lab)
        eitems = edges.items() if isinstance(edges, Mapping) else ((e[0], e[1:]) for e in edges)
        ed = {}
        for e, (s, t, lab) in eitems:
            if not isinstance(e, str):
                raise InvalidGraph(f"edge id {e!r} is not a string")
            if e in ed:
                raise InvalidGraph(f"duplicate edge id {e!r}")
            if s not in vl or t not in vl:
                raise InvalidGraph(f"edge {e!r} has an endpoint outside the vertex set")
            ed[e] = (s, t, lattice.check(lab))
        self._vlabel = {v: vl[v] for v in sorted(vl)}
        self._edges = {e: ed[e] for e in sorted(ed)}
        self._hash = None
        self._arrays = None
        self._adj = None

    @classmethod
    def _trusted(cls, lattice, vlabel: dict, edges: dict) -> "Graph":
        g = cls.__new__(cls)
        g.lattice = lattice
        g._vlabel = {v: vlabel[v] for v in sorted(vlabel)}
        g._edges = {e: edges[e] for e in sorted(edges)}
        g._hash = None
        g._arrays = None
        g._adj = None
        return g

    # -- accessors ------------------------------------------------------

    @property
    def vertices(self) -> tuple:
        return tuple(self._vlabel)

    @property
    def edges(self) -> tuple:
        return tuple(self._edges)

    def src(self, e: str) -> str:
        return self._edges[e][0]

    def tgt(self, e: str) -> str:
        return self._edges[e][1]

    def vlabel(self, v: str) -> Label:
        return self._vlabel[v]

    def elabel(self, e: str) -> Label:
        return self._edges[e][2]

    def edge(self, e: str) -> tuple:
        """``(src, tgt, label)`` of an edge."""
        return self._edges[e]

    def vertex_items(self):
        return self._vlabel.items()

    def edge_items(self):
        return self._edges.items()

    def has_vertex(self, v) -> bool:
        return v in self._vlabel

    def has_edge(self, e) -> bool:
        return e in self._edges

    @property
    def num_vertices(self) -> int:
        return len(self._vlabel)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def is_empty(self) -> bool:
        return not self._vlabel

    def edges_between(self, s: str, t: str) -> list:
        if self._adj is None:
            adj = {}
            for e, (a, b, _) in self._edges.items():
                adj.setdefault((a, b), []).append(e)
            self._adj = adj
        return self._adj.get((s, t), [])

    def degree(self, v: str) -> int:
        return sum((s == v) + (t == v) for s, t, _ in self._edges.values())

    # -- equality -------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.lattice == other.lattice and self._vlabel == other._vlabel
                and self._edges == other._edges)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self._vlabel.items()), tuple(self._edges.items())))
        return self._hash

    def __repr__(self):
        vs = ", ".join(f"{v}^{self.lattice.name(l)}" for v, l in self._vlabel.items())
        es = ", ".join(f"{e}:{s}->{t}^{self.lattice.name(l)}"
                       for e, (s, t, l) in self._edges.items())
        return f"Graph([{vs}], [{es}])"

    # -- derived constructions ------------------------------------------

    def arrays(self):
        """Integer encoding used by the search kernels (cached)."""
        if self._arrays is None:
            vidx = {v: i for i, v in enumerate(self._vlabel)}
            lat = self.lattice
            src = np.array([vidx[s] for s, _, _ in self._edges.values()], dtype=np.int64)
            tgt = np.array([vidx[t] for _, t, _ in self._edges.values()], dtype=np.int64)
            vlab = np.array([lat.index(l) for l in self._vlabel.values()], dtype=np.int64)
            elab = np.array([lat.index(l) for _, _, l in self._edges.values()], dtype=np.int64)
            self._arrays = (vidx, src, tgt, vlab, elab)
        return self._arrays

    def subgraph(self, vertices: Iterable[str], edges: Iterable[str]) -> "Graph":
        vs = set(vertices)
        es = set(edges)
        for e in es:
            s, t, _ = self._edges[e]
            if s not in vs or t not in vs:
                raise InvalidGraph(f"edge {e!r} dangles in the requested subgraph")
        return Graph._trusted(self.lattice, {v: self._vlabel[v] for v in vs},
                              {e: self._edges[e] for e in es})

    def relabeled(self, vlabels: Mapping[str, Label] = None,
                  elabels: Mapping[str, Label] = None) -> "Graph":
        vl = dict(self._vlabel)
        ed = dict(self._edges)
        for v, lab in (vlabels or {}).items():
            vl[v] = self.lattice.check(lab)
        for e, lab in (elabels or {}).items():
            s, t, _ = ed[e]
            ed[e] = (s, t, self.lattice.check(lab))
        return Graph._trusted(self.lattice, vl, ed)

    def renamed(self, vnames: Mapping[str, str], enames: Mapping[str, str]) -> "Graph":
        vl = {vnames.get(v, v): lab for v, lab in self._vlabel.items()}
        ed = {enames.get(e, e): (vnames.get(s, s), vnames.get(t, t), lab)
              for e, (s, t, lab) in self._edges.items()}
        if len(vl) != len(self._vlabel) or len(ed) != len(self._edges):
            raise InvalidGraph("renaming is not injective")
        return Graph._trusted(self.lattice, vl, ed)


def empty_graph(lattice: Lattice) -> Graph:
    return Graph(lattice)


class Morphism:
    """A premorphism ``dom -> cod`` with ``label(x) <= label(map(x))`` everywhere."""

    __slots__ = ("dom", "cod", "vmap", "emap", "_hash")

    def __init__(self, dom: Graph, cod: Graph, vmap: Mapping[str, str],
                 emap: Mapping[str, str] = None, *, check: bool = True):
        self.dom = dom
        self.cod = cod
        self.vmap = dict(vmap)
        self.emap = dict(emap or {})
        self._hash = None
        if check:
            self._validate()

    def _validate(self):
        dom, cod = self.dom, self.cod
        if dom.lattice != cod.lattice:
            raise LatticeMismatch("domain and codomain use different lattices")
        lat = dom.lattice
        if set(self.vmap) != set(dom.vertices):
            raise InvalidMorphism("vertex map is not total on the domain")
        if set(self.emap) != set(dom.edges):
            raise InvalidMorphism("edge map is not total on the domain")
        for v, w in self.vmap.items():
            if not cod.has_vertex(w):
                raise InvalidMorphism(f"vertex {v!r} maps outside the codomain")
            if not lat.leq(dom.vlabel(v), cod.vlabel(w)):
                raise InvalidMorphism(f"vertex {v!r} label decreases under the map")
        for e, f in self.emap.items():
            if not cod.has_edge(f):
                raise InvalidMorphism(f"edge {e!r} maps outside the codomain")
            s, t, lab = dom.edge(e)
            s2, t2, lab2 = cod.edge(f)
            if self.vmap[s] != s2 or self.vmap[t] != t2:
                raise InvalidMorphism(f"edge {e!r} does not commute with source/target")
            if not lat.leq(lab, lab2):
                raise InvalidMorphism(f"edge {e!r} label decreases under the map")

    def __call__(self, x: str) -> str:
        if x in self.vmap:
            return self.vmap[x]
        return self.emap[x]

    def v(self, x: str) -> str:
        return self.vmap[x]

    def e(self, x: str) -> str:
        return self.emap[x]

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.vmap == other.vmap and self.emap == other.emap
                and self.dom == other.dom and self.cod == other.cod)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(sorted(self.vmap.items())), tuple(sorted(self.emap.items()))))
        return self._hash

    def same_maps(self, other: "Morphism") -> bool:
        """Equality of the underlying maps, ignoring domain/codomain identity checks."""
        return self.vmap == other.vmap and self.emap == other.emap

    def key(self) -> tuple:
        return (tuple(sorted(self.vmap.items())), tuple(sorted(self.emap.items())))

    def __repr__(self):
        vs = ", ".join(f"{a}->{b}" for a, b in self.vmap.items())
        es = ", ".join(f"{a}->{b}" for a, b in self.emap.items())
        return f"Morphism(V[{vs}], E[{es}])"

    def then(self, g: "Morphism") -> "Morphism":
        """``g o self``."""
        return compose(g, self)


def identity(G: Graph) -> Morphism:
    return Morphism(G, G, {v: v for v in G.vertices}, {e: e for e in G.edges}, check=False)


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g o f``: first ``f``, then ``g``."""
    if f.cod != g.dom:
        raise ComposabilityMismatch("codomain of f differs from domain of g")
    return Morphism(f.dom, g.cod, {v: g.vmap[w] for v, w in f.vmap.items()},
                    {e: g.emap[d] for e, d in f.emap.items()}, check=False)


def compose_all(*fs: Morphism) -> Morphism:
    """``compose_all(h, g, f) == h o g o f``."""
    out = fs[-1]
    for g in reversed(fs[:-1]):
        out = compose(g, out)
    return out


def inclusion(sub: Graph, G: Graph) -> Morphism:
    return Morphism(sub, G, {v: v for v in sub.vertices}, {e: e for e in sub.edges})


# -- morphism classes ------------------------------------------------------

def _injective(d: dict) -> bool:
    return len(set(d.values())) == len(d)


def is_mono(f: Morphism) -> bool:
    return _injective(f.vmap) and _injective(f.emap)


def is_epi(f: Morphism) -> bool:
    return (set(f.vmap.values()) == set(f.cod.vertices)
            and set(f.emap.values()) == set(f.cod.edges))


def is_label_preserving(f: Morphism) -> bool:
    dom, cod = f.dom, f.cod
    return (all(dom.vlabel(v) == cod.vlabel(w) for v, w in f.vmap.items())
            and all(dom.elabel(e) == cod.elabel(d) for e, d in f.emap.items()))


def is_regular_mono(f: Morphism) -> bool:
    return is_mono(f) and is_label_preserving(f)


def is_iso(f: Morphism) -> bool:
    return is_mono(f) and is_epi(f) and is_label_preserving(f)


def inverse(f: Morphism) -> Morphism:
    if not is_iso(f):
        raise InvalidMorphism("morphism is not an isomorphism")
    return Morphism(f.cod, f.dom, {w: v for v, w in f.vmap.items()},
                    {d: e for e, d in f.emap.items()}, check=False)


def commutes(f1: Morphism, f2: Morphism, g1: Morphism, g2: Morphism) -> bool:
    """Whether ``f2 o f1 == g2 o g1`` as maps."""
    a = compose(f2, f1)
    b = compose(g2, g1)
    return a.dom == b.dom and a.cod == b.cod and a.same_maps(b)


# -- patch decomposition ---------------------------------------------------

@dataclass(frozen=True)
class MatchContext:
    match: Graph
    context: Graph
    patch: frozenset


def image(f: Morphism) -> Graph:
    """The image of ``f`` as a subgraph of its codomain."""
    return f.cod.subgraph(set(f.vmap.values()), set(f.emap.values()))


def patch_decomposition(x: Morphism) -> MatchContext:
    G = x.cod
    M = image(x)
    cv = [v for v in G.vertices if not M.has_vertex(v)]
    cvs = set(cv)
    ce = [e for e in G.edges if G.src(e) in cvs and G.tgt(e) in cvs]
    C = G.subgraph(cv, ce)
    J = frozenset(e for e in G.edges if not M.has_edge(e) and not C.has_edge(e))
    return MatchContext(M, C, J)
