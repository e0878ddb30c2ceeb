"""Morphism enumeration and isomorphism testing."""
from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, Mapping

import numpy as np

from . import _kernels
from .errors import LatticeMismatch
from .graph import Graph, Morphism

CONSTRAINTS = ("any", "mono", "regular_mono", "iso")


def _vertex_order(A: Graph) -> list:
    deg = {v: 0 for v in A.vertices}
    for s, t, _ in (A.edge(e) for e in A.edges):
        deg[s] += 1
        deg[t] += 1
    return sorted(A.vertices, key=lambda v: (-deg[v], v))


def _degrees(G: Graph):
    out = {v: 0 for v in G.vertices}
    inn = {v: 0 for v in G.vertices}
    for e in G.edges:
        s, t, _ = G.edge(e)
        out[s] += 1
        inn[t] += 1
    return out, inn


def enumerate_morphisms(A: Graph, B: Graph, constraint: str = "any",
                        partial_assignment: Mapping[str, str] | None = None,
                        *, allowed_vertices: Mapping[str, Iterable[str]] | None = None,
                        allowed_edges: Mapping[str, Iterable[str]] | None = None,
                        backend: str | None = None) -> Iterator[Morphism]:
    """Yield every morphism ``A -> B`` satisfying ``constraint`` exactly once.

    ``partial_assignment`` fixes images of some vertices and/or edges of ``A``.
    ``allowed_vertices`` / ``allowed_edges`` restrict the images of the listed
    vertices / edges to the given ids.
    The order is deterministic: vertices are fixed in (degree-descending, id)
    order with candidates in id order, then edges in id order.
    """
    if constraint not in CONSTRAINTS:
        raise ValueError(f"unknown constraint {constraint!r}")
    if A.lattice != B.lattice:
        raise LatticeMismatch("graphs use different lattices")
    if constraint == "iso" and (A.num_vertices != B.num_vertices
                                or A.num_edges != B.num_edges):
        return
    injective = constraint != "any"
    exact = constraint in ("regular_mono", "iso")
    seed = dict(partial_assignment or {})
    vseed = {k: v for k, v in seed.items() if A.has_vertex(k)}
    eseed = {k: v for k, v in seed.items() if A.has_edge(k)}
    # an edge seed pins its endpoints
    for e, d in eseed.items():
        if not B.has_edge(d):
            return
        for a, b in ((A.src(e), B.src(d)), (A.tgt(e), B.tgt(d))):
            if vseed.setdefault(a, b) != b:
                return
    for a, b in vseed.items():
        if not B.has_vertex(b):
            return

    lat = A.lattice
    order_m = lat.order_matrix
    _, a_src, a_tgt, a_vl, a_el = A.arrays()
    bidx, b_src, b_tgt, b_vl, b_el = B.arrays()
    bverts = B.vertices
    if exact:
        vcompat = a_vl[:, None] == b_vl[None, :]
        lcompat = a_el[:, None] == b_el[None, :]
    else:
        vcompat = order_m[a_vl][:, b_vl]
        lcompat = order_m[a_el][:, b_el]
    avids = {v: i for i, v in enumerate(A.vertices)}
    if injective:
        aout, ain = _degrees(A)
        bout, bin_ = _degrees(B)
        bo = np.array([bout[v] for v in bverts], dtype=np.int64)
        bi = np.array([bin_[v] for v in bverts], dtype=np.int64)
        ao = np.array([aout[v] for v in A.vertices], dtype=np.int64)
        ai = np.array([ain[v] for v in A.vertices], dtype=np.int64)
        vcompat = vcompat & (ao[:, None] <= bo[None, :]) & (ai[:, None] <= bi[None, :])
    if allowed_vertices:
        vcompat = vcompat.copy()
        for v, ok in allowed_vertices.items():
            row = np.zeros(len(bverts), dtype=bool)
            row[[bidx[b] for b in ok if B.has_vertex(b)]] = True
            vcompat[avids[v]] &= row
    if allowed_edges:
        lcompat = lcompat.copy()
        aeidx = {e: i for i, e in enumerate(A.edges)}
        beidx = {d: j for j, d in enumerate(B.edges)}
        for e, ok in allowed_edges.items():
            row = np.zeros(B.num_edges, dtype=bool)
            row[[beidx[d] for d in ok if B.has_edge(d)]] = True
            lcompat[aeidx[e]] &= row

    order = _vertex_order(A)
    level = {v: k for k, v in enumerate(order)}
    cand_lists = []
    for v in order:
        if v in vseed:
            j = bidx[vseed[v]]
            cand_lists.append([j] if vcompat[avids[v], j] else [])
        else:
            cand_lists.append(np.flatnonzero(vcompat[avids[v]]))
    nE, nB = A.num_edges, B.num_vertices
    ecompat = np.zeros((nE, nB, nB), dtype=bool)
    for j in range(B.num_edges):
        ecompat[:, b_src[j], b_tgt[j]] |= lcompat[:, j]
    aedges = A.edges
    esrc_lvl = [level[A.src(e)] for e in aedges]
    etgt_lvl = [level[A.tgt(e)] for e in aedges]
    close_lists = [[] for _ in order]
    for i in range(nE):
        close_lists[max(esrc_lvl[i], etgt_lvl[i])].append(i)
    problem = _kernels.SearchProblem(nB, cand_lists, close_lists, esrc_lvl, etgt_lvl,
                                     ecompat, injective)

    bedges = B.edges
    bedge_idx = {d: j for j, d in enumerate(bedges)}
    for row in _kernels.solve(problem, backend):
        vmap = {v: bverts[row[level[v]]] for v in order}
        options = []
        for i, e in enumerate(aedges):
            if e in eseed:
                d = eseed[e]
                opts = [d] if lcompat[i, bedge_idx[d]] else []
            else:
                opts = [d for d in B.edges_between(vmap[A.src(e)], vmap[A.tgt(e)])
                        if lcompat[i, bedge_idx[d]]]
            if not opts:
                break
            options.append(opts)
        else:
            if injective:
                yield from _injective_edges(A, B, vmap, aedges, options)
            else:
                for choice in product(*options):
                    yield Morphism(A, B, vmap, dict(zip(aedges, choice)), check=False)


def _injective_edges(A, B, vmap, aedges, options):
    n = len(aedges)
    chosen = [None] * n
    used = set()

    def rec(i):
        if i == n:
            yield Morphism(A, B, vmap, dict(zip(aedges, chosen)), check=False)
            return
        for d in options[i]:
            if d in used:
                continue
            used.add(d)
            chosen[i] = d
            yield from rec(i + 1)
            used.discard(d)

    yield from rec(0)


def count_morphisms(A: Graph, B: Graph, constraint: str = "any", **kw) -> int:
    return sum(1 for _ in enumerate_morphisms(A, B, constraint, **kw))


def _invariant(G: Graph) -> tuple:
    lat = G.lattice
    out, inn = _degrees(G)
    vs = sorted((lat.index(G.vlabel(v)), out[v], inn[v]) for v in G.vertices)
    es = sorted((lat.index(G.elabel(e)), G.src(e) == G.tgt(e)) for e in G.edges)
    return (tuple(vs), tuple(es))


def find_isomorphism(A: Graph, B: Graph) -> Morphism | None:
    if A.lattice != B.lattice or _invariant(A) != _invariant(B):
        return None
    return next(enumerate_morphisms(A, B, "iso"), None)


def are_isomorphic(A: Graph, B: Graph) -> bool:
    return find_isomorphism(A, B) is not None


def iso_invariant(G: Graph) -> tuple:
    """A hashable value equal for isomorphic graphs (not a complete invariant)."""
    return _invariant(G)


class IsoBucket:
    """Set of graphs up to isomorphism, bucketed by :func:`iso_invariant`."""

    def __init__(self):
        self._buckets: dict = {}

    def find(self, G: Graph):
        for H in self._buckets.get(_invariant(G), ()):
            if are_isomorphic(G, H):
                return H
        return None

    def add(self, G: Graph) -> bool:
        """Add ``G``; return False if an isomorphic graph was already present."""
        if self.find(G) is not None:
            return False
        self._buckets.setdefault(_invariant(G), []).append(G)
        return True

    def __len__(self):
        return sum(len(b) for b in self._buckets.values())

    def __iter__(self):
        for b in self._buckets.values():
            yield from b
