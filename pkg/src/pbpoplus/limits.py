"""Pullbacks, pushouts, mediating morphisms, factorizations and quotients."""
from __future__ import annotations

from typing import Iterator

from .errors import (LatticeMismatch, NoMediator, NonHeytingLattice, NotACone,
                     ComposabilityMismatch)
from .graph import Graph, Morphism, compose, image, is_iso
from .search import IsoBucket, enumerate_morphisms


def _same_lattice(*fs: Morphism):
    lat = fs[0].dom.lattice
    for f in fs:
        if f.dom.lattice != lat or f.cod.lattice != lat:
            raise LatticeMismatch("morphisms use different lattices")
    return lat


def pair_id(a: str, b: str) -> str:
    return f"({a}|{b})"


def pullback(f: Morphism, g: Morphism):
    """Canonical pullback of the cospan ``A -f-> C <-g- B``.

    Returns ``(P, p1, p2)``. Elements of P are the pairs ``(a|b)`` with
    ``f(a) == g(b)``, labeled by the meet of the two labels.
    """
    lat = _same_lattice(f, g)
    if f.cod != g.cod:
        raise ComposabilityMismatch("pullback needs a common codomain")
    A, B = f.dom, g.dom
    by_c: dict = {}
    for b in B.vertices:
        by_c.setdefault(g.vmap[b], []).append(b)
    vl, p1v, p2v = {}, {}, {}
    for a in A.vertices:
        for b in by_c.get(f.vmap[a], ()):
            p = pair_id(a, b)
            vl[p] = lat.meet2(A.vlabel(a), B.vlabel(b))
            p1v[p], p2v[p] = a, b
    by_ce: dict = {}
    for d in B.edges:
        by_ce.setdefault(g.emap[d], []).append(d)
    ed, p1e, p2e = {}, {}, {}
    for e in A.edges:
        sa, ta, la = A.edge(e)
        for d in by_ce.get(f.emap[e], ()):
            sb, tb, lb = B.edge(d)
            p = pair_id(e, d)
            ed[p] = (pair_id(sa, sb), pair_id(ta, tb), lat.meet2(la, lb))
            p1e[p], p2e[p] = e, d
    P = Graph._trusted(lat, vl, ed)
    return P, Morphism(P, A, p1v, p1e, check=False), Morphism(P, B, p2v, p2e, check=False)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx

    def classes(self) -> list:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return [sorted(v) for v in out.values()]


def class_id(members) -> str:
    return "{" + ",".join(sorted(members)) + "}"


def pushout(f: Morphism, g: Morphism):
    """Canonical pushout of the span ``B <-f- A -g-> C``.

    Returns ``(Q, q1, q2)``. Q is ``B + C`` modulo the equivalence generated
    by ``f(a) ~ g(a)``; members are tagged ``b:``/``c:`` and each class is
    named by its sorted members and labeled by their join.
    """
    lat = _same_lattice(f, g)
    if f.dom != g.dom:
        raise ComposabilityMismatch("pushout needs a common domain")
    B, C = f.cod, g.cod
    uv = _UnionFind([f"b:{x}" for x in B.vertices] + [f"c:{x}" for x in C.vertices])
    for a in f.dom.vertices:
        uv.union(f"b:{f.vmap[a]}", f"c:{g.vmap[a]}")
    ue = _UnionFind([f"b:{x}" for x in B.edges] + [f"c:{x}" for x in C.edges])
    for a in f.dom.edges:
        ue.union(f"b:{f.emap[a]}", f"c:{g.emap[a]}")

    def lab_v(t):
        return B.vlabel(t[2:]) if t[0] == "b" else C.vlabel(t[2:])

    def edge_of(t):
        return B.edge(t[2:]) if t[0] == "b" else C.edge(t[2:])

    vname, vl = {}, {}
    for cls in uv.classes():
        cid = class_id(cls)
        vl[cid] = lat.join(lab_v(t) for t in cls)
        for t in cls:
            vname[t] = cid
    ename, ed = {}, {}
    for cls in ue.classes():
        cid = class_id(cls)
        t0 = cls[0]
        s, t, _ = edge_of(t0)
        ed[cid] = (vname[f"{t0[0]}:{s}"], vname[f"{t0[0]}:{t}"],
                   lat.join(edge_of(x)[2] for x in cls))
        for x in cls:
            ename[x] = cid
    Q = Graph._trusted(lat, vl, ed)
    q1 = Morphism(B, Q, {x: vname[f"b:{x}"] for x in B.vertices},
                  {x: ename[f"b:{x}"] for x in B.edges}, check=False)
    q2 = Morphism(C, Q, {x: vname[f"c:{x}"] for x in C.vertices},
                  {x: ename[f"c:{x}"] for x in C.edges}, check=False)
    return Q, q1, q2


def rename_codomain(Q: Graph, legs, vnames: dict, enames: dict):
    """Rename elements of ``Q`` and re-target every morphism in ``legs``."""
    Q2 = Q.renamed(vnames, enames)
    out = [Morphism(h.dom, Q2, {x: vnames.get(y, y) for x, y in h.vmap.items()},
                    {x: enames.get(y, y) for x, y in h.emap.items()}, check=False)
           for h in legs]
    return Q2, out


# -- mediating morphisms ---------------------------------------------------

def _maps_equal(a: Morphism, b: Morphism) -> bool:
    return a.same_maps(b)


def mediating_into_pullback(f: Morphism, g: Morphism, p1: Morphism, p2: Morphism,
                            x1: Morphism, x2: Morphism) -> Morphism:
    """The unique ``u: X -> P`` with ``p1 u = x1`` and ``p2 u = x2``.

    ``(P, p1, p2)`` is a pullback of ``A -f-> C <-g- B`` and ``(x1, x2)`` a
    cone from X.
    """
    if x1.dom != x2.dom or x1.cod != f.dom or x2.cod != g.dom:
        raise NotACone("cone legs do not match the cospan")
    if not _maps_equal(compose(f, x1), compose(g, x2)):
        raise NotACone("cone does not commute")
    P, X = p1.dom, x1.dom
    lat = P.lattice
    vidx: dict = {}
    for p in P.vertices:
        vidx.setdefault((p1.vmap[p], p2.vmap[p]), []).append(p)
    eidx: dict = {}
    for p in P.edges:
        eidx.setdefault((p1.emap[p], p2.emap[p]), []).append(p)
    vmap, emap = {}, {}
    for x in X.vertices:
        cands = [p for p in vidx.get((x1.vmap[x], x2.vmap[x]), ())
                 if lat.leq(X.vlabel(x), P.vlabel(p))]
        if len(cands) != 1:
            raise NoMediator(f"vertex {x!r} has {len(cands)} admissible images in the pullback")
        vmap[x] = cands[0]
    for x in X.edges:
        s, t, lab = X.edge(x)
        cands = [p for p in eidx.get((x1.emap[x], x2.emap[x]), ())
                 if lat.leq(lab, P.elabel(p)) and P.src(p) == vmap[s] and P.tgt(p) == vmap[t]]
        if len(cands) != 1:
            raise NoMediator(f"edge {x!r} has {len(cands)} admissible images in the pullback")
        emap[x] = cands[0]
    return Morphism(X, P, vmap, emap, check=False)


def mediating_from_pushout(f: Morphism, g: Morphism, q1: Morphism, q2: Morphism,
                           y1: Morphism, y2: Morphism) -> Morphism:
    """The unique ``v: Q -> Y`` with ``v q1 = y1`` and ``v q2 = y2``."""
    if y1.cod != y2.cod or y1.dom != f.cod or y2.dom != g.cod:
        raise NotACone("cocone legs do not match the span")
    if not _maps_equal(compose(y1, f), compose(y2, g)):
        raise NotACone("cocone does not commute")
    Q, Y = q1.cod, y1.cod
    lat = Q.lattice
    vmap, emap = {}, {}
    for q, y, is_v in ((q1, y1, True), (q2, y2, True), (q1, y1, False), (q2, y2, False)):
        src, dst = (q.vmap, y.vmap) if is_v else (q.emap, y.emap)
        target = vmap if is_v else emap
        for x, qx in src.items():
            if target.setdefault(qx, dst[x]) != dst[x]:
                raise NoMediator(f"{qx!r} would need two different images")
    if set(vmap) != set(Q.vertices) or set(emap) != set(Q.edges):
        raise NoMediator("pushout legs are not jointly surjective; mediator not unique")
    for q, y in vmap.items():
        if not lat.leq(Q.vlabel(q), Y.vlabel(y)):
            raise NoMediator(f"vertex {q!r} label would decrease")
    for q, y in emap.items():
        if not lat.leq(Q.elabel(q), Y.elabel(y)):
            raise NoMediator(f"edge {q!r} label would decrease")
        if Y.src(y) != vmap[Q.src(q)] or Y.tgt(y) != vmap[Q.tgt(q)]:
            raise NoMediator(f"edge {q!r} endpoints disagree")
    return Morphism(Q, Y, vmap, emap, check=False)


# -- square verifiers --------------------------------------------------------

def is_pullback_square(f: Morphism, g: Morphism, p1: Morphism, p2: Morphism) -> bool:
    """Whether ``P -p1-> A -f-> C`` / ``P -p2-> B -g-> C`` is a pullback."""
    if f.cod != g.cod or p1.dom != p2.dom or p1.cod != f.dom or p2.cod != g.dom:
        return False
    if not _maps_equal(compose(f, p1), compose(g, p2)):
        return False
    P0, c1, c2 = pullback(f, g)
    u = mediating_into_pullback(f, g, c1, c2, p1, p2)
    return is_iso(u)


def is_pushout_square(f: Morphism, g: Morphism, q1: Morphism, q2: Morphism) -> bool:
    """Whether ``A -f-> B -q1-> Q`` / ``A -g-> C -q2-> Q`` is a pushout."""
    if f.dom != g.dom or q1.cod != q2.cod or q1.dom != f.cod or q2.dom != g.cod:
        return False
    if not _maps_equal(compose(q1, f), compose(q2, g)):
        return False
    Q0, c1, c2 = pushout(f, g)
    v = mediating_from_pushout(f, g, c1, c2, q1, q2)
    return is_iso(v)


def is_pullback_square_slow(f, g, p1, p2, *, max_vertices: int = 2, max_edges: int = 1) -> bool:
    """Audit verifier: test the universal property against every cone from a
    bounded set of test graphs (all graphs up to the given size).

    Bounded graphs containing a single vertex or a single edge probe every
    element and label, so the default bound already decides the property.
    """
    from .gen import all_graphs

    if not _maps_equal(compose(f, p1), compose(g, p2)):
        return False
    for X in all_graphs(f.dom.lattice, max_vertices, max_edges):
        for x1 in enumerate_morphisms(X, f.dom):
            for x2 in enumerate_morphisms(X, g.dom):
                if not _maps_equal(compose(f, x1), compose(g, x2)):
                    continue
                n = sum(1 for u in enumerate_morphisms(X, p1.dom)
                        if _maps_equal(compose(p1, u), x1) and _maps_equal(compose(p2, u), x2))
                if n != 1:
                    return False
    return True


def is_pushout_square_slow(f, g, q1, q2, *, max_vertices: int = 2, max_edges: int = 1) -> bool:
    """Audit verifier for pushouts against all cocones into bounded test graphs.

    Unlike the pullback audit this is only a necessary check, since cocones
    into small graphs cannot separate every pair of elements.
    """
    from .gen import all_graphs

    if not _maps_equal(compose(q1, f), compose(q2, g)):
        return False
    for Y in all_graphs(f.dom.lattice, max_vertices, max_edges):
        for y1 in enumerate_morphisms(f.cod, Y):
            for y2 in enumerate_morphisms(g.cod, Y):
                if not _maps_equal(compose(y1, f), compose(y2, g)):
                    continue
                n = sum(1 for v in enumerate_morphisms(q1.cod, Y)
                        if _maps_equal(compose(v, q1), y1) and _maps_equal(compose(v, q2), y2))
                if n != 1:
                    return False
    return True


# -- factorization and quotients ---------------------------------------------

def epi_regmono_factorize(f: Morphism):
    """``f = m o e`` with ``e`` epi and ``m`` a regular mono (image inclusion)."""
    if not f.dom.lattice.is_heyting():
        raise NonHeytingLattice("epi/regular-mono factorization needs a Heyting lattice")
    I = image(f)
    e = Morphism(f.dom, I, f.vmap, f.emap, check=False)
    m = Morphism(I, f.cod, {v: v for v in I.vertices}, {x: x for x in I.edges}, check=False)
    return e, m


def set_partitions(items: list) -> Iterator[list]:
    """All set partitions of ``items`` (restricted growth order)."""
    n = len(items)
    if n == 0:
        yield []
        return
    labels = [0] * n

    def rec(i, k):
        if i == n:
            blocks = [[] for _ in range(k)]
            for x, b in zip(items, labels):
                blocks[b].append(x)
            yield blocks
            return
        for b in range(k + 1):
            labels[i] = b
            yield from rec(i + 1, max(k, b + 1))

    yield from rec(0, 0)


def quotient(L: Graph, vblocks: list, eblocks: list) -> Morphism:
    """The epi collapsing the given vertex and edge blocks; labels joined."""
    lat = L.lattice
    vname = {}
    vl = {}
    for blk in vblocks:
        cid = blk[0] if len(blk) == 1 else "+".join(sorted(blk))
        vl[cid] = lat.join(L.vlabel(v) for v in blk)
        for v in blk:
            vname[v] = cid
    ename, ed = {}, {}
    for blk in eblocks:
        cid = blk[0] if len(blk) == 1 else "+".join(sorted(blk))
        s, t, _ = L.edge(blk[0])
        ed[cid] = (vname[s], vname[t], lat.join(L.elabel(e) for e in blk))
        for e in blk:
            ename[e] = cid
    Q = Graph(lat, vl, ed)
    return Morphism(L, Q, vname, ename, check=False)


def _edge_partitions(L: Graph, vname: dict) -> Iterator[list]:
    groups: dict = {}
    for e in L.edges:
        s, t, _ = L.edge(e)
        groups.setdefault((vname[s], vname[t]), []).append(e)
    glist = [groups[k] for k in sorted(groups)]

    def rec(i):
        if i == len(glist):
            yield []
            return
        for parts in set_partitions(glist[i]):
            for rest in rec(i + 1):
                yield parts + rest

    yield from rec(0)


def enumerate_quotients(L: Graph, *, dedupe: bool = True) -> Iterator[Morphism]:
    """Epis out of ``L`` with joined labels, one per partition pair.

    With ``dedupe`` (the default) only one representative per codomain
    isomorphism class is emitted.
    """
    seen = IsoBucket() if dedupe else None
    for vblocks in set_partitions(list(L.vertices)):
        vname = {v: "+".join(sorted(b)) for b in vblocks for v in b}
        for eblocks in _edge_partitions(L, vname):
            e = quotient(L, vblocks, eblocks)
            if seen is not None and not seen.add(e.cod):
                continue
            yield e
