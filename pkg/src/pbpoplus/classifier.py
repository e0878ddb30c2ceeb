"""Regular-mono partial map classifier and materializations.

T(G) adds one top-labeled vertex ``_star`` and one top-labeled edge
``_undef(u|v)`` for every ordered pair of vertices of the extended vertex
set. A partial map, given as a span ``A <-m- X -f-> B`` with ``m`` a regular
mono, becomes the total map ``<m, f>: A -> T(B)`` that routes everything
outside ``m(X)`` into the added part.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidGraph, NonHeytingLattice, NotRegularMono, PullbackCertificateFailed
from .graph import Graph, Morphism, compose, identity, is_mono, is_regular_mono
from .limits import is_pullback_square
from .search import enumerate_morphisms

STAR = "_star"


def undefined_edge(u: str, v: str) -> str:
    return f"_undef({u}|{v})"


def _require_heyting(lat, what):
    if not lat.is_heyting():
        raise NonHeytingLattice(f"{what} needs a Heyting lattice")


@dataclass(frozen=True)
class ClassifierResult:
    T: Graph
    eta: Morphism
    star_vertex: str
    undefined_edges: frozenset


_cache: dict = {}


def classify_object(G: Graph) -> ClassifierResult:
    lat = G.lattice
    _require_heyting(lat, "the partial map classifier")
    hit = _cache.get(G)
    if hit is not None and hit.T.lattice == lat:
        return hit
    if G.has_vertex(STAR):
        raise InvalidGraph(f"vertex id {STAR!r} is reserved")
    vl = dict(G.vertex_items())
    vl[STAR] = lat.top
    ed = dict(G.edge_items())
    undef = []
    for u in vl:
        for v in vl:
            e = undefined_edge(u, v)
            if e in ed:
                raise InvalidGraph(f"edge id {e!r} is reserved")
            ed[e] = (u, v, lat.top)
            undef.append(e)
    T = Graph._trusted(lat, vl, ed)
    eta = Morphism(G, T, {v: v for v in G.vertices}, {e: e for e in G.edges}, check=False)
    res = ClassifierResult(T, eta, STAR, frozenset(undef))
    if len(_cache) > 256:
        _cache.clear()
    _cache[G] = res
    return res


def classify_partial(m: Morphism, f: Morphism, *, certify: bool = True) -> Morphism:
    """``<m, f>: A -> T(B)`` for the partial map ``A <-m- X -f-> B``."""
    if m.dom != f.dom:
        raise ValueError("m and f must share their domain")
    _require_heyting(m.dom.lattice, "classify_partial")
    if not is_regular_mono(m):
        raise NotRegularMono("the domain of definition must be a regular mono")
    A, B = m.cod, f.cod
    cl = classify_object(B)
    vmap = {v: STAR for v in A.vertices}
    for x, a in m.vmap.items():
        vmap[a] = f.vmap[x]
    emap = {}
    for x, a in m.emap.items():
        emap[a] = f.emap[x]
    for e in A.edges:
        if e not in emap:
            s, t, _ = A.edge(e)
            emap[e] = undefined_edge(vmap[s], vmap[t])
    phi = Morphism(A, cl.T, vmap, emap, check=False)
    if certify and not is_pullback_square(phi, cl.eta, m, f):
        raise PullbackCertificateFailed("classifying square is not a pullback")
    return phi


def classify_total(f: Morphism) -> Morphism:
    """``<id, f> = eta o f``."""
    return classify_partial(identity(f.dom), f)


def T_map(f: Morphism) -> Morphism:
    """The action of T on a morphism ``f: A -> B``, i.e. ``<eta_A, f>``."""
    return classify_partial(classify_object(f.dom).eta, f)


def classifying_morphisms_bruteforce(m: Morphism, f: Morphism) -> list:
    """Every ``phi: A -> T(B)`` whose square with ``eta_B`` is a pullback with legs m, f."""
    cl = classify_object(f.cod)
    target = compose(cl.eta, f)
    return [phi for phi in enumerate_morphisms(m.cod, cl.T)
            if compose(phi, m).same_maps(target) and is_pullback_square(phi, cl.eta, m, f)]


# -- materialization ---------------------------------------------------------

@dataclass(frozen=True)
class Materialization:
    M: Graph
    f_sharp: Morphism
    f_flat: Morphism


def extra_edge(eps: str, x: str, y: str) -> str:
    return f"({eps}|{x}|{y})"


def materialize(f: Morphism) -> Materialization:
    """Terminal factorization ``A -f_sharp-> M -f_flat-> B`` of ``f``."""
    A, B = f.dom, f.cod
    lat = A.lattice
    _require_heyting(lat, "materialization")
    vl, tau = {}, {}
    for x in A.vertices:
        vl[f"A:{x}"] = A.vlabel(x)
        tau[f"A:{x}"] = f.vmap[x]
    for y in B.vertices:
        vl[f"B:{y}"] = B.vlabel(y)
        tau[f"B:{y}"] = y
    ed, flat_e = {}, {}
    for e in A.edges:
        s, t, lab = A.edge(e)
        ed[f"A:{e}"] = (f"A:{s}", f"A:{t}", lab)
        flat_e[f"A:{e}"] = f.emap[e]
    for d in B.edges:
        s, t, lab = B.edge(d)
        ed[f"B:{d}"] = (f"B:{s}", f"B:{t}", lab)
        flat_e[f"B:{d}"] = d
    for x in vl:
        for y in vl:
            if not (x.startswith("A:") or y.startswith("A:")):
                continue
            for eps in B.edges_between(tau[x], tau[y]):
                eid = extra_edge(eps, x, y)
                ed[eid] = (x, y, B.elabel(eps))
                flat_e[eid] = eps
    M = Graph._trusted(lat, vl, ed)
    f_sharp = Morphism(A, M, {x: f"A:{x}" for x in A.vertices},
                       {e: f"A:{e}" for e in A.edges}, check=False)
    f_flat = Morphism(M, B, tau, flat_e, check=False)
    return Materialization(M, f_sharp, f_flat)


def materialization_beta(mat: Materialization, m: Morphism, alpha: Morphism) -> Morphism:
    """The mediating ``beta: C -> M`` for a factorization ``A -m-> C -alpha-> B``."""
    if not is_regular_mono(m):
        raise NotRegularMono("factorization must start with a regular mono")
    C = m.cod
    inv_v = {c: a for a, c in m.vmap.items()}
    inv_e = {c: a for a, c in m.emap.items()}
    vmap = {c: (f"A:{inv_v[c]}" if c in inv_v else f"B:{alpha.vmap[c]}") for c in C.vertices}
    emap = {}
    for c in C.edges:
        if c in inv_e:
            emap[c] = f"A:{inv_e[c]}"
        else:
            s, t, _ = C.edge(c)
            if s in inv_v or t in inv_v:
                emap[c] = extra_edge(alpha.emap[c], vmap[s], vmap[t])
            else:
                emap[c] = f"B:{alpha.emap[c]}"
    return Morphism(C, mat.M, vmap, emap)


def materialization_betas_bruteforce(mat: Materialization, m: Morphism, alpha: Morphism) -> list:
    """All ``beta: C -> M`` satisfying the pullback and triangle conditions."""
    out = []
    for beta in enumerate_morphisms(m.cod, mat.M):
        if not compose(mat.f_flat, beta).same_maps(alpha):
            continue
        if is_pullback_square(beta, mat.f_sharp, m, identity(m.dom)):
            out.append(beta)
    return out


# -- restricted classifiers ---------------------------------------------------

@dataclass(frozen=True)
class ClassifierCertificate:
    is_classifying: bool
    witness: Morphism | None
    reason: str


def restricted_classifier_certificate(tL: Morphism) -> ClassifierCertificate:
    _require_heyting(tL.dom.lattice, "restricted classifier certificate")
    if not is_regular_mono(tL):
        return ClassifierCertificate(False, None, "NotRegularMono")
    w = classify_partial(tL, identity(tL.dom))
    if is_mono(w):
        return ClassifierCertificate(True, w, "classifying")
    return ClassifierCertificate(False, w, "classifying arrow is not monic")
