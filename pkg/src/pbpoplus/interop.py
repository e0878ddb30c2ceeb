"""Reference engines for DPO, AGREE and PBPO, and their translations into PBPO+."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .classifier import classify_object, classify_partial, materialize
from .errors import (LatticeMismatch, NonHeytingLattice, NotAMatch, NotCanonical,
                     NotRegularMono)
from .graph import Graph, Morphism, compose, identity, is_regular_mono
from .limits import (is_pullback_square, is_pushout_square,
                     mediating_into_pullback, pullback, pushout, quotient, set_partitions,
                     _edge_partitions)
from .rewrite import Rule, validate_rule
from .search import enumerate_morphisms


def _require_heyting(lat, what):
    if not lat.is_heyting():
        raise NonHeytingLattice(f"{what} needs a Heyting lattice")


@dataclass(frozen=True, eq=False)
class DpoRule:
    L: Graph
    K: Graph
    R: Graph
    l: Morphism
    r: Morphism

    def __post_init__(self):
        if not is_regular_mono(self.l):
            raise NotRegularMono("the left leg of a DPO rule must be a regular mono")


@dataclass(frozen=True, eq=False)
class AgreeRule:
    L: Graph
    K: Graph
    R: Graph
    Kp: Graph
    l: Morphism
    r: Morphism
    tK: Morphism

    def __post_init__(self):
        if not is_regular_mono(self.tK):
            raise NotRegularMono("tK of an AGREE rule must be a regular mono")


@dataclass(frozen=True, eq=False)
class PbpoRule:
    L: Graph
    K: Graph
    R: Graph
    Lp: Graph
    Kp: Graph
    Rp: Graph
    l: Morphism
    r: Morphism
    tL: Morphism
    tK: Morphism
    tR: Morphism
    lp: Morphism
    rp: Morphism

    def check_canonical(self) -> "PbpoRule":
        if not compose(self.tL, self.l).same_maps(compose(self.lp, self.tK)):
            raise NotCanonical("left square does not commute")
        if not compose(self.tR, self.r).same_maps(compose(self.rp, self.tK)):
            raise NotCanonical("right square does not commute")
        if not is_pullback_square(self.tL, self.lp, self.l, self.tK):
            raise NotCanonical("left square is not a pullback")
        if not is_pushout_square(self.tK, self.r, self.rp, self.tR):
            raise NotCanonical("right square is not a pushout")
        return self

    @classmethod
    def from_left(cls, L, K, R, Lp, Kp, l, r, tL, tK, lp) -> "PbpoRule":
        """Complete a left square and ``r`` by the canonical right pushout."""
        Rp, rp, tR = pushout(tK, r)
        return cls(L, K, R, Lp, Kp, Rp, l, r, tL, tK, tR, lp, rp)


# -- DPO ---------------------------------------------------------------------------

def dpo_step(rule: DpoRule, G: Graph, m: Morphism):
    """``(D, GR)`` for a DPO step, or ``None`` if the pushout complement is missing."""
    lat = G.lattice
    if len(lat) != 1:
        raise LatticeMismatch("the DPO reference engine is restricted to the unit lattice")
    if not is_regular_mono(m):
        raise NotRegularMono("DPO matches must be regular monos")
    kept_v = {m.vmap[rule.l.vmap[k]] for k in rule.K.vertices}
    kept_e = {m.emap[rule.l.emap[k]] for k in rule.K.edges}
    del_v = set(m.vmap.values()) - kept_v
    del_e = set(m.emap.values()) - kept_e
    for e in G.edges:
        if e in del_e:
            continue
        s, t, _ = G.edge(e)
        if s in del_v or t in del_v:
            return None  # dangling edge
    D = G.subgraph([v for v in G.vertices if v not in del_v],
                   [e for e in G.edges if e not in del_e])
    k = Morphism(rule.K, D, {x: m.vmap[rule.l.vmap[x]] for x in rule.K.vertices},
                 {x: m.emap[rule.l.emap[x]] for x in rule.K.edges})
    GR, _, _ = pushout(rule.r, k)
    return D, GR


def translate_dpo(rule: DpoRule) -> Rule:
    _require_heyting(rule.L.lattice, "translate_dpo")
    cl = classify_object(rule.K)
    Lp, tL, lp = pushout(rule.l, cl.eta)
    return validate_rule(Rule(rule.L, rule.K, rule.R, Lp, cl.T, rule.l, rule.r, tL, cl.eta, lp,
                              name="dpo"))


# -- AGREE -------------------------------------------------------------------------

def agree_step(rule: AgreeRule, G: Graph, m: Morphism) -> Graph:
    _require_heyting(G.lattice, "agree_step")
    if not is_regular_mono(m):
        raise NotRegularMono("AGREE matches must be regular monos")
    cm = classify_partial(m, identity(rule.L))
    ctl = classify_partial(rule.tK, rule.l)
    GK, gL, up = pullback(cm, ctl)
    u = mediating_into_pullback(cm, ctl, gL, up, compose(m, rule.l), rule.tK)
    GR, _, _ = pushout(rule.r, u)
    return GR


def translate_agree(rule: AgreeRule) -> Rule:
    _require_heyting(rule.L.lattice, "translate_agree")
    cl = classify_object(rule.L)
    lp = classify_partial(rule.tK, rule.l)
    return validate_rule(Rule(rule.L, rule.K, rule.R, cl.T, rule.Kp, rule.l, rule.r, cl.eta,
                              rule.tK, lp, name="agree"))


# -- PBPO --------------------------------------------------------------------------

@dataclass
class PbpoStep:
    GK: Graph
    GR: Graph
    gL: Morphism
    up: Morphism
    u: Morphism
    gR: Morphism
    w: Morphism


def pbpo_step(rule: PbpoRule, G: Graph, m: Morphism, alpha: Morphism, *,
              full: bool = False):
    """The PBPO step for a plain match ``tL = alpha o m``; returns G_R."""
    if m.cod != G or alpha.dom != G or not compose(alpha, m).same_maps(rule.tL):
        raise NotAMatch("tL != alpha o m")
    GK, gL, up = pullback(alpha, rule.lp)
    u = mediating_into_pullback(alpha, rule.lp, gL, up, compose(m, rule.l), rule.tK)
    GR, w, gR = pushout(rule.r, u)
    if full:
        return PbpoStep(GK, GR, gL, up, u, gR, w)
    return GR


def pbpo_matches(rule: PbpoRule, G: Graph):
    """Every PBPO match ``(m, alpha)`` with ``tL = alpha o m``."""
    tL = rule.tL
    for alpha in enumerate_morphisms(G, rule.Lp):
        pre_v, pre_e = {}, {}
        for g, y in alpha.vmap.items():
            pre_v.setdefault(y, []).append(g)
        for g, y in alpha.emap.items():
            pre_e.setdefault(y, []).append(g)
        av = {x: pre_v.get(tL.vmap[x], []) for x in rule.L.vertices}
        ae = {x: pre_e.get(tL.emap[x], []) for x in rule.L.edges}
        for m in enumerate_morphisms(rule.L, G, allowed_vertices=av, allowed_edges=ae):
            yield m, alpha


# -- compaction ----------------------------------------------------------------------

def _labelled_quotients(L: Graph, tL: Morphism):
    """Every epi ``e`` out of L (up to iso under L) through which tL factors.

    Yields ``(e, f)`` with ``tL = f o e``. Class labels range over the interval
    between the join of the class and the label of its tL image.
    """
    lat = L.lattice
    order = lat.order_matrix
    Lp = tL.cod
    for vblocks in set_partitions(list(L.vertices)):
        if any(len({tL.vmap[v] for v in b}) != 1 for b in vblocks):
            continue
        vname = {v: "+".join(sorted(b)) for b in vblocks for v in b}
        for eblocks in _edge_partitions(L, vname):
            if any(len({tL.emap[e] for e in b}) != 1 for b in eblocks):
                continue
            base = quotient(L, vblocks, eblocks)
            Le = base.cod
            slots = []
            for v in Le.vertices:
                top = Lp.vlabel(tL.vmap[_preimage(base, v, True)])
                slots.append(("v", v, _interval(lat, order, Le.vlabel(v), top)))
            for d in Le.edges:
                top = Lp.elabel(tL.emap[_preimage(base, d, False)])
                slots.append(("e", d, _interval(lat, order, Le.elabel(d), top)))
            for choice in product(*(s[2] for s in slots)):
                vl = {s[1]: c for s, c in zip(slots, choice) if s[0] == "v"}
                el = {s[1]: c for s, c in zip(slots, choice) if s[0] == "e"}
                Le2 = Le.relabeled(vl, el)
                e = Morphism(L, Le2, base.vmap, base.emap, check=False)
                fv = {base.vmap[x]: tL.vmap[x] for x in L.vertices}
                fe = {base.emap[x]: tL.emap[x] for x in L.edges}
                yield e, Morphism(Le2, Lp, fv, fe, check=False)


def _preimage(e: Morphism, y: str, vertex: bool) -> str:
    src = e.vmap if vertex else e.emap
    return next(x for x, z in src.items() if z == y)


def _interval(lat, order, lo, hi) -> list:
    i, j = lat.index(lo), lat.index(hi)
    return [lat.elements[k] for k in range(len(lat)) if order[i, k] and order[k, j]]


def compact_rule(rule: PbpoRule, e: Morphism, f: Morphism) -> Rule:
    """The compacted PBPO+ rule for the factorization ``tL = f o e``."""
    mat = materialize(f)
    Mp, lM, kM = pullback(mat.f_flat, rule.lp)
    Ke, le, tKe = pullback(mat.f_sharp, lM)
    el = compose(e, rule.l)
    k_to_mp = mediating_into_pullback(mat.f_flat, rule.lp, lM, kM,
                                      compose(mat.f_sharp, el), rule.tK)
    k_to_ke = mediating_into_pullback(mat.f_sharp, lM, le, tKe, el, k_to_mp)
    Re, re, _ = pushout(k_to_ke, rule.r)
    return Rule(e.cod, Ke, Re, mat.M, Mp, le, re, mat.f_sharp, tKe, lM, name="compact")


def compact_rules(rule: PbpoRule, mode: str = "full") -> list:
    """The compacted rules of a canonical PBPO rule, one per admissible epi."""
    if mode not in ("full", "iso_only"):
        raise ValueError(f"unknown mode {mode!r}")
    _require_heyting(rule.L.lattice, "compact_rules")
    rule.check_canonical()
    out = []
    if mode == "iso_only":
        out.append(compact_rule(rule, identity(rule.L), rule.tL))
        return out
    for e, f in _labelled_quotients(rule.L, rule.tL):
        out.append(compact_rule(rule, e, f))
    return out
