"""PBPO+ rules, strong matches and rewrite steps."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import (CertificateFailure, ComposabilityMismatch, LatticeMismatch,
                     NonCommuting, NotAPullback, NotAStrongMatch)
from .graph import Graph, Morphism, compose, identity, inverse, is_iso, is_mono
from .limits import (is_pullback_square, is_pushout_square, mediating_from_pushout,
                     mediating_into_pullback, pullback, pushout, rename_codomain)
from .search import enumerate_morphisms


@dataclass(frozen=True, eq=False)
class Rule:
    """The five graphs and five morphisms of a PBPO+ rule.

    ``l: K -> L``, ``r: K -> R``, ``tL: L -> Lp``, ``tK: K -> Kp`` and
    ``lp: Kp -> Lp``. Construct freely, then call :func:`validate_rule`.
    """
    L: Graph
    K: Graph
    R: Graph
    Lp: Graph
    Kp: Graph
    l: Morphism
    r: Morphism
    tL: Morphism
    tK: Morphism
    lp: Morphism
    name: str = ""

    @property
    def lattice(self):
        return self.L.lattice

    def right_pushout(self):
        """``(Rp, rp, tR)``: the pushout of ``tK`` and ``r``."""
        Rp, rp, tR = pushout(self.tK, self.r)
        return Rp, rp, tR


def validate_rule(rule: Rule) -> Rule:
    graphs = (rule.L, rule.K, rule.R, rule.Lp, rule.Kp)
    lat = rule.L.lattice
    if any(G.lattice != lat for G in graphs):
        raise LatticeMismatch("rule graphs use different lattices")
    shape = ((rule.l, rule.K, rule.L), (rule.r, rule.K, rule.R), (rule.tL, rule.L, rule.Lp),
             (rule.tK, rule.K, rule.Kp), (rule.lp, rule.Kp, rule.Lp))
    for name, (f, d, c) in zip(("l", "r", "tL", "tK", "lp"), shape):
        if f.dom != d or f.cod != c:
            raise ComposabilityMismatch(f"morphism {name} has the wrong domain or codomain")
    if not compose(rule.tL, rule.l).same_maps(compose(rule.lp, rule.tK)):
        raise NonCommuting("tL o l != lp o tK")
    if not is_pullback_square(rule.tL, rule.lp, rule.l, rule.tK):
        raise NotAPullback("the left square of the rule is not a pullback")
    return rule


# -- strong matches ------------------------------------------------------------

def strong_match_from_alpha(rule: Rule, alpha: Morphism) -> Morphism | None:
    """The unique m making ``(m, alpha)`` a strong match, if there is one."""
    tL = rule.tL
    # cheap count filter: the pullback must have exactly |L| elements
    vfib = Counter(tL.vmap.values())
    if sum(vfib[w] for w in alpha.vmap.values()) != rule.L.num_vertices:
        return None
    efib = Counter(tL.emap.values())
    if sum(efib[w] for w in alpha.emap.values()) != rule.L.num_edges:
        return None
    P, p1, p2 = pullback(tL, alpha)
    if not is_iso(p1):
        return None
    return compose(p2, inverse(p1))


def find_strong_matches(rule: Rule, GL: Graph, match_constraint: str = "any", *,
                        mode: str = "alpha") -> Iterator[tuple[Morphism, Morphism]]:
    """Yield every strong match ``(m, alpha)`` of ``rule`` into ``GL``.

    ``mode="alpha"`` enumerates adherences and reads m off the pullback;
    ``mode="match"`` enumerates m first and then the adherences extending it.
    """
    if match_constraint not in ("any", "mono", "regular_mono"):
        raise ValueError(f"unknown match constraint {match_constraint!r}")
    if mode == "alpha":
        for alpha in enumerate_morphisms(GL, rule.Lp):
            m = strong_match_from_alpha(rule, alpha)
            if m is not None and _meets(m, match_constraint):
                yield m, alpha
    elif mode == "match":
        tL = rule.tL
        outside_v = [y for y in rule.Lp.vertices if y not in set(tL.vmap.values())]
        outside_e = [d for d in rule.Lp.edges if d not in set(tL.emap.values())]
        for m in enumerate_morphisms(rule.L, GL, match_constraint):
            # alpha agrees with tL on m(L) and avoids tL(L) elsewhere
            av = {g: outside_v for g in GL.vertices}
            ae = {g: outside_e for g in GL.edges}
            for x, g in m.vmap.items():
                av[g] = [tL.vmap[x]] if av[g] is outside_v or av[g] == [tL.vmap[x]] else []
            for x, g in m.emap.items():
                ae[g] = [tL.emap[x]] if ae[g] is outside_e or ae[g] == [tL.emap[x]] else []
            for alpha in enumerate_morphisms(GL, rule.Lp, "any", allowed_vertices=av,
                                             allowed_edges=ae):
                if not compose(alpha, m).same_maps(rule.tL):
                    continue
                m2 = strong_match_from_alpha(rule, alpha)
                if m2 is not None and m2.same_maps(m):
                    yield m, alpha
    else:
        raise ValueError(f"unknown mode {mode!r}")


def _meets(m: Morphism, constraint: str) -> bool:
    from .graph import is_regular_mono

    if constraint == "mono":
        return is_mono(m)
    if constraint == "regular_mono":
        return is_regular_mono(m)
    return True


def is_strong_match(rule: Rule, m: Morphism, alpha: Morphism) -> bool:
    if m.dom != rule.L or alpha.cod != rule.Lp or m.cod != alpha.dom:
        return False
    return is_pullback_square(rule.tL, alpha, identity(rule.L), m)


# -- steps -----------------------------------------------------------------------

@dataclass
class StepResult:
    GL: Graph
    GK: Graph
    GR: Graph
    m: Morphism
    alpha: Morphism
    gL: Morphism
    gR: Morphism
    u: Morphism
    up: Morphism
    w: Morphism
    Rp: Graph | None = None
    rp: Morphism | None = None
    tR: Morphism | None = None
    wp: Morphism | None = None
    certificates: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return bool(self.certificates) and all(self.certificates.values())


def _name_result(GL: Graph, gL: Morphism, GR: Graph, w: Morphism, gR: Morphism):
    """Give G_R readable ids: host elements that are neither copied nor merged keep theirs."""
    taken = set()
    names = []
    for kind in ("vmap", "emap"):
        pre_gk: dict = {}
        for x, g in getattr(gL, kind).items():
            pre_gk.setdefault(g, []).append(x)
        members: dict = {}
        for h, tag in ((w, "R"), (gR, "K")):
            for x, q in getattr(h, kind).items():
                members.setdefault(q, []).append((tag, x))
        out = {}
        for q in (GR.vertices if kind == "vmap" else GR.edges):
            ks = [x for tag, x in members.get(q, []) if tag == "K"]
            name = None
            # one host element, not copied: keep its id even if R touches it
            if len(ks) == 1:
                g = getattr(gL, kind)[ks[0]]
                if len(pre_gk[g]) == 1:
                    name = g
            if name is None:
                name = "po:" + q
            base, k = name, 1
            while name in taken:
                k += 1
                name = f"{base}#{k}"
            taken.add(name)
            out[q] = name
        names.append(out)
    return names[0], names[1]


def apply_step(rule: Rule, GL: Graph, m: Morphism, alpha: Morphism, *,
               with_rprime: bool = False, certify: bool = True,
               readable_ids: bool = True) -> StepResult:
    """Perform the rewrite step induced by the strong match ``(m, alpha)``."""
    if not is_strong_match(rule, m, alpha):
        raise NotAStrongMatch("(m, alpha) is not a strong match")
    GK, gL, up = pullback(alpha, rule.lp)
    u = mediating_into_pullback(alpha, rule.lp, gL, up, compose(m, rule.l), rule.tK)
    GR, w, gR = pushout(rule.r, u)
    if readable_ids:
        vn, en = _name_result(GL, gL, GR, w, gR)
        GR, (w, gR) = rename_codomain(GR, (w, gR), vn, en)
    res = StepResult(GL, GK, GR, m, alpha, gL, gR, u, up, w)
    if not rule.lattice.is_heyting():
        res.notes.append("non-Heyting lattice: class labels are joins without quasitopos guarantees")
    if with_rprime:
        Rp, rp, tR = rule.right_pushout()
        wp = mediating_from_pushout(rule.r, u, w, gR, tR, compose(rp, up))
        res.Rp, res.rp, res.tR, res.wp = Rp, rp, tR, wp
    if certify:
        res.certificates = step_certificates(rule, res)
        bad = [k for k, ok in res.certificates.items() if not ok]
        if bad:
            raise CertificateFailure(f"step certificates failed: {bad}")
    return res


def step_certificates(rule: Rule, s: StepResult) -> dict:
    out = {
        "strong_match_pullback": is_pullback_square(rule.tL, s.alpha, identity(rule.L), s.m),
        "middle_pullback": is_pullback_square(s.alpha, rule.lp, s.gL, s.up),
        "right_pushout": is_pushout_square(rule.r, s.u, s.w, s.gR),
        "u_left_pullback": is_pullback_square(s.m, s.gL, rule.l, s.u),
        "u_type_pullback": is_pullback_square(rule.tK, s.up, identity(rule.K), s.u),
    }
    if s.wp is not None:
        out["bottom_right_pushout"] = is_pushout_square(s.up, s.gR, s.rp, s.wp)
    return out


# -- normalization -----------------------------------------------------------------

@dataclass
class TraceStep:
    rule_index: int
    result: StepResult
    candidates: int


@dataclass
class Trace:
    start: Graph
    steps: list
    budget_exhausted: bool
    strategy: str

    @property
    def final(self) -> Graph:
        return self.steps[-1].result.GR if self.steps else self.start

    @property
    def normal_form(self) -> bool:
        return not self.budget_exhausted


def rewrite_closure(G: Graph, rules: list, strategy: str = "first", max_steps: int = 100, *,
                    seed: int = 0, match_constraint: str = "any") -> Trace:
    """Apply rules until none matches or ``max_steps`` steps were taken.

    ``first`` takes the first strong match of the first applicable rule;
    ``all`` collects every strong match of every rule and applies the first;
    ``random`` picks uniformly among all of them with a seeded generator.
    """
    if strategy not in ("first", "all", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    rng = np.random.default_rng(seed)
    steps = []
    cur = G
    while True:
        if len(steps) >= max_steps:
            return Trace(G, steps, True, strategy)
        cands = []
        for i, rule in enumerate(rules):
            for m, alpha in find_strong_matches(rule, cur, match_constraint):
                cands.append((i, m, alpha))
                if strategy == "first":
                    break
            if strategy == "first" and cands:
                break
        if not cands:
            return Trace(G, steps, False, strategy)
        pick = cands[rng.integers(len(cands))] if strategy == "random" else cands[0]
        i, m, alpha = pick
        res = apply_step(rules[i], cur, m, alpha)
        steps.append(TraceStep(i, res, len(cands)))
        cur = res.GR


# -- determinism ---------------------------------------------------------------------

@dataclass(frozen=True)
class DeterminismCertificate:
    certified: bool
    reason: str


def determinism_certificate(rule: Rule) -> DeterminismCertificate:
    from .classifier import restricted_classifier_certificate

    cert = restricted_classifier_certificate(rule.tL)
    return DeterminismCertificate(cert.is_classifying, cert.reason)
