import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import LATTICES
from pbpoplus.classifier import STAR, T_map, classify_object, classify_partial
from pbpoplus.errors import (LatticeMismatch, NonHeytingLattice, NotAMatch, NotCanonical,
                             NotRegularMono)
from pbpoplus.fixtures import agree_not_pbpo, example14, example15, graph, hom, remark_u
from pbpoplus.gen import all_graphs, random_morphism, random_rule
from pbpoplus.graph import compose, identity, is_iso
from pbpoplus.interop import (AgreeRule, DpoRule, PbpoRule, agree_step, compact_rules,
                              dpo_step, pbpo_matches, pbpo_step, translate_agree,
                              translate_dpo)
from pbpoplus.lattice import chain_lattice, flat_lattice, unit_lattice
from pbpoplus.rewrite import apply_step, find_strong_matches, validate_rule
from pbpoplus.search import IsoBucket, are_isomorphic, enumerate_morphisms

U = unit_lattice()
C2 = chain_lattice(2)
seeds = st.integers(0, 2 ** 32 - 1)


def iso_set(gs):
    b = IsoBucket()
    for g in gs:
        b.add(g)
    return b


def same_up_to_iso(a, b):
    a, b = iso_set(a), iso_set(b)
    return len(a) == len(b) and all(b.find(g) is not None for g in a)


def pbpo_plus_results(rule, G, constraint="any"):
    return [apply_step(rule, G, m, a, certify=False, readable_ids=False).GR
            for m, a in find_strong_matches(rule, G, constraint, mode="match")]


def _loop_deletion_dpo():
    L = graph(U, ["x"], [("l", "x", "x")])
    K = graph(U, ["x"])
    return DpoRule(L, K, K, hom(K, L, {}), identity(K))


def _vertex_deletion_dpo():
    L = graph(U, ["x"])
    E = graph(U, [])
    return DpoRule(L, E, E, hom(E, L, {}), identity(E))


# -- DPO ---------------------------------------------------------------------------

def test_dpo_examples():
    rule = _loop_deletion_dpo()
    G = graph(U, ["a"], [("la", "a", "a")])
    D, GR = dpo_step(rule, G, hom(rule.L, G, {"x": "a"}, {"l": "la"}))
    assert (GR.num_vertices, GR.num_edges) == (1, 0)
    rule = _vertex_deletion_dpo()
    G = graph(U, ["a", "b"], [("e", "a", "b")])
    assert dpo_step(rule, G, hom(rule.L, G, {"x": "a"})) is None
    L = graph(U, ["x", "y"], [("e", "x", "y")])
    i = identity(L)
    G = graph(U, ["x", "y", "z"], [("e", "x", "y"), ("f", "y", "z")])
    D, GR = dpo_step(DpoRule(L, L, L, i, i), G, hom(L, G, {}))
    assert are_isomorphic(GR, G)


def test_dpo_guards():
    with pytest.raises(NotRegularMono):
        L = graph(U, ["x", "y"])
        DpoRule(L, L, L, hom(L, L, {"y": "x"}), identity(L))
    L = graph(C2, {"x": 0})
    with pytest.raises(LatticeMismatch):
        dpo_step(DpoRule(L, L, L, identity(L), identity(L)), L, identity(L))


def test_translate_dpo_examples():
    L = graph(U, ["x"], [("l", "x", "x")])
    i = identity(L)
    T = translate_dpo(DpoRule(L, L, L, i, i))
    assert are_isomorphic(T.Lp, classify_object(L).T) and is_iso(T.lp)
    T = translate_dpo(_vertex_deletion_dpo())
    # L' is L plus T(empty) glued along nothing
    assert (T.Lp.num_vertices, T.Lp.num_edges) == (2, 1)
    with pytest.raises(NonHeytingLattice):
        F = graph(flat_lattice(["a", "b", "c"]), ["x"])
        translate_dpo(DpoRule(F, F, F, identity(F), identity(F)))


@settings(max_examples=20)
@given(seeds)
def test_dpo_is_modelled(seed):
    rng = np.random.default_rng(seed)
    small = list(all_graphs(U, 2, 2))
    L, K, R = (small[rng.integers(len(small))] for _ in range(3))
    l = random_morphism(rng, K, L, "regular_mono")
    r = random_morphism(rng, K, R)
    if l is None or r is None:
        return
    rule = DpoRule(L, K, R, l, r)
    T = translate_dpo(rule)
    for G in all_graphs(U, 3, 2):
        d = [x[1] for m in enumerate_morphisms(L, G, "regular_mono")
             if (x := dpo_step(rule, G, m)) is not None]
        assert same_up_to_iso(d, pbpo_plus_results(T, G, "regular_mono"))


# -- AGREE -----------------------------------------------------------------------------

def test_agree_node_deletion_keeps_context():
    d = agree_not_pbpo()
    GR = agree_step(d["agree"], d["host"], d["m"])
    assert list(GR.vertices) and GR.num_vertices == 1 and GR.num_edges == 0


def test_agree_identity_copy_on_L():
    L = graph(C2, {"x": 1, "y": 0}, [("e", "x", "y", 0)])
    cl = classify_object(L)
    rule = AgreeRule(L, L, L, cl.T, identity(L), identity(L), cl.eta)
    assert are_isomorphic(agree_step(rule, L, identity(L)), L)
    T = translate_agree(rule)
    assert T.lp.same_maps(T_map(identity(L)))


def test_agree_empty_rule():
    E = graph(C2, [])
    cl = classify_object(E)
    R = graph(C2, {"r": 1})
    rule = AgreeRule(E, E, R, cl.T, identity(E), hom(E, R, {}), cl.eta)
    G = graph(C2, {"a": 0, "b": 1}, [("e", "a", "b", 1)])
    GR = agree_step(rule, G, hom(E, G, {}))
    # pullback of <m> and T(id) is G itself, then R is added disjointly
    assert (GR.num_vertices, GR.num_edges) == (3, 1)


def test_agree_translation_has_unique_adherence():
    d = agree_not_pbpo()
    T = translate_agree(d["agree"])
    validate_rule(T)
    found = list(find_strong_matches(T, d["host"]))
    # one strong match per placement of x, each with <m> as its only adherence
    assert len(found) == d["host"].num_vertices
    for m, alpha in found:
        assert alpha.same_maps(classify_partial(m, identity(T.L)))
        (other,) = [g for g in d["host"].vertices if g != m.vmap["x"]]
        assert alpha.vmap[other] == STAR


@settings(max_examples=15)
@given(seeds)
def test_agree_is_modelled(seed):
    rng = np.random.default_rng(seed)
    small = list(all_graphs(C2, 2, 1))
    L, K, R, Kp = (small[rng.integers(len(small))] for _ in range(4))
    l, r = random_morphism(rng, K, L), random_morphism(rng, K, R)
    tK = random_morphism(rng, K, Kp, "regular_mono")
    if None in (l, r, tK):
        return
    rule = AgreeRule(L, K, R, Kp, l, r, tK)
    T = validate_rule(translate_agree(rule))
    for G in all_graphs(C2, 2, 2):
        ms = list(enumerate_morphisms(L, G, "regular_mono"))
        found = list(find_strong_matches(T, G, "regular_mono", mode="match"))
        assert sorted(m.key() for m, _ in found) == sorted(m.key() for m in ms)
        assert same_up_to_iso([agree_step(rule, G, m) for m in ms],
                              [apply_step(T, G, m, a, certify=False).GR for m, a in found])


# -- PBPO ------------------------------------------------------------------------------

def test_example14_fold_deletes_all_edges():
    d = example14()
    GR = pbpo_step(d["pbpo"], d["two_vertices"], d["fold_m"], d["fold_alpha"])
    assert (GR.num_vertices, GR.num_edges) == (2, 0)


def test_example15_spiral():
    d = example15()
    s = pbpo_step(d["pbpo"], d["host"], d["m"], d["alpha"], full=True)
    assert (s.GK.num_vertices, s.GK.num_edges) == d["expected"]["GK"]
    assert (s.GR.num_vertices, s.GR.num_edges) == d["expected"]["GR"]
    # everything typed over x is duplicated
    over_x = [g for g in d["host"].vertices if d["alpha"].vmap[g] == "x"]
    for g in over_x:
        assert sum(1 for p in s.GK.vertices if s.gL.vmap[p] == g) == 2


def test_pbpo_step_needs_match():
    d = example14()
    bad = hom(d["pbpo"].L, d["two_vertices"], {"x": "b"}, {"lx": "lb"})
    alpha = hom(d["two_vertices"], d["pbpo"].Lp, {"a": "y", "b": "y"}, {"la": "ly", "lb": "ly"})
    with pytest.raises(NotAMatch):
        pbpo_step(d["pbpo"], d["two_vertices"], bad, alpha)


def test_remark_u_counts():
    d = remark_u()
    s = pbpo_step(d["pbpo"], d["host"], d["m"], d["alpha"], full=True)
    vs = [v for v in enumerate_morphisms(d["pbpo"].K, s.GK)
          if compose(s.up, v).same_maps(d["pbpo"].tK)]
    assert len(vs) == 4
    assert sum(v.same_maps(s.u) for v in vs) == 1


def test_not_canonical():
    p = example14()["pbpo"]
    vl = dict(p.Rp.vertex_items())
    vl["junk"] = U.top
    Rp2 = graph(U, vl, [(e, *p.Rp.edge(e)) for e in p.Rp.edges])
    tR2 = hom(p.R, Rp2, p.tR.vmap, p.tR.emap)
    rp2 = hom(p.Kp, Rp2, p.rp.vmap, p.rp.emap)
    with pytest.raises(NotCanonical):
        PbpoRule(p.L, p.K, p.R, p.Lp, p.Kp, Rp2, p.l, p.r, p.tL, p.tK, tR2, p.lp,
                 rp2).check_canonical()


@settings(max_examples=25)
@given(st.sampled_from(sorted(LATTICES)), seeds)
def test_strong_matches_agree_with_pbpo_step(name, seed):
    rng = np.random.default_rng(seed)
    r = random_rule(rng, LATTICES[name])
    pr = PbpoRule.from_left(r.L, r.K, r.R, r.Lp, r.Kp, r.l, r.r, r.tL, r.tK, r.lp)
    from pbpoplus.gen import random_host
    G, _ = random_host(rng, r)
    for m, alpha in find_strong_matches(r, G):
        assert are_isomorphic(pbpo_step(pr, G, m, alpha), apply_step(r, G, m, alpha).GR)


# -- compaction ---------------------------------------------------------------------------

def test_compaction_counts():
    L = graph(U, ["x"])
    Lp = graph(U, ["x", "c"])
    E = graph(U, [])
    p = PbpoRule.from_left(L, E, E, Lp, graph(U, ["c"]), hom(E, L, {}), identity(E),
                           hom(L, Lp, {}), hom(E, graph(U, ["c"]), {}),
                           hom(graph(U, ["c"]), Lp, {})).check_canonical()
    assert len(compact_rules(p, "full")) == 1
    assert len(compact_rules(p, "iso_only")) == 1
    with pytest.raises(ValueError):
        compact_rules(p, "some")


def test_compaction_of_merging_tl():
    L = graph(U, ["x", "y"])
    Lp = graph(U, ["z"])
    E = graph(U, [])
    Kp = graph(U, [])
    p = PbpoRule.from_left(L, E, E, Lp, Kp, hom(E, L, {}), identity(E),
                           hom(L, Lp, {"x": "z", "y": "z"}), hom(E, Kp, {}),
                           hom(Kp, Lp, {})).check_canonical()
    rules = compact_rules(p, "full")
    assert sorted(r.L.num_vertices for r in rules) == [1, 2]
    for r in rules:
        validate_rule(r)
    for G in all_graphs(U, 4, 2):
        a = [pbpo_step(p, G, m, al) for m, al in pbpo_matches(p, G)]
        b = [GR for r in rules for GR in pbpo_plus_results(r, G)]
        assert same_up_to_iso(a, b)


@settings(max_examples=10)
@given(seeds)
def test_pbpo_is_modelled(seed):
    rng = np.random.default_rng(seed)
    r = random_rule(rng, U, max_vertices=3, max_edges=3, merge_prob=0.5)
    pr = PbpoRule.from_left(r.L, r.K, r.R, r.Lp, r.Kp, r.l, r.r, r.tL, r.tK, r.lp)
    comp = compact_rules(pr)
    for G in all_graphs(U, 3, 2):
        a = [pbpo_step(pr, G, m, al) for m, al in pbpo_matches(pr, G)]
        b = [GR for c in comp for GR in pbpo_plus_results(c, G)]
        assert same_up_to_iso(a, b)


def test_regular_mono_tl_has_one_iso_compaction():
    d = example14()
    assert len(compact_rules(d["pbpo"], "iso_only")) == 1


# -- counterexamples -----------------------------------------------------------------------

def test_agree_does_not_model_pbpo():
    d = agree_not_pbpo()
    GR = pbpo_step(d["pbpo"], d["host"], d["m"], d["fold_alpha"])
    assert GR.num_vertices == 0
    G = d["host"]
    assert all(agree_step(d["agree"], G, m).num_vertices == 1
               for m in enumerate_morphisms(d["agree"].L, G, "regular_mono"))
