import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import HEYTING, LATTICES, graphs
from pbpoplus.errors import NoMediator, NonHeytingLattice, NotACone
from pbpoplus.fixtures import example6, graph, hom, relabel
from pbpoplus.gen import all_graphs
from pbpoplus.graph import (Graph, Morphism, compose, identity, is_epi, is_iso, is_mono,
                            is_regular_mono)
from pbpoplus.lattice import chain_lattice, flat_lattice, unit_lattice
from pbpoplus.limits import (enumerate_quotients, epi_regmono_factorize, is_pullback_square,
                             is_pullback_square_slow, is_pushout_square,
                             is_pushout_square_slow, mediating_from_pushout,
                             mediating_into_pullback, pullback, pushout)
from pbpoplus.search import are_isomorphic, enumerate_morphisms, find_isomorphism

U = unit_lattice()
F = flat_lattice(["a", "b", "c"])
C2 = chain_lattice(2)


def _morphism(data, A, B, constraint="any"):
    fs = list(enumerate_morphisms(A, B, constraint))
    return data.draw(st.sampled_from(fs)) if fs else None


# -- examples --------------------------------------------------------------------

def test_pullback_of_identities():
    G = graph(F, {"x": "a", "y": F.top}, [("e", "x", "y", "b")])
    P, p1, p2 = pullback(identity(G), identity(G))
    assert are_isomorphic(P, G) and is_iso(p1) and is_iso(p2)
    u = mediating_into_pullback(identity(G), identity(G), p1, p2, identity(G), identity(G))
    assert is_iso(u)


def test_pullback_meets_labels():
    A, B, C = graph(F, {"x": "a"}), graph(F, {"y": "b"}), graph(F, {"z": F.top})
    P, p1, p2 = pullback(hom(A, C, {"x": "z"}), hom(B, C, {"y": "z"}))
    assert dict(P.vertex_items()) == {"(x|y)": F.bottom}


def test_example6_middle_pullback_duplicates_edges():
    d = example6()
    rule = d["rule"]
    GK, gL, up = pullback(d["alpha"], rule.lp)
    assert (GK.num_vertices, GK.num_edges) == d["expected"]["GK"]
    x2 = "(xx|x2)"
    assert len(GK.edges_between("(y|y)", x2)) == 4


def test_example6_mediator_reads_off_pairs():
    d = example6()
    rule, m = d["rule"], d["m"]
    GK, gL, up = pullback(d["alpha"], rule.lp)
    u = mediating_into_pullback(d["alpha"], rule.lp, gL, up, compose(m, rule.l), rule.tK)
    for k in rule.K.vertices:
        pairs = [p for p in GK.vertices
                 if gL.vmap[p] == m.vmap[rule.l.vmap[k]] and up.vmap[p] == rule.tK.vmap[k]]
        assert pairs == [u.vmap[k]]


def test_pushout_of_identity():
    B = graph(F, {"x": "a", "y": "b"}, [("e", "x", "y")])
    A = graph(F, {"x": F.bottom})
    f = hom(A, B, {})
    Q, q1, q2 = pushout(f, identity(A))
    assert is_iso(q1)
    v = mediating_from_pushout(f, identity(A), q1, q2, q1, q2)
    assert is_iso(v) and v.same_maps(identity(Q))


def test_pushout_joins_labels():
    A, B, C = graph(F, {"x": F.bottom}), graph(F, {"y": "a"}), graph(F, {"z": "c"})
    Q, q1, q2 = pushout(hom(A, B, {"x": "y"}), hom(A, C, {"x": "z"}))
    assert dict(Q.vertex_items()) == {"{b:y,c:z}": F.top}


def test_relabel_right_pushout():
    from pbpoplus.rewrite import apply_step
    d = relabel()
    s = apply_step(d["rule"], d["host"], d["m"], d["alpha"])
    assert are_isomorphic(s.GR, d["expected"])


def test_mediator_errors():
    A = graph(U, ["a", "b"])
    B = graph(U, ["x"])
    f = hom(A, B, {"a": "x", "b": "x"})
    P, p1, p2 = pullback(f, f)
    X = graph(U, ["s"])
    with pytest.raises(NotACone):
        mediating_into_pullback(f, f, p1, p2, hom(X, A, {"s": "a"}), hom(X, B, {"s": "x"}))
    # a non-limiting square with two candidate images
    D = graph(U, ["a1", "a2"])
    g = hom(X, B, {"s": "x"})
    d1 = hom(D, X, {"a1": "s", "a2": "s"})
    with pytest.raises(NoMediator):
        mediating_into_pullback(g, g, d1, d1, identity(X), identity(X))
    # a cocone that is not jointly surjective
    big = graph(U, ["s", "t"])
    with pytest.raises(NoMediator):
        mediating_from_pushout(hom(graph(U, []), X, {}), hom(graph(U, []), X, {}),
                               hom(X, big, {}), hom(X, big, {}), identity(X), identity(X))


def test_square_verifiers():
    A = graph(U, ["a"])
    B = graph(U, ["x", "y"])
    m = hom(A, B, {"a": "x"})
    # identity on top, a monic on both sides
    assert is_pullback_square(m, m, identity(A), identity(A))
    P, p1, p2 = pullback(m, m)
    assert is_pullback_square(m, m, p1, p2)
    # P doubled: two copies of each pair
    D = graph(U, ["a1", "a2"])
    assert not is_pullback_square(m, m, hom(D, A, {"a1": "a", "a2": "a"}),
                                  hom(D, A, {"a1": "a", "a2": "a"}))
    # non-commuting squares are reported as False
    assert not is_pullback_square(m, hom(A, B, {"a": "y"}), identity(A), identity(A))
    Q, q1, q2 = pushout(m, m)
    assert is_pushout_square(m, m, q1, q2)


def test_factorize_examples():
    f = Morphism(graph(C2, {"x": 0}), graph(C2, {"y": 1}), {"x": "y"})
    e, m = epi_regmono_factorize(f)
    assert dict(e.cod.vertex_items()) == {"y": 1}
    assert is_iso(m) and not is_iso(e) and is_epi(e)
    inc = hom(graph(C2, {"x": 1}), graph(C2, {"x": 1, "z": 0}), {})
    e, m = epi_regmono_factorize(inc)
    assert is_iso(e)
    with pytest.raises(NonHeytingLattice):
        epi_regmono_factorize(identity(graph(F, ["x"])))


def test_quotient_examples():
    assert len(list(enumerate_quotients(graph(U, ["x"])))) == 1
    assert len(list(enumerate_quotients(graph(U, ["x", "y"])))) == 2


def test_quotients_of_parallel_edges_against_bruteforce():
    L = graph(U, ["x", "y"], [("e1", "x", "y"), ("e2", "x", "y")])
    got = [e.cod for e in enumerate_quotients(L)]
    assert all(is_epi(e) for e in enumerate_quotients(L))
    # oracle: iso classes of graphs that receive an epi from L
    targets = [G for G in all_graphs(U, 2, 2)
               if any(is_epi(f) for f in enumerate_morphisms(L, G))]
    assert len(got) == len(targets) == 4
    for G in targets:
        assert sum(are_isomorphic(G, H) for H in got) == 1


# -- properties ------------------------------------------------------------------

@given(st.sampled_from(sorted(LATTICES)), st.data())
def test_pullback_and_pushout_are_verified(name, data):
    lat = LATTICES[name]
    A = data.draw(graphs(lat, 3, 2, prefix="a"))
    B = data.draw(graphs(lat, 3, 2, prefix="b"))
    C = data.draw(graphs(lat, 2, 2, min_vertices=1, prefix="c"))
    f, g = _morphism(data, A, C), _morphism(data, B, C)
    if f is not None and g is not None:
        P, p1, p2 = pullback(f, g)
        assert is_pullback_square(f, g, p1, p2)
    f, g = _morphism(data, C, A), _morphism(data, C, B)
    if f is not None and g is not None:
        Q, q1, q2 = pushout(f, g)
        assert is_pushout_square(f, g, q1, q2)


@settings(max_examples=25)
@given(st.sampled_from(["unit", "chain2"]), st.data())
def test_fast_and_slow_verifiers_agree(name, data):
    lat = LATTICES[name]
    A = data.draw(graphs(lat, 2, 1, prefix="a"))
    B = data.draw(graphs(lat, 2, 1, prefix="b"))
    C = data.draw(graphs(lat, 2, 2, min_vertices=1, prefix="c"))
    f, g = _morphism(data, A, C), _morphism(data, B, C)
    if f is None or g is None:
        return
    P, p1, p2 = pullback(f, g)
    for X, x1, x2 in _cone_variants(P, p1, p2):
        assert is_pullback_square(f, g, x1, x2) == is_pullback_square_slow(f, g, x1, x2)
    f, g = _morphism(data, C, A), _morphism(data, C, B)
    if f is not None and g is not None:
        Q, q1, q2 = pushout(f, g)
        assert is_pushout_square_slow(f, g, q1, q2)


def _cone_variants(P, p1, p2):
    """The canonical cone plus commuting cones that need not be limiting."""
    yield P, p1, p2
    # lower every label to bottom
    lat = P.lattice
    low = P.relabeled({v: lat.bottom for v in P.vertices}, {e: lat.bottom for e in P.edges})
    yield low, _retarget(p1, low), _retarget(p2, low)
    # drop one vertex
    if P.num_vertices:
        v = P.vertices[-1]
        sub = P.subgraph([w for w in P.vertices if w != v],
                         [e for e in P.edges if v not in (P.src(e), P.tgt(e))])
        yield sub, _retarget(p1, sub), _retarget(p2, sub)
    # two disjoint copies
    dv = {f"{i}{v}": P.vlabel(v) for i in "12" for v in P.vertices}
    de = {f"{i}{e}": (f"{i}{P.src(e)}", f"{i}{P.tgt(e)}", P.elabel(e))
          for i in "12" for e in P.edges}
    D = Graph(lat, dv, de)
    yield D, _doubled(p1, D), _doubled(p2, D)


def _retarget(p, X):
    return Morphism(X, p.cod, {v: p.vmap[v] for v in X.vertices},
                    {e: p.emap[e] for e in X.edges})


def _doubled(p, D):
    return Morphism(D, p.cod, {v: p.vmap[v[1:]] for v in D.vertices},
                    {e: p.emap[e[1:]] for e in D.edges})


@settings(max_examples=40)
@given(st.sampled_from(sorted(LATTICES)), st.data())
def test_pullback_lemma(name, data):
    """With the right square a pullback, outer is a pullback iff the left one is."""
    lat = LATTICES[name]
    A = data.draw(graphs(lat, 2, 2, prefix="a"))
    B = data.draw(graphs(lat, 2, 2, min_vertices=1, prefix="b"))
    C = data.draw(graphs(lat, 2, 2, min_vertices=1, prefix="c"))
    D = data.draw(graphs(lat, 2, 2, prefix="d"))
    f, g, h = _morphism(data, A, B), _morphism(data, B, C), _morphism(data, D, C)
    if f is None or g is None or h is None:
        return
    Q, q1, q2 = pullback(g, h)
    P, p1, p2 = pullback(f, q1)
    for X, x1, x2 in _cone_variants(P, p1, p2):
        left = is_pullback_square(f, q1, x1, x2)
        outer = is_pullback_square(compose(g, f), h, x1, compose(q2, x2))
        assert left == outer


@given(st.sampled_from(HEYTING), st.data())
def test_pushout_along_regular_mono_is_pullback(name, data):
    lat = LATTICES[name]
    A = data.draw(graphs(lat, 2, 2, prefix="a"))
    B = data.draw(graphs(lat, 3, 3, prefix="b"))
    C = data.draw(graphs(lat, 3, 2, min_vertices=1, prefix="c"))
    m, g = _morphism(data, A, B, "regular_mono"), _morphism(data, A, C)
    if m is None or g is None:
        return
    Q, q1, q2 = pushout(m, g)
    assert is_pullback_square(q1, q2, m, g)
    assert is_regular_mono(q2)


@given(st.sampled_from(sorted(LATTICES)), st.data())
def test_pullback_preserves_regular_monos(name, data):
    lat = LATTICES[name]
    A = data.draw(graphs(lat, 3, 2, prefix="a"))
    B = data.draw(graphs(lat, 2, 2, prefix="b"))
    C = data.draw(graphs(lat, 3, 3, min_vertices=1, prefix="c"))
    f, g = _morphism(data, A, C), _morphism(data, B, C, "regular_mono")
    if f is None or g is None:
        return
    P, p1, p2 = pullback(f, g)
    assert is_regular_mono(p1)
    g2 = _morphism(data, B, C, "mono")
    if g2 is not None:
        assert is_mono(pullback(f, g2)[1])


@settings(max_examples=20)
@given(st.sampled_from(["unit", "chain2"]), st.data())
def test_factorization_is_unique_up_to_iso(name, data):
    lat = LATTICES[name]
    A = data.draw(graphs(lat, 2, 2, prefix="a"))
    B = data.draw(graphs(lat, 3, 3, prefix="b"))
    f = _morphism(data, A, B)
    if f is None:
        return
    e, m = epi_regmono_factorize(f)
    assert is_epi(e) and is_regular_mono(m) and compose(m, e).same_maps(f)
    for J in all_graphs(lat, A.num_vertices, A.num_edges):
        for e2 in enumerate_morphisms(A, J):
            if not is_epi(e2):
                continue
            for m2 in enumerate_morphisms(J, B, "regular_mono"):
                if not compose(m2, e2).same_maps(f):
                    continue
                phi = [p for p in enumerate_morphisms(e.cod, J, "iso")
                       if compose(p, e).same_maps(e2) and compose(m2, p).same_maps(m)]
                assert len(phi) == 1


@given(st.sampled_from(sorted(LATTICES)), st.data())
def test_quotients_are_epis_with_joined_labels(name, data):
    lat = LATTICES[name]
    L = data.draw(graphs(lat, 3, 2, prefix="l"))
    seen = []
    for e in enumerate_quotients(L):
        assert is_epi(e)
        for q in e.cod.vertices:
            assert e.cod.vlabel(q) == lat.join(L.vlabel(v) for v in L.vertices if e.vmap[v] == q)
        assert all(find_isomorphism(e.cod, H) is None for H in seen)
        seen.append(e.cod)
