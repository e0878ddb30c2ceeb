from itertools import chain, combinations, product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pbpoplus.errors import InvalidSize, NotALattice, ReservedLabelCollision, UnknownLabel
from pbpoplus.lattice import (BOT, TOP, chain_lattice, explicit_lattice, flat_lattice,
                              from_descriptor, is_heyting, join, meet, powerset_lattice,
                              unit_lattice)


def brute_glb(lat, xs):
    """Greatest lower bound by scanning the carrier."""
    lows = [z for z in lat.elements if all(lat.leq(z, x) for x in xs)]
    best = [z for z in lows if all(lat.leq(w, z) for w in lows)]
    assert len(best) == 1
    return best[0]


def brute_lub(lat, xs):
    ups = [z for z in lat.elements if all(lat.leq(x, z) for x in xs)]
    best = [z for z in ups if all(lat.leq(z, w) for w in ups)]
    assert len(best) == 1
    return best[0]


def brute_heyting(lat):
    """x /\\ join(S) == join(x /\\ y for y in S) for every x and every subset S."""
    els = lat.elements
    subsets = chain.from_iterable(combinations(els, k) for k in range(len(els) + 1))
    subsets = list(subsets)
    for x in els:
        for S in subsets:
            if brute_glb(lat, [x, brute_lub(lat, S)]) != brute_lub(
                    lat, [brute_glb(lat, [x, y]) for y in S]):
                return False
    return True


def diamond_m3():
    return explicit_lattice(["0", "a", "b", "c", "1"],
                            [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])


def pentagon_n5():
    return explicit_lattice(["0", "a", "b", "c", "1"],
                            [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])


SMALL = {
    "unit": unit_lattice(),
    "chain1": chain_lattice(1),
    "chain4": chain_lattice(4),
    "chain16": chain_lattice(16),
    "flat0": flat_lattice([]),
    "flat1": flat_lattice(["a"]),
    "flat2": flat_lattice(["a", "b"]),
    "flat3": flat_lattice(["a", "b", "c"]),
    "flat14": flat_lattice([f"b{i}" for i in range(14)]),
    "pow0": powerset_lattice([]),
    "pow2": powerset_lattice([1, 2]),
    "pow4": powerset_lattice([1, 2, 3, 4]),
    "m3": diamond_m3(),
    "n5": pentagon_n5(),
}

# is_heyting verdicts, frozen from brute_heyting (pow4/flat14/chain16 are too large for the
# all-subsets oracle and are covered by the family tests below)
HEYTING_FROZEN = {"unit": True, "chain1": True, "chain4": True, "flat0": True, "flat1": True,
                  "flat2": True, "flat3": False, "pow0": True, "pow2": True, "m3": False, "n5": False}


# -- examples --------------------------------------------------------------------

def test_flat_meet_join():
    F = flat_lattice(["a", "b"])
    assert meet(F, ["a", "b"]) == BOT
    assert join(F, ["a", "b"]) == TOP
    assert F.leq("a", TOP)
    assert not F.leq("a", "b")


def test_empty_meet_join():
    for lat in SMALL.values():
        assert meet(lat, []) == lat.top
        assert join(lat, []) == lat.bottom


def test_powerset_meet_join():
    P = powerset_lattice([1, 2])
    assert meet(P, [frozenset({1}), frozenset({1, 2})]) == frozenset({1})
    assert join(P, [frozenset({1}), frozenset({2})]) == frozenset({1, 2})
    assert len(powerset_lattice([1])) == 2


def test_constructors():
    assert set(flat_lattice([]).elements) == {BOT, TOP}
    U = unit_lattice()
    assert len(U) == 1 and U.bottom == U.top
    assert meet(U, [U.top, U.top]) == U.top
    assert meet(chain_lattice(3), [0, 2]) == 0
    with pytest.raises(InvalidSize):
        chain_lattice(0)
    with pytest.raises(ReservedLabelCollision):
        flat_lattice(["a", TOP])
    with pytest.raises(InvalidSize):
        powerset_lattice(range(5))


def test_unknown_label():
    with pytest.raises(UnknownLabel):
        meet(flat_lattice(["a"]), ["zz"])
    with pytest.raises(UnknownLabel):
        chain_lattice(2).index(5)


def test_not_a_lattice():
    # two maximal elements
    with pytest.raises(NotALattice):
        explicit_lattice(["0", "a", "b"], [("0", "a"), ("0", "b")])
    # cycle breaks antisymmetry
    with pytest.raises(NotALattice):
        explicit_lattice(["0", "a", "b", "1"],
                         [("0", "a"), ("a", "b"), ("b", "a"), ("b", "1")])
    # a, b have two minimal upper bounds
    with pytest.raises(NotALattice):
        explicit_lattice(["0", "a", "b", "c", "d", "1"],
                         [("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("a", "d"),
                          ("b", "d"), ("c", "1"), ("d", "1")])


# -- oracles ---------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(SMALL))
def test_tables_match_bruteforce(name):
    lat = SMALL[name]
    for x, y in product(lat.elements, repeat=2):
        assert lat.meet2(x, y) == brute_glb(lat, [x, y])
        assert lat.join2(x, y) == brute_lub(lat, [x, y])


@pytest.mark.parametrize("name", sorted(HEYTING_FROZEN))
def test_is_heyting_frozen(name):
    assert brute_heyting(SMALL[name]) is HEYTING_FROZEN[name]
    assert is_heyting(SMALL[name]) is HEYTING_FROZEN[name]


def test_is_heyting_families():
    for n in range(1, 17):
        assert chain_lattice(n).is_heyting()
    for k in range(5):
        assert powerset_lattice(range(k)).is_heyting()
    # two incomparable atoms form the four-element Boolean algebra; from three on,
    # a, b, c span a copy of M3
    assert flat_lattice(["a", "b"]).is_heyting()
    for k in range(3, 15):
        assert not flat_lattice([f"b{i}" for i in range(k)]).is_heyting()
    assert unit_lattice().is_heyting()


# -- laws --------------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(SMALL))
def test_lattice_laws(name):
    lat = SMALL[name]
    n = len(lat)
    M, J = lat.meet_table, lat.join_table
    idx = np.arange(n)
    assert (M[idx, idx] == idx).all() and (J[idx, idx] == idx).all()
    assert (M == M.T).all() and (J == J.T).all()
    # associativity
    assert (M[M[:, :, None], idx[None, None, :]] == M[idx[:, None, None], M[None, :, :]]).all()
    assert (J[J[:, :, None], idx[None, None, :]] == J[idx[:, None, None], J[None, :, :]]).all()
    # absorption
    assert (M[idx[:, None], J] == idx[:, None]).all()
    assert (J[idx[:, None], M] == idx[:, None]).all()
    for x in lat.elements:
        assert meet(lat, [x]) == x and join(lat, [x]) == x
        assert lat.leq(lat.bottom, x) and lat.leq(x, lat.top)


@given(st.sampled_from(sorted(SMALL)), st.data())
def test_meet_is_order_consistent(name, data):
    lat = SMALL[name]
    xs = data.draw(st.lists(st.sampled_from(lat.elements), max_size=5))
    m, j = meet(lat, xs), join(lat, xs)
    assert all(lat.leq(m, x) and lat.leq(x, j) for x in xs)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_descriptor_roundtrip(name):
    lat = SMALL[name]
    assert from_descriptor(lat.descriptor()) == lat
