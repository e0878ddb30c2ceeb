"""Finite complete lattices of labels.

A :class:`Lattice` is an immutable value holding its carrier, the order as a
boolean matrix, and precomputed binary meet/join tables. Labels are opaque
hashable tokens; every lattice also knows how to render a label as a string
and parse it back, which is what the JSON formats use.
"""
from __future__ import annotations

from functools import reduce
from itertools import combinations
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import InvalidSize, NotALattice, ReservedLabelCollision, UnknownLabel

BOT = "_bot"
TOP = "_top"
UNIT = "_unit"

Label = Hashable


class Lattice:
    """A finite lattice given by its carrier and a decidable order.

    ``order`` is a boolean matrix with ``order[i, j]`` true iff
    ``elements[i] <= elements[j]``. It must already be reflexive and
    transitive; antisymmetry and the existence of binary meets/joins are
    checked here.
    """

    __slots__ = ("elements", "kind", "params", "_index", "_order", "_meet", "_join",
                 "_names", "_by_name", "bottom", "top", "_hash", "_heyting")

    def __init__(self, elements: Sequence[Label], order: np.ndarray, *, kind="explicit",
                 params=None, names: Sequence[str] | None = None):
        elements = tuple(elements)
        n = len(elements)
        if n == 0:
            raise NotALattice("a lattice needs at least one element")
        if len(set(elements)) != n:
            raise NotALattice("duplicate elements in carrier")
        order = np.asarray(order, dtype=bool)
        if order.shape != (n, n):
            raise NotALattice("order matrix has the wrong shape")
        if not order.diagonal().all():
            raise NotALattice("order is not reflexive")
        if (order & order.T & ~np.eye(n, dtype=bool)).any():
            raise NotALattice("order is not antisymmetric")
        # transitivity: order o order must be contained in order
        comp = (order.astype(np.int64) @ order.astype(np.int64)) > 0
        if (comp & ~order).any():
            raise NotALattice("order is not transitive")
        self.elements = elements
        self.kind = kind
        self.params = params
        self._index = {x: i for i, x in enumerate(elements)}
        self._order = order
        self._order.setflags(write=False)
        self._meet = np.empty((n, n), dtype=np.int64)
        self._join = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(i, n):
                self._meet[i, j] = self._meet[j, i] = _extremal_bound(order, i, j, lower=True)
                self._join[i, j] = self._join[j, i] = _extremal_bound(order, i, j, lower=False)
        self._meet.setflags(write=False)
        self._join.setflags(write=False)
        bots = [i for i in range(n) if order[i].all()]
        tops = [j for j in range(n) if order[:, j].all()]
        if len(bots) != 1 or len(tops) != 1:
            raise NotALattice("missing bottom or top")
        self.bottom = elements[bots[0]]
        self.top = elements[tops[0]]
        if names is None:
            names = [str(x) for x in elements]
        names = tuple(names)
        if len(set(names)) != n:
            raise NotALattice("label names are not unique")
        self._names = dict(zip(elements, names))
        self._by_name = dict(zip(names, elements))
        self._hash = hash((elements, order.tobytes()))
        self._heyting = None

    # -- element access -------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        try:
            return x in self._index
        except TypeError:
            return False

    def __iter__(self):
        return iter(self.elements)

    def index(self, x: Label) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise UnknownLabel(f"label {x!r} is not in the carrier") from None

    def check(self, x: Label) -> Label:
        self.index(x)
        return x

    def name(self, x: Label) -> str:
        return self._names[self.check(x)]

    def label(self, name: str) -> Label:
        try:
            return self._by_name[name]
        except (KeyError, TypeError):
            raise UnknownLabel(f"no label named {name!r}") from None

    @property
    def order_matrix(self) -> np.ndarray:
        return self._order

    @property
    def meet_table(self) -> np.ndarray:
        return self._meet

    @property
    def join_table(self) -> np.ndarray:
        return self._join

    # -- order and bounds -----------------------------------------------

    def leq(self, x: Label, y: Label) -> bool:
        return bool(self._order[self.index(x), self.index(y)])

    def meet(self, xs: Iterable[Label]) -> Label:
        """Greatest lower bound; the meet of nothing is top."""
        idx = [self.index(x) for x in xs]
        if not idx:
            return self.top
        return self.elements[reduce(lambda a, b: self._meet[a, b], idx)]

    def join(self, xs: Iterable[Label]) -> Label:
        """Least upper bound; the join of nothing is bottom."""
        idx = [self.index(x) for x in xs]
        if not idx:
            return self.bottom
        return self.elements[reduce(lambda a, b: self._join[a, b], idx)]

    def meet2(self, x: Label, y: Label) -> Label:
        return self.elements[self._meet[self.index(x), self.index(y)]]

    def join2(self, x: Label, y: Label) -> Label:
        return self.elements[self._join[self.index(x), self.index(y)]]

    # -- identity -------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Lattice):
            return NotImplemented
        return (self._hash == other._hash and self.elements == other.elements
                and np.array_equal(self._order, other._order))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.kind == "explicit":
            return f"Lattice(explicit, {len(self)} elements)"
        return f"Lattice({self.kind}, {self.params!r})"

    def descriptor(self) -> dict:
        """JSON descriptor from which :func:`from_descriptor` rebuilds this lattice."""
        if self.kind == "unit":
            return {"kind": "unit"}
        if self.kind == "flat":
            return {"kind": "flat", "base": list(self.params)}
        if self.kind == "chain":
            return {"kind": "chain", "n": self.params}
        if self.kind == "powerset":
            return {"kind": "powerset", "universe": list(self.params)}
        n = len(self)
        covers = []
        for i in range(n):
            for j in range(n):
                if i != j and self._order[i, j] and not any(
                        k not in (i, j) and self._order[i, k] and self._order[k, j]
                        for k in range(n)):
                    covers.append([self._names[self.elements[i]], self._names[self.elements[j]]])
        return {"kind": "explicit",
                "elements": [self._names[x] for x in self.elements],
                "covers": covers}

    def is_heyting(self) -> bool:
        if self._heyting is None:
            self._heyting = _distributive(self)
        return self._heyting


def _extremal_bound(order, i, j, *, lower):
    if lower:
        bounds = np.flatnonzero(order[:, i] & order[:, j])
        # greatest lower bound: the bound that every other bound lies below
        for b in bounds:
            if order[bounds, b].all():
                return int(b)
        raise NotALattice("some pair has no greatest lower bound")
    bounds = np.flatnonzero(order[i, :] & order[j, :])
    for b in bounds:
        if order[b, bounds].all():
            return int(b)
    raise NotALattice("some pair has no least upper bound")


def _distributive(lat: Lattice) -> bool:
    # For a finite lattice, x /\ (y \/ z) = (x /\ y) \/ (x /\ z) for all
    # x, y, z already gives distributivity over every finite (hence every) join.
    m, j = lat.meet_table, lat.join_table
    n = len(lat)
    for x in range(n):
        for y in range(n):
            for z in range(y + 1, n):
                if m[x, j[y, z]] != j[m[x, y], m[x, z]]:
                    return False
    return True


def meet(lat: Lattice, xs: Iterable[Label]) -> Label:
    return lat.meet(xs)


def join(lat: Lattice, xs: Iterable[Label]) -> Label:
    return lat.join(xs)


def is_heyting(lat: Lattice) -> bool:
    """True iff meets distribute over arbitrary joins (a complete Heyting algebra)."""
    return lat.is_heyting()


# -- constructors -------------------------------------------------------

def flat_lattice(base: Iterable[str]) -> Lattice:
    base = sorted(set(base), key=str)
    for b in base:
        if b in (BOT, TOP):
            raise ReservedLabelCollision(f"{b!r} is reserved for bottom/top")
    elements = [BOT, *base, TOP]
    n = len(elements)
    order = np.eye(n, dtype=bool)
    order[0, :] = True
    order[:, -1] = True
    return Lattice(elements, order, kind="flat", params=tuple(base),
                   names=[str(x) for x in elements])


def unit_lattice() -> Lattice:
    return Lattice([UNIT], np.ones((1, 1), dtype=bool), kind="unit")


def chain_lattice(n: int) -> Lattice:
    if not isinstance(n, (int, np.integer)) or n <= 0:
        raise InvalidSize(f"chain length must be a positive integer, got {n!r}")
    n = int(n)
    order = np.triu(np.ones((n, n), dtype=bool))
    return Lattice(list(range(n)), order, kind="chain", params=n)


def _set_name(s: frozenset) -> str:
    return "{" + ",".join(sorted(map(str, s))) + "}"


def powerset_lattice(universe: Iterable) -> Lattice:
    universe = sorted(set(universe), key=str)
    if len(universe) > 4:
        raise InvalidSize("powerset lattices are limited to universes of size <= 4 (16 labels)")
    subsets = [frozenset(c) for k in range(len(universe) + 1)
               for c in combinations(universe, k)]
    order = np.array([[a <= b for b in subsets] for a in subsets], dtype=bool)
    return Lattice(subsets, order, kind="powerset", params=tuple(universe),
                   names=[_set_name(s) for s in subsets])


def explicit_lattice(elements: Sequence[str], covers: Iterable[Sequence[str]]) -> Lattice:
    """Lattice from element names and covering pairs ``(lower, upper)``."""
    elements = list(elements)
    idx = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    order = np.eye(n, dtype=bool)
    for pair in covers:
        lo, hi = pair
        if lo not in idx or hi not in idx:
            raise UnknownLabel(f"covering pair mentions unknown label: {pair!r}")
        order[idx[lo], idx[hi]] = True
    # reflexive-transitive closure (Warshall)
    for k in range(n):
        order |= order[:, [k]] & order[[k], :]
    return Lattice(elements, order, kind="explicit")


def from_descriptor(desc: dict) -> Lattice:
    from .errors import FormatError

    if not isinstance(desc, dict) or "kind" not in desc:
        raise FormatError("lattice descriptor must be an object with a 'kind'")
    kind = desc["kind"]
    try:
        if kind == "unit":
            return unit_lattice()
        if kind == "flat":
            return flat_lattice(desc.get("base", []))
        if kind == "chain":
            return chain_lattice(desc["n"])
        if kind == "powerset":
            return powerset_lattice(desc["universe"])
        if kind == "explicit":
            return explicit_lattice(desc["elements"], desc.get("covers", []))
    except KeyError as exc:
        raise FormatError(f"lattice descriptor missing field {exc}") from None
    raise FormatError(f"unknown lattice kind {kind!r}")
