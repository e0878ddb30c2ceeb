import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pbpoplus.graph import Graph
from pbpoplus.lattice import (chain_lattice, flat_lattice, powerset_lattice, unit_lattice)

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

LATTICES = {
    "unit": unit_lattice(),
    "chain2": chain_lattice(2),
    "chain3": chain_lattice(3),
    "powerset12": powerset_lattice([1, 2]),
    "flat_ab": flat_lattice(["a", "b"]),
}
HEYTING = ["unit", "chain2", "chain3", "powerset12"]


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@st.composite
def graphs(draw, lat, max_vertices=3, max_edges=3, min_vertices=0, prefix="v"):
    labels = list(lat.elements)
    nv = draw(st.integers(min_vertices, max_vertices))
    vids = [f"{prefix}{i}" for i in range(nv)]
    vl = {v: draw(st.sampled_from(labels)) for v in vids}
    ed = {}
    if nv:
        ne = draw(st.integers(0, max_edges))
        for j in range(ne):
            ed[f"{prefix}e{j}"] = (draw(st.sampled_from(vids)), draw(st.sampled_from(vids)),
                                   draw(st.sampled_from(labels)))
    return Graph(lat, vl, ed)


lattice_names = st.sampled_from(sorted(LATTICES))
heyting_names = st.sampled_from(HEYTING)
