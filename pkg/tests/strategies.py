"""Hypothesis strategies shared by the test modules."""

import itertools

import numpy as np
from hypothesis import strategies as st

from qinfoloc.graphcode import Graph, encode


@st.composite
def small_codes(draw, max_dim=256):
    D = draw(st.sampled_from([2, 3, 4, 6]))
    n_max = max(2, int(np.floor(np.log(max_dim) / np.log(D) + 1e-9)))
    n = draw(st.integers(2, min(n_max, 4)))
    edges = []
    for a, b in itertools.combinations(range(n), 2):
        m = draw(st.integers(0, D - 1))
        if m:
            edges.append((a, b, m))
    rows = draw(st.integers(0, 3))
    gens = [draw(st.lists(st.integers(0, D - 1), min_size=n, max_size=n)) for _ in range(rows)]
    return encode(Graph.from_edges(n, D, edges), gens)
