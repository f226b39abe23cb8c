import logging

import numpy as np
import pytest
from hypothesis import given, settings

from qinfoloc.codefile import load_bundled
from qinfoloc.graphcode import (
    CosetRep,
    Graph,
    coset_representatives,
    encode,
    reduce_to_trivial,
    rep_pairs,
    rep_to_pair,
)
from qinfoloc.oracle import (
    apply_gates,
    circuit_unitary,
    graph_state,
    pauli_matrix,
    plus_state,
    stabilizer_projector,
    code_projector,
    verify_encoding,
)
from qinfoloc.pauli import cnot
from qinfoloc.zdlinalg import row_span

from strategies import small_codes


def test_smith_example_reduction():
    code = load_bundled("smith_example_d6").encode()
    tr = code.trivial
    assert tr.m == (2, 3) and tr.d == (3, 2) and tr.K == 6
    assert [g.label() for g in tr.gates_w] == ["CNOT_32"]
    assert tr.gates_w == (cnot(2, 1),)
    assert code.stabilizer_order == 36 == tr.stabilizer_lattice_size()


def test_smith_example_w_maps_trivial_group_onto_coding_group():
    # conjugating the trivial generators Z1^2, Z2^3 by W lands in <Z1^4 Z2^3 Z3^3, Z2^3 Z3^3>
    code = load_bundled("smith_example_d6").encode()
    W = circuit_unitary(code.trivial.gates_w, 3, 6)
    group = row_span([[4, 3, 3], [0, 3, 3]], 6)
    for z0 in ([2, 0, 0], [0, 3, 0]):
        img = W @ pauli_matrix([0, 0, 0] + z0, 6) @ W.conj().T
        hits = [c for c in group if np.allclose(img, pauli_matrix([0, 0, 0] + list(c), 6))]
        assert hits


def test_steane_stabilizer_order():
    code = load_bundled("steane").encode()
    assert code.K == 2 and code.stabilizer_order == 64


def test_empty_generator_list_gives_trivial_code(caplog):
    with caplog.at_level(logging.WARNING):
        code = encode(Graph.empty(3, 3), [])
    assert code.K == 1 and code.trivial.k == 0
    assert any("K = 1" in w for w in code.trivial.warnings)
    assert code.representatives() == [CosetRep((), ())]


def test_zero_rows_dropped_with_warning():
    tr = reduce_to_trivial([[0, 0, 0], [1, 1, 0], [0, 0, 0]], 3)
    assert tr.dropped_rows == (0, 2)
    assert tr.m == (1,)
    assert tr.warnings


def test_dependent_generators_warn():
    tr = reduce_to_trivial([[1, 1], [2, 2]], 3)
    assert tr.K == 3
    assert any("dependent" in w for w in tr.warnings)


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph.from_edges(3, 3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, 3, [(0, 1, 3)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, 3, [(0, 5)])
    g = Graph.from_edges(3, 4, [(2, 0, 3), (0, 1)])
    assert g.edges() == [(0, 1, 1), (0, 2, 3)]


@pytest.mark.parametrize("D", [2, 3, 4])
def test_graph_state_stabilizers(D):
    # X_a prod_b Z_b^(-Gamma_ab) fixes |G> (CP maps X_a to X_a Z_b^(D-1))
    g = Graph.from_edges(3, D, [(0, 1, 1), (1, 2, D - 1)])
    psi = graph_state(g)
    A = g.adjacency.data
    for a in range(3):
        x = [0, 0, 0]
        x[a] = 1
        op = pauli_matrix(x + list(-A[a] % D), D)
        assert np.allclose(op @ psi, psi)


def test_graph_state_equals_cp_circuit():
    g = Graph.from_edges(3, 3, [(0, 1, 2), (0, 2, 1)])
    code = encode(g, [[1, 1, 1]])
    psi = apply_gates(plus_state(3, 3), code.gates_u, 3, 3)
    assert np.allclose(psi, graph_state(g))


def test_representative_order_and_pairs():
    tr = reduce_to_trivial([[4, 3, 3], [0, 3, 3]], 6)
    reps = list(coset_representatives(tr))
    assert len(reps) == tr.K**2 == 36
    assert reps[0].is_identity() and reps[1] == CosetRep((0, 0), (0, 1))
    pairs = rep_pairs(tr)
    assert all(np.array_equal(pairs[i], rep_to_pair(r, tr)) for i, r in enumerate(reps))
    assert CosetRep((1, 1), (2, 1)).label() == "X01 Z01^2 X02 Z02"


@settings(max_examples=40, deadline=None)
@given(small_codes())
def test_encoding_circuit_reproduces_codewords(code):
    check = verify_encoding(code)
    assert check.ok, check


@settings(max_examples=25, deadline=None)
@given(small_codes(max_dim=81))
def test_projector_matches_stabilizer_sum(code):
    P = code_projector(code)
    assert np.allclose(P, stabilizer_projector(code), atol=1e-9)
    assert round(np.trace(P).real) == code.K
    assert code.stabilizer_order * code.K == code.D**code.n


@settings(max_examples=40, deadline=None)
@given(small_codes())
def test_coding_group_order_is_k(code):
    assert len(code.coding_group()) == code.K
