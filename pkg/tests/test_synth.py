import json
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclic_mubs.core import is_symplectic
from cyclic_mubs.fixtures import load_fixture
from cyclic_mubs.gf2 import Gf2Matrix
from cyclic_mubs.pauli import dense_matrix
from cyclic_mubs.sim import circuit_unitary
from cyclic_mubs.synth import (
    CNOT,
    CZ,
    Circuit,
    Gate,
    H,
    NonSymplecticError,
    S,
    circuit_symplectic,
    export_circuit,
    gate_symplectic,
    generator_circuit,
    nnz_upper,
    offset_circuit,
    parse_circuit,
    rewrite_cnots,
    synth_field_based,
    synthesis_bound,
    synthesize,
)

from conftest import VALID_FIXTURES, random_symplectic, symplectic_matrices

# plain textbook matrices, independent of the simulator
_H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
_S = np.diag([1, 1j])


def dense_gate(g, n):
    def embed(op, q):
        mats = [np.eye(2)] * n
        mats[q] = op
        out = np.ones((1, 1))
        for m in mats:
            out = np.kron(out, m)
        return out

    if g.kind == "H":
        return embed(_H, g.qubits[0])
    if g.kind == "S":
        return embed(_S, g.qubits[0])
    dim = 2 ** n
    u = np.zeros((dim, dim), dtype=complex)
    for idx in range(dim):
        bits = [(idx >> (n - 1 - q)) & 1 for q in range(n)]
        a, b = g.qubits
        if g.kind == "CZ":
            u[idx, idx] = -1 if bits[a] and bits[b] else 1
        else:
            out = list(bits)
            out[b] ^= bits[a]
            u[sum(v << (n - 1 - q) for q, v in enumerate(out)), idx] = 1
    return u


ALL_GATES_3 = [H(q) for q in range(3)] + [S(q) for q in range(3)] + [CZ(0, 1), CZ(1, 2), CZ(0, 2)] + [
    CNOT(a, b) for a in range(3) for b in range(3) if a != b
]


@pytest.mark.parametrize("gate", ALL_GATES_3, ids=str)
def test_gate_symplectic_matches_dense_conjugation(gate):
    n = 3
    U = dense_gate(gate, n)
    M = gate_symplectic(gate, n)
    assert is_symplectic(M)
    for k in range(2 * n):
        a = tuple(int(i == k) for i in range(2 * n))
        lhs = U @ dense_matrix(a) @ U.conj().T
        rhs = dense_matrix(M @ a)
        assert np.allclose(lhs, rhs) or np.allclose(lhs, -rhs)


@pytest.mark.parametrize("gate", ALL_GATES_3, ids=str)
def test_simulator_matches_dense_gates(gate):
    assert np.allclose(circuit_unitary(Circuit(3, (gate,))), dense_gate(gate, 3))


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("T", (0,))
    with pytest.raises(ValueError):
        CZ(1, 1)
    with pytest.raises(ValueError):
        Gate("H", (0, 1))
    with pytest.raises(IndexError):
        Circuit(2, (H(2),))
    assert CZ(2, 0).qubits == (0, 2)


@settings(max_examples=60, deadline=None)
@given(symplectic_matrices(max_n=5))
def test_synthesis_round_trip(C):
    circ = synthesize(C)
    assert circuit_symplectic(circ) == C
    assert len(circ) <= synthesis_bound(C.nrows // 2)


def test_synthesis_rejects_non_symplectic():
    bad = Gf2Matrix.from_list([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]])
    with pytest.raises(NonSymplecticError) as info:
        synthesize(bad)
    assert "C^T J C" in str(info.value)
    assert info.value.entry is not None


def test_identity_synthesizes_to_empty_circuit():
    assert len(synthesize(Gf2Matrix.identity(6))) == 0


@pytest.mark.parametrize("name", VALID_FIXTURES)
def test_fixture_circuits(name):
    g = load_fixture(name).generator()
    circ = generator_circuit(g)
    assert circuit_symplectic(circ) == g.C
    assert set(circ.counts()) <= {"H", "S", "CZ", "CNOT"}


def test_field_fast_path_gate_count():
    B = load_fixture("field3").triple.B
    circ = synth_field_based(B)
    assert len(circ) == 3 + nnz_upper(B) == 7
    assert circuit_symplectic(circ) == Gf2Matrix.block(
        [[B, Gf2Matrix.identity(3)], [Gf2Matrix.identity(3), Gf2Matrix.zeros(3)]]
    )
    assert circ.counts()["CNOT"] == 0


def test_offset_circuit_action():
    off = Gf2Matrix.from_list([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    eye, zero = Gf2Matrix.identity(3), Gf2Matrix.zeros(3)
    assert circuit_symplectic(offset_circuit(off)) == Gf2Matrix.block([[eye, zero], [off, eye]])


def test_rewrite_cnots_keeps_action_and_removes_cnots():
    C = random_symplectic(3, random.Random(3))
    circ = synthesize(C)
    hcz = rewrite_cnots(circ)
    assert hcz.counts()["CNOT"] == 0
    assert circuit_symplectic(hcz) == C


def test_qasm_export():
    text = export_circuit(Circuit(2, (H(0), S(1), CZ(0, 1), CNOT(1, 0))), "qasm")
    assert text.splitlines() == [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        "qreg q[2];",
        "h q[0];",
        "s q[1];",
        "cz q[0],q[1];",
        "cx q[1],q[0];",
    ]


def test_json_circuit_roundtrip():
    circ = synthesize(random_symplectic(3, random.Random(5)))
    again = parse_circuit(export_circuit(circ, "json"))
    assert again == circ
    assert json.loads(export_circuit(circ, "json"))["n"] == 3


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_conjugation_correspondence_random(n, seed):
    C = random_symplectic(n, random.Random(seed))
    U = circuit_unitary(synthesize(C))
    for k in range(2 * n):
        a = tuple(int(i == k) for i in range(2 * n))
        lhs = U @ dense_matrix(a) @ U.conj().T
        rhs = dense_matrix(C @ a)
        assert np.allclose(lhs, rhs) or np.allclose(lhs, -rhs)
