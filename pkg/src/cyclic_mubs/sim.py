"""Dense state-vector checks for small qubit counts.

Gate matrices use the usual conventions (H, S = diag(1, i), CZ, CNOT); qubit 0
is the leftmost tensor factor, matching :func:`cyclic_mubs.pauli.dense_matrix`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np

from .core import MubClass
from .entanglement import QubitPartition
from .gf2 import Gf2Matrix
from .pauli import dense_matrix
from .synth import Circuit

MAX_QUBITS = 10
UNITARY_TOL = 1e-10
UNBIASED_TOL = 1e-9
SVD_ZERO = 1e-8

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.diag([1, 1j]).astype(complex)
_CZ = np.diag([1, 1, 1, -1]).astype(complex).reshape(2, 2, 2, 2)
_CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
).reshape(2, 2, 2, 2)


@dataclass(frozen=True)
class SimReport:
    check: str
    passed: bool
    worst_deviation: float
    witness: Optional[dict[str, Any]] = None

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "passed": self.passed,
            "worst_deviation": float(self.worst_deviation),
            "witness": self.witness,
        }


def _apply_1q(psi: np.ndarray, gate: np.ndarray, q: int) -> np.ndarray:
    psi = np.tensordot(gate, psi, axes=([1], [q]))
    return np.moveaxis(psi, 0, q)


def _apply_2q(psi: np.ndarray, gate: np.ndarray, a: int, b: int) -> np.ndarray:
    psi = np.tensordot(gate, psi, axes=([2, 3], [a, b]))
    return np.moveaxis(psi, [0, 1], [a, b])


def circuit_unitary(c: Circuit) -> np.ndarray:
    n = c.n
    if n > MAX_QUBITS:
        raise ValueError(f"dense simulation limited to {MAX_QUBITS} qubits, got {n}")
    dim = 2 ** n
    # trailing axis indexes the input basis state
    psi = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
    for g in c.gates:
        if g.kind == "H":
            psi = _apply_1q(psi, _H, g.qubits[0])
        elif g.kind == "S":
            psi = _apply_1q(psi, _S, g.qubits[0])
        elif g.kind == "CZ":
            psi = _apply_2q(psi, _CZ, *g.qubits)
        else:
            psi = _apply_2q(psi, _CNOT, *g.qubits)
    return psi.reshape(dim, dim)


def unitarity_error(u: np.ndarray) -> float:
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])))


def verify_unbiased(
    U: np.ndarray, W: Optional[np.ndarray] = None, d: Optional[int] = None, tol: float = UNBIASED_TOL
) -> SimReport:
    """Check that every entry of W^dag U^m W has squared modulus 1/d, m = 1..d.

    The bases U^j W |b> (j = 0..d) are then pairwise unbiased, since every
    cross-basis overlap is such an entry with m = j' - j mod (d + 1).
    """
    d = U.shape[0] if d is None else d
    if W is None:
        W = np.eye(U.shape[0], dtype=complex)
    worst, witness = 0.0, None
    Um = np.eye(U.shape[0], dtype=complex)
    for m in range(1, d + 1):
        Um = U @ Um
        mags = np.abs(W.conj().T @ Um @ W) ** 2
        dev = np.abs(mags - 1.0 / d)
        idx = np.unravel_index(np.argmax(dev), dev.shape)
        if dev[idx] > worst:
            worst = float(dev[idx])
            witness = {"m": m, "row": int(idx[0]), "col": int(idx[1]), "deviation": worst}
    passed = worst < tol
    return SimReport("unbiased", passed, worst, None if passed else witness)


def cyclic_report(U: np.ndarray, d: int, tol: float = UNBIASED_TOL) -> SimReport:
    """U^{d+1} proportional to the identity."""
    P = np.linalg.matrix_power(U, d + 1)
    off = P - np.diag(np.diag(P))
    off_max = float(np.max(np.abs(off)))
    diag = np.diag(P)
    phase_spread = float(np.max(np.abs(diag - diag[0])))
    worst = max(off_max, phase_spread)
    witness = None if worst < tol else {"offdiag_max": off_max, "phase_spread": phase_spread}
    return SimReport("cyclic", worst < tol, worst, witness)


def verify_cyclic(U: np.ndarray, d: int, tol: float = UNBIASED_TOL) -> bool:
    return cyclic_report(U, d, tol).passed


def conjugation_report(U: np.ndarray, C: Gf2Matrix, vectors: Optional[Sequence[Sequence[int]]] = None,
                       tol: float = UNBIASED_TOL) -> SimReport:
    """U ZX(a) U^dag = +-ZX(C a) for each given a (all nonzero a by default)."""
    n2 = C.nrows
    if vectors is None:
        vectors = [v for v in itertools.product((0, 1), repeat=n2) if any(v)]
    worst, witness = 0.0, None
    Ud = U.conj().T
    for a in vectors:
        lhs = U @ dense_matrix(a) @ Ud
        rhs = dense_matrix(C @ a)
        dev = min(np.max(np.abs(lhs - rhs)), np.max(np.abs(lhs + rhs)))
        if dev > worst:
            worst, witness = float(dev), {"a": list(a), "deviation": float(dev)}
    passed = worst < tol
    return SimReport("conjugation", passed, worst, None if passed else witness)


def class_eigenbasis(c: MubClass, tol: float = UNITARY_TOL) -> list[np.ndarray]:
    """Joint eigenvectors from the rank-one projectors prod_k (I +- O_k) / 2.

    Ordered by sign pattern; bit k of the index set means eigenvalue -1 on
    generator k.
    """
    n = c.n
    if n > 6:
        raise ValueError("eigenbasis construction limited to 6 qubits")
    ops = [dense_matrix(g) for g in c.generators()]
    dim = 2 ** n
    eye = np.eye(dim, dtype=complex)
    basis = []
    for signs in range(dim):
        P = eye
        for k, O in enumerate(ops):
            s = -1 if (signs >> k) & 1 else 1
            P = P @ (eye + s * O) / 2
        rank = int(round(np.trace(P).real))
        if rank != 1:
            raise RuntimeError(f"class {c.index}: projector for sign pattern {signs} has rank {rank}")
        col = P[:, int(np.argmax(np.linalg.norm(P, axis=0)))]
        basis.append(col / np.linalg.norm(col))
    gram = np.array(basis) @ np.array(basis).conj().T
    if np.linalg.norm(gram - eye) > tol:
        raise RuntimeError(f"class {c.index}: eigenbasis not orthonormal")
    return basis


def schmidt_rank(state: np.ndarray, subset: Sequence[int], n: int, zero: float = SVD_ZERO) -> int:
    """Schmidt rank of ``state`` across ``subset`` | rest."""
    psi = np.asarray(state).reshape((2,) * n)
    rest = [q for q in range(n) if q not in subset]
    mat = np.transpose(psi, list(subset) + rest).reshape(2 ** len(subset), -1)
    sv = np.linalg.svd(mat, compute_uv=False)
    return int(np.sum(sv > zero))


def schmidt_shape(state: np.ndarray, n: Optional[int] = None, zero: float = SVD_ZERO) -> QubitPartition:
    """Finest qubit partition over which ``state`` is a product.

    Collects every subset S with Schmidt rank 1 across S | rest; each qubit's
    block is the intersection of all such S containing it.
    """
    if n is None:
        n = int(round(np.log2(len(state))))
    if n > 6:
        raise ValueError("Schmidt analysis limited to 6 qubits")
    full = (1 << n) - 1
    separable = [full]
    for mask in range(1, full):
        subset = [q for q in range(n) if (mask >> q) & 1]
        if schmidt_rank(state, subset, n, zero) == 1:
            separable.append(mask)
    blocks = set()
    for q in range(n):
        acc = full
        for m in separable:
            if (m >> q) & 1:
                acc &= m
        blocks.add(tuple(i for i in range(n) if (acc >> i) & 1))
    return QubitPartition(tuple(blocks))


def class_schmidt_partition(c: MubClass) -> QubitPartition:
    """Schmidt partition shared by every eigenvector of the class."""
    parts = {schmidt_shape(v, c.n) for v in class_eigenbasis(c)}
    if len(parts) != 1:
        raise RuntimeError(f"class {c.index}: eigenvectors disagree on factorisation {parts}")
    return parts.pop()


def numeric_checks(g, tol: float = UNBIASED_TOL, conjugation: bool = False) -> list[SimReport]:
    """Unbiasedness and cyclicity of the synthesized generator for ``g``."""
    from .synth import generator_circuit, seed_circuit

    U = circuit_unitary(generator_circuit(g))
    W = circuit_unitary(seed_circuit(g))
    reports = [verify_unbiased(U, W, g.d, tol), cyclic_report(U, g.d, tol)]
    if conjugation:
        reports.append(conjugation_report(U, g.C, tol=tol))
    return reports
