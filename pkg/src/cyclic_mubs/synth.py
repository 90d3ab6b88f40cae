"""Compile symplectic matrices into H / S / CZ / CNOT circuits.

A gate acts on Pauli vectors a = (z; x) by a 2n x 2n matrix. A circuit applies
its gates left to right in time, so its action is M_last @ ... @ M_first.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import symplectic_violation
from .gf2 import DimensionError, Gf2Matrix

GATE_KINDS = ("H", "S", "CZ", "CNOT")
_QASM_NAMES = {"H": "h", "S": "s", "CZ": "cz", "CNOT": "cx"}


class NonSymplecticError(ValueError):
    def __init__(self, entry: tuple[int, int]):
        super().__init__(f"matrix is not symplectic: C^T J C - J is nonzero at entry {entry}")
        self.entry = entry


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        qs = tuple(int(q) for q in self.qubits)
        arity = 1 if self.kind in ("H", "S") else 2
        if len(qs) != arity:
            raise ValueError(f"{self.kind} takes {arity} qubit(s), got {qs}")
        if arity == 2 and qs[0] == qs[1]:
            raise ValueError(f"{self.kind} needs two distinct qubits, got {qs}")
        if self.kind == "CZ":
            qs = tuple(sorted(qs))
        object.__setattr__(self, "qubits", qs)

    def check_range(self, n: int) -> None:
        for q in self.qubits:
            if not 0 <= q < n:
                raise IndexError(f"{self} acts on qubit {q}, circuit has {n}")

    def __str__(self) -> str:
        return f"{self.kind}({','.join(map(str, self.qubits))})"


def H(q: int) -> Gate:
    return Gate("H", (q,))


def S(q: int) -> Gate:
    return Gate("S", (q,))


def CZ(a: int, b: int) -> Gate:
    return Gate("CZ", (a, b))


def CNOT(control: int, target: int) -> Gate:
    return Gate("CNOT", (control, target))


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("circuit needs at least one qubit")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            g.check_range(self.n)

    def __len__(self) -> int:
        return len(self.gates)

    def counts(self) -> dict[str, int]:
        out = {k: 0 for k in GATE_KINDS}
        for g in self.gates:
            out[g.kind] += 1
        return out

    def then(self, other: Circuit) -> Circuit:
        """``self`` followed by ``other``."""
        if other.n != self.n:
            raise ValueError("qubit counts differ")
        return Circuit(self.n, self.gates + other.gates)

    def to_json(self) -> dict:
        return {"n": self.n, "gates": [{"kind": g.kind, "qubits": list(g.qubits)} for g in self.gates]}

    @classmethod
    def from_json(cls, obj: dict) -> Circuit:
        return cls(obj["n"], tuple(Gate(g["kind"], tuple(g["qubits"])) for g in obj["gates"]))


def _transvection_rows(n: int, ops: Iterable[tuple[int, int]]) -> Gf2Matrix:
    """Identity plus, for each (dst, src), a 1 at row dst / column src."""
    rows = [1 << i for i in range(2 * n)]
    for dst, src in ops:
        rows[dst] ^= 1 << src
    return Gf2Matrix(2 * n, 2 * n, tuple(rows))


def gate_symplectic(g: Gate, n: int) -> Gf2Matrix:
    """Action of one gate on (z; x) column vectors."""
    g.check_range(n)
    z = lambda q: q  # noqa: E731
    x = lambda q: n + q  # noqa: E731
    if g.kind == "H":
        (q,) = g.qubits
        rows = [1 << i for i in range(2 * n)]
        rows[z(q)], rows[x(q)] = 1 << x(q), 1 << z(q)
        return Gf2Matrix(2 * n, 2 * n, tuple(rows))
    if g.kind == "S":
        (q,) = g.qubits
        return _transvection_rows(n, [(z(q), x(q))])
    if g.kind == "CZ":
        a, b = g.qubits
        return _transvection_rows(n, [(z(a), x(b)), (z(b), x(a))])
    c, t = g.qubits
    return _transvection_rows(n, [(x(t), x(c)), (z(c), z(t))])


def circuit_symplectic(c: Circuit) -> Gf2Matrix:
    m = Gf2Matrix.identity(2 * c.n)
    for g in c.gates:
        m = gate_symplectic(g, c.n) @ m
    return m


def synth_field_based(B: Gf2Matrix) -> Circuit:
    """H on every qubit, then S / CZ from the upper triangle of symmetric B.

    The result acts as [[B, I], [I, 0]].
    """
    if not B.is_symmetric():
        raise ValueError("field-based synthesis needs a symmetric B")
    n = B.nrows
    gates = [H(q) for q in range(n)]
    gates += [S(q) for q in range(n) if B[q, q]]
    gates += [CZ(i, j) for i in range(n) for j in range(i + 1, n) if B[i, j]]
    return Circuit(n, tuple(gates))


def offset_circuit(offset: Gf2Matrix) -> Circuit:
    """Circuit acting as [[I, 0], [offset, I]]: maps Z-type stabilisers onto the seed class."""
    if not offset.is_symmetric():
        raise ValueError("seed X-part must be symmetric")
    n = offset.nrows
    phase = synth_field_based(offset).gates[n:]
    hs = tuple(H(q) for q in range(n))
    return Circuit(n, hs + phase + hs)


class _Eliminator:
    """Left-multiplies a working matrix by gate actions, recording the gates."""

    def __init__(self, m: Gf2Matrix):
        self.n = m.nrows // 2
        self.rows = list(m.rows)
        self.gates: list[Gate] = []

    def bit(self, row: int, col: int) -> int:
        return (self.rows[row] >> col) & 1

    def apply(self, g: Gate) -> None:
        n, r = self.n, self.rows
        if g.kind == "H":
            (q,) = g.qubits
            r[q], r[n + q] = r[n + q], r[q]
        elif g.kind == "S":
            (q,) = g.qubits
            r[q] ^= r[n + q]
        elif g.kind == "CZ":
            a, b = g.qubits
            r[a] ^= r[n + b]
            r[b] ^= r[n + a]
        else:
            c, t = g.qubits
            r[n + t] ^= r[n + c]
            r[c] ^= r[t]
        self.gates.append(g)

    def image(self, col: int) -> tuple[list[int], list[int]]:
        """Current image of basis vector ``col`` split into (z bits, x bits)."""
        n = self.n
        return ([self.bit(i, col) for i in range(n)], [self.bit(n + i, col) for i in range(n)])


def synthesize(C: Gf2Matrix) -> Circuit:
    """Circuit whose symplectic action equals ``C`` exactly.

    Qubit by qubit, the images of X_k and then Z_k are reduced to themselves
    with gates on qubits >= k (S and H to make X_k's image pure-X, CNOTs to
    collect it onto qubit k; then H, S, CNOT to clear Z_k's image). The
    reducing sequence is reversed to give the circuit; every gate action is
    an involution mod 2. Uses at most 3 n (n + 1) gates.
    """
    if not C.is_square or C.nrows % 2:
        raise DimensionError(f"expected a 2n x 2n matrix, got {C.shape}")
    viol = symplectic_violation(C)
    if viol is not None:
        raise NonSymplecticError(viol)
    n = C.nrows // 2
    e = _Eliminator(C)
    for k in range(n):
        # image of X_k -> X_k
        z, x = e.image(n + k)
        for i in range(k, n):
            if z[i] and x[i]:
                e.apply(S(i))
        z, x = e.image(n + k)
        for i in range(k, n):
            if z[i]:
                e.apply(H(i))
        z, x = e.image(n + k)
        if not x[k]:
            src = next(i for i in range(k + 1, n) if x[i])
            e.apply(CNOT(src, k))
        z, x = e.image(n + k)
        for i in range(k + 1, n):
            if x[i]:
                e.apply(CNOT(k, i))
        # image of Z_k -> Z_k while keeping X_k fixed
        z, x = e.image(k)
        for i in range(k + 1, n):
            if x[i]:
                if z[i]:
                    e.apply(S(i))
                e.apply(H(i))
        z, x = e.image(k)
        for i in range(k + 1, n):
            if z[i]:
                e.apply(CNOT(i, k))
        z, x = e.image(k)
        if x[k]:
            e.apply(H(k))
            e.apply(S(k))
            e.apply(H(k))
    assert all(r == 1 << i for i, r in enumerate(e.rows)), "elimination did not reach identity"
    return Circuit(n, tuple(reversed(e.gates)))


def synthesis_bound(n: int) -> int:
    return 3 * n * (n + 1)


def rewrite_cnots(c: Circuit) -> Circuit:
    """Replace each CNOT(c, t) by H(t) CZ(c, t) H(t)."""
    gates: list[Gate] = []
    for g in c.gates:
        if g.kind == "CNOT":
            ctrl, tgt = g.qubits
            gates += [H(tgt), CZ(ctrl, tgt), H(tgt)]
        else:
            gates.append(g)
    return Circuit(c.n, tuple(gates))


def export_circuit(c: Circuit, fmt: str = "qasm") -> str:
    if fmt == "json":
        return json.dumps(c.to_json(), indent=2)
    if fmt != "qasm":
        raise ValueError(f"unknown circuit format {fmt!r}")
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.n}];"]
    for g in c.gates:
        args = ",".join(f"q[{q}]" for q in g.qubits)
        lines.append(f"{_QASM_NAMES[g.kind]} {args};")
    return "\n".join(lines) + "\n"


def parse_circuit(text: str, fmt: str = "json") -> Circuit:
    if fmt != "json":
        raise ValueError("only JSON circuits can be parsed back")
    return Circuit.from_json(json.loads(text))


def nnz_upper(B: Gf2Matrix) -> int:
    return sum(B[i, j] for i in range(B.nrows) for j in range(i, B.ncols))


def generator_circuit(g) -> Circuit:
    """Circuit for the generator C of a CyclicGenerator (fast path for R = I, A = 0)."""
    t = g.triple
    if t is not None and t.R.is_identity() and t.A.is_zero() and t.B.is_symmetric():
        return synth_field_based(t.B)
    return synthesize(g.C)


def seed_circuit(g) -> Circuit:
    """Circuit preparing the seed class from the computational basis."""
    return offset_circuit(g.offset)
