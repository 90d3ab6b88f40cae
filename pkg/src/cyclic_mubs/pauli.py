"""Generalized n-qubit Pauli operators in symplectic form.

A Pauli operator is indexed by a 2n-bit vector

    a = (z_1 ... z_n ; x_1 ... x_n)

with all z-components first. The operator is

    ZX(a) = (-i)^{z_1 x_1} sz^{z_1} sx^{x_1} (x) ... (x) (-i)^{z_n x_n} sz^{z_n} sx^{x_n}

where sz = |1><1| - |0><0| (note the sign) and sx = |0><1| + |1><0|. The
``(-i)`` factors make every ZX(a) Hermitian. Sites with z = x = 1 are written
as ``Y`` in labels.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

SIGMA_Z = np.array([[-1, 0], [0, 1]], dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
_ID = np.eye(2, dtype=complex)

MAX_DENSE_QUBITS = 10

_PHASE_TAGS = {0: "", 1: "i", 2: "-", 3: "-i"}
_TAG_PHASES = {v: k for k, v in _PHASE_TAGS.items()}
_SITE_LABEL = {(0, 0): "I", (0, 1): "X", (1, 0): "Z", (1, 1): "Y"}
_LABEL_SITE = {v: k for k, v in _SITE_LABEL.items()}


def as_vector(a: Sequence[int]) -> tuple[int, ...]:
    """Normalise a bit sequence to a tuple of 0/1 ints."""
    return tuple(int(v) & 1 for v in a)


def _split(a: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    v = as_vector(a)
    if len(v) % 2:
        raise ValueError(f"symplectic vector must have even length, got {len(v)}")
    n = len(v) // 2
    return v[:n], v[n:]


def _check_pair(a: Sequence[int], b: Sequence[int]):
    if len(a) != len(b):
        raise ValueError(f"vector lengths differ: {len(a)} vs {len(b)}")
    return _split(a), _split(b)


@dataclass(frozen=True)
class PauliOp:
    """``i**phase_exp`` times the bare product of sz^z sx^x over the qubits.

    The canonical (Hermitian) operator for a given vector has
    ``phase_exp == 3 * (number of Y sites) mod 4``.
    """

    zbits: tuple[int, ...]
    xbits: tuple[int, ...]
    phase_exp: int = 0

    def __post_init__(self):
        if len(self.zbits) != len(self.xbits):
            raise ValueError("zbits and xbits must have equal length")
        object.__setattr__(self, "zbits", as_vector(self.zbits))
        object.__setattr__(self, "xbits", as_vector(self.xbits))
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @property
    def n(self) -> int:
        return len(self.zbits)

    @property
    def vector(self) -> tuple[int, ...]:
        return self.zbits + self.xbits

    @property
    def y_count(self) -> int:
        return sum(z & x for z, x in zip(self.zbits, self.xbits))

    @property
    def canonical_phase(self) -> int:
        return (3 * self.y_count) % 4

    def is_canonical(self) -> bool:
        return self.phase_exp == self.canonical_phase

    def is_identity(self) -> bool:
        return not any(self.zbits) and not any(self.xbits) and self.phase_exp == 0

    def __mul__(self, other: PauliOp) -> PauliOp:
        if self.n != other.n:
            raise ValueError(f"qubit counts differ: {self.n} vs {other.n}")
        # sx^a sz^b = (-1)^{ab} sz^b sx^a on each site
        swaps = sum(x1 & z2 for x1, z2 in zip(self.xbits, other.zbits))
        return PauliOp(
            tuple(a ^ b for a, b in zip(self.zbits, other.zbits)),
            tuple(a ^ b for a, b in zip(self.xbits, other.xbits)),
            self.phase_exp + other.phase_exp + 2 * swaps,
        )

    @property
    def label(self) -> str:
        tag = _PHASE_TAGS[(self.phase_exp - self.canonical_phase) % 4]
        return tag + "".join(_SITE_LABEL[z, x] for z, x in zip(self.zbits, self.xbits))

    def __str__(self) -> str:
        return self.label

    @classmethod
    def from_label(cls, text: str) -> PauliOp:
        """Parse ``"XZI"``, ``"-iYY"`` and the like; the tag is relative to canonical."""
        body = text.lstrip("+-i")
        tag = text[: len(text) - len(body)].lstrip("+")
        if tag not in _TAG_PHASES:
            raise ValueError(f"bad phase tag {tag!r} in {text!r}")
        try:
            sites = [_LABEL_SITE[c] for c in body]
        except KeyError as exc:
            raise ValueError(f"bad Pauli label {text!r}") from exc
        op = zx_from_vector([s[0] for s in sites] + [s[1] for s in sites])
        return PauliOp(op.zbits, op.xbits, op.phase_exp + _TAG_PHASES[tag])


def zx_from_vector(a: Sequence[int]) -> PauliOp:
    """The canonical Hermitian operator ZX(a)."""
    z, x = _split(a)
    y = sum(zi & xi for zi, xi in zip(z, x))
    return PauliOp(z, x, 3 * y)


def symplectic_product(a: Sequence[int], b: Sequence[int]) -> int:
    """0 if ZX(a) and ZX(b) commute, 1 if they anticommute."""
    (az, ax), (bz, bx) = _check_pair(a, b)
    return (sum(p & q for p, q in zip(az, bx)) + sum(p & q for p, q in zip(ax, bz))) & 1


def qubitwise_commutation_vector(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Per-qubit anticommutation indicators; their parity is the symplectic product."""
    (az, ax), (bz, bx) = _check_pair(a, b)
    return tuple((p & s) ^ (q & r) for p, q, r, s in zip(az, ax, bz, bx))


def label(a: Sequence[int]) -> str:
    return zx_from_vector(a).label


def vector_from_label(text: str) -> tuple[int, ...]:
    return PauliOp.from_label(text).vector


def dense_matrix(p: PauliOp | Sequence[int]) -> np.ndarray:
    """Dense 2**n x 2**n matrix; qubit 0 is the leftmost tensor factor."""
    if not isinstance(p, PauliOp):
        p = zx_from_vector(p)
    if p.n > MAX_DENSE_QUBITS:
        raise ValueError(f"dense form limited to {MAX_DENSE_QUBITS} qubits, got {p.n}")
    factors = []
    for z, x in zip(p.zbits, p.xbits):
        f = _ID
        if z:
            f = SIGMA_Z
        if x:
            f = f @ SIGMA_X
        factors.append(f)
    mat = reduce(np.kron, factors, np.ones((1, 1), dtype=complex))
    return (1j ** p.phase_exp) * mat
