"""Cyclic generators and the Pauli-class partitions they produce.

A generator triple (B, R, A) of n x n matrices defines the 2n x 2n matrix

    C = [[B + A R^-1,  R + B A + A R^-1 A],
         [R^-1,        R^-1 A           ]]

and classes G_j = C^j G_0, j = 0..d with d = 2**n. Each class is the set of
nonzero vectors in the column space of G_j.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from typing import Optional

from .gf2 import (
    DimensionError,
    Gf2Matrix,
    IndexNotFoundError,
    SingularMatrixError,
    char_poly,
    fibonacci_index,
    fibonacci_poly,
    in_polynomial_span,
    mat_inverse,
    semigroup_a_condition,
)
from .pauli import label, symplectic_product

SET_TYPES = ("field", "group", "semigroup", "explicit")


class InvalidGeneratorError(ValueError):
    """A triple or explicit matrix failed validation; ``report`` holds the details."""

    def __init__(self, message: str, report: ValidationReport):
        super().__init__(message)
        self.report = report


class RankDeficientClassError(ValueError):
    def __init__(self, j: int, rank: int):
        super().__init__(f"class {j} generator has rank {rank}, expected full column rank")
        self.j = j
        self.rank = rank


class UnclassifiedTripleError(ValueError):
    """A != 0 but A is of the form q(B) R + diagonal."""


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"check": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"passed": self.ok, "checks": [c.to_json() for c in self.checks]}

    def __str__(self) -> str:
        lines = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"[{mark}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        return "\n".join(lines)


@dataclass(frozen=True)
class GeneratorTriple:
    B: Gf2Matrix
    R: Gf2Matrix
    A: Gf2Matrix

    def __post_init__(self):
        n = self.B.nrows
        for name in ("B", "R", "A"):
            m = getattr(self, name)
            if m.shape != (n, n):
                raise DimensionError(f"{name} has shape {m.shape}, expected ({n}, {n})")

    @property
    def n(self) -> int:
        return self.B.nrows

    @property
    def d(self) -> int:
        return 2 ** self.n

    def to_json(self) -> dict:
        return {"n": self.n, "B": self.B.to_json(), "R": self.R.to_json(), "A": self.A.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> GeneratorTriple:
        return cls(Gf2Matrix.from_json(obj["B"]), Gf2Matrix.from_json(obj["R"]), Gf2Matrix.from_json(obj["A"]))


@dataclass(frozen=True)
class CyclicGenerator:
    C: Gf2Matrix
    G0: Gf2Matrix
    triple: Optional[GeneratorTriple] = None

    @property
    def n(self) -> int:
        return self.G0.ncols

    @property
    def d(self) -> int:
        return 2 ** self.n

    @property
    def source(self) -> str:
        return "triple" if self.triple is not None else "explicit"

    @property
    def offset(self) -> Gf2Matrix:
        """The X-part of the seed."""
        return self.G0.submatrix(self.n, 2 * self.n, 0, self.n)

    def to_json(self) -> dict:
        out = {"n": self.n, "source": self.source, "C": self.C.to_json(), "G0": self.G0.to_json()}
        if self.triple is not None:
            out["triple"] = self.triple.to_json()
        return out


@dataclass(frozen=True)
class MubClass:
    index: int
    G: Gf2Matrix
    elements: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.G.ncols

    def generators(self) -> list[tuple[int, ...]]:
        return self.G.columns()

    def labels(self) -> list[str]:
        return [label(e) for e in self.elements]


@dataclass(frozen=True)
class CyclicMubSet:
    generator: CyclicGenerator
    classes: tuple[MubClass, ...]
    set_type: str
    structure: object = None  # entanglement.StructureVector once classified

    @property
    def n(self) -> int:
        return self.generator.n

    @property
    def d(self) -> int:
        return 2 ** self.n


# ---------------------------------------------------------------------------


def symplectic_form(n: int) -> Gf2Matrix:
    """J = [[0, I], [I, 0]] for the (z; x) layout."""
    eye, zero = Gf2Matrix.identity(n), Gf2Matrix.zeros(n)
    return Gf2Matrix.block([[zero, eye], [eye, zero]])


def symplectic_violation(c: Gf2Matrix) -> Optional[tuple[int, int]]:
    """First (row, col) where C^T J C differs from J, or None if C is symplectic."""
    if not c.is_square or c.nrows % 2:
        raise DimensionError(f"symplectic matrices are 2n x 2n, got {c.shape}")
    j = symplectic_form(c.nrows // 2)
    diff = c.T @ j @ c + j
    for i, r in enumerate(diff.rows):
        if r:
            return i, (r & -r).bit_length() - 1
    return None


def is_symplectic(c: Gf2Matrix) -> bool:
    return symplectic_violation(c) is None


def matrix_order(c: Gf2Matrix, limit: int) -> Optional[int]:
    """Smallest k in 1..limit with c^k = I, else None."""
    p = c
    for k in range(1, limit + 1):
        if p.is_identity():
            return k
        p = p @ c
    return None


def validate_triple(t: GeneratorTriple) -> ValidationReport:
    """Check the validity conditions on (B, R, A); never raises."""
    checks = [
        Check("R symmetric", t.R.is_symmetric()),
        Check("BR symmetric", (t.B @ t.R).is_symmetric()),
        Check("A symmetric", t.A.is_symmetric()),
    ]
    rank = t.R.rank()
    checks.append(Check("R invertible", rank == t.n, f"rank {rank} of {t.n}"))
    p = char_poly(t.B)
    target = t.d + 1
    try:
        idx = fibonacci_index(p)
        checks.append(Check("Fibonacci index", idx == target, f"char poly {p}: index {idx}, need {target}"))
    except IndexNotFoundError as exc:
        checks.append(Check("Fibonacci index", False, str(exc)))
    return ValidationReport(tuple(checks))


def generator_matrix(t: GeneratorTriple) -> Gf2Matrix:
    """The block formula for C, without validating the triple."""
    r_inv = mat_inverse(t.R)
    a_r = t.A @ r_inv
    return Gf2Matrix.block(
        [
            [t.B + a_r, t.R + t.B @ t.A + a_r @ t.A],
            [r_inv, r_inv @ t.A],
        ]
    )


def standard_seed(n: int, offset: Optional[Gf2Matrix] = None) -> Gf2Matrix:
    """G_0 = (I; offset) with offset defaulting to 0."""
    x_part = Gf2Matrix.zeros(n) if offset is None else offset
    if x_part.shape != (n, n):
        raise DimensionError(f"seed X-part has shape {x_part.shape}, expected ({n}, {n})")
    return Gf2Matrix.vstack([Gf2Matrix.identity(n), x_part])


def build_C(t: GeneratorTriple, offset: Optional[Gf2Matrix] = None) -> CyclicGenerator:
    report = validate_triple(t)
    if not report.ok:
        names = ", ".join(c.name for c in report.failures())
        raise InvalidGeneratorError(f"invalid generator triple ({names})", report)
    return CyclicGenerator(generator_matrix(t), standard_seed(t.n, offset), t)


def from_explicit(c: Gf2Matrix, offset: Optional[Gf2Matrix] = None) -> CyclicGenerator:
    """Wrap an explicit 2n x 2n generator, checking symplecticity and order."""
    viol = symplectic_violation(c)
    n = c.nrows // 2
    d = 2 ** n
    order = matrix_order(c, d + 1)
    checks = [
        Check("C symplectic", viol is None, "" if viol is None else f"(C^T J C + J) nonzero at {viol}"),
        Check("order d+1", order == d + 1, f"order {order}, need {d + 1}"),
    ]
    report = ValidationReport(tuple(checks))
    if not report.ok:
        raise InvalidGeneratorError("invalid explicit generator", report)
    return CyclicGenerator(c, standard_seed(n, offset))


def c_power(g: CyclicGenerator, j: int) -> Gf2Matrix:
    if j < 0:
        raise ValueError("power must be non-negative")
    return g.C ** j


def _fib_at(b: Gf2Matrix, j: int) -> Gf2Matrix:
    # F_{-1} = 1 continues the recurrence backwards
    if j == -1:
        return Gf2Matrix.identity(b.nrows)
    return fibonacci_poly(j)(b)


def c_power_closed_form(t: GeneratorTriple, j: int) -> Gf2Matrix:
    """C^j from Fibonacci polynomials in B, independent of repeated products."""
    if j < 0:
        raise ValueError("power must be non-negative")
    B, R, A = t.B, t.R, t.A
    r_inv = mat_inverse(R)
    f_next, f_cur, f_prev = _fib_at(B, j + 1), _fib_at(B, j), _fib_at(B, j - 1)
    inner = f_cur @ A + f_prev @ R
    return Gf2Matrix.block(
        [
            [f_next + A @ r_inv @ f_cur, f_next @ A + f_cur @ R + A @ r_inv @ inner],
            [r_inv @ f_cur, r_inv @ inner],
        ]
    )


def generator_closed_form(t: GeneratorTriple, j: int) -> Gf2Matrix:
    """(F_{j+1}(B) F_j(B)^-1 R + A; I), a basis of the same class as C^j (I; 0).

    Raises SingularMatrixError when F_j(B) is singular.
    """
    f_cur = _fib_at(t.B, j)
    top = _fib_at(t.B, j + 1) @ mat_inverse(f_cur) @ t.R + t.A
    return Gf2Matrix.vstack([top, Gf2Matrix.identity(t.n)])


def generator_j(g: CyclicGenerator, j: int, form: str = "product") -> Gf2Matrix:
    """G_j = C^j G_0, or the Fibonacci closed form when ``form="closed"``.

    The closed form is only defined for triple-based generators with the
    standard seed; when F_j(B) is singular it warns and falls back to the
    product form.
    """
    if not 0 <= j <= g.d:
        raise ValueError(f"class index {j} outside 0..{g.d}")
    if form == "closed" and j >= 1:
        if g.triple is None or not g.offset.is_zero():
            raise ValueError("closed form needs a triple and the standard seed")
        try:
            return generator_closed_form(g.triple, j)
        except SingularMatrixError:
            warnings.warn(f"F_{j}(B) is singular; using C^{j} G_0", stacklevel=2)
    elif form not in ("product", "closed"):
        raise ValueError(f"unknown form {form!r}")
    return c_power(g, j) @ g.G0


def column_span(g: Gf2Matrix) -> tuple[tuple[int, ...], ...]:
    """Nonzero vectors G c, c ranging over Z_2^k \\ {0} (c_0 is the low bit)."""
    cols = [g.column_int(j) for j in range(g.ncols)]
    out = []
    for mask in range(1, 1 << g.ncols):
        v = 0
        for j, col in enumerate(cols):
            if (mask >> j) & 1:
                v ^= col
        out.append(tuple((v >> i) & 1 for i in range(g.nrows)))
    return tuple(out)


def make_class(j: int, G: Gf2Matrix) -> MubClass:
    rank = G.rank()
    if rank != G.ncols:
        raise RankDeficientClassError(j, rank)
    return MubClass(j, G, column_span(G))


def build_classes(g: CyclicGenerator, set_type: Optional[str] = None) -> CyclicMubSet:
    if set_type is None:
        set_type = classify_set_type(g.triple) if g.triple is not None else "explicit"
    classes = []
    G = g.G0
    for j in range(g.d + 1):
        classes.append(make_class(j, G))
        G = g.C @ G
    return CyclicMubSet(g, tuple(classes), set_type)


def _class_is_abelian(cls: MubClass) -> tuple[bool, str]:
    n = cls.n
    gz = cls.G.submatrix(0, n, 0, n)
    gx = cls.G.submatrix(n, 2 * n, 0, n)
    if not (gz.T @ gx).is_symmetric():
        return False, "Gz^T Gx not symmetric"
    for a, b in itertools.combinations(cls.elements, 2):
        if symplectic_product(a, b):
            return False, f"{label(a)} and {label(b)} anticommute"
    return True, ""


def validate_mub_partition(s: CyclicMubSet) -> ValidationReport:
    """Abelian classes of rank n, pairwise disjoint, covering all d^2 - 1 vectors."""
    n, d = s.n, s.d
    abelian = rank_ok = disjoint = True
    abelian_note = rank_note = disjoint_note = ""
    seen: dict[tuple[int, ...], int] = {}
    for cls in s.classes:
        ok, note = _class_is_abelian(cls)
        if not ok and abelian:
            abelian, abelian_note = False, f"class {cls.index}: {note}"
        r = cls.G.rank()
        if rank_ok:
            if r != n:
                rank_ok, rank_note = False, f"class {cls.index}: rank {r}"
            elif set(cls.elements) != set(column_span(cls.G)) or len(cls.elements) != d - 1:
                rank_ok, rank_note = False, f"class {cls.index}: elements differ from span of G"
        for e in cls.elements:
            if e in seen and seen[e] != cls.index and disjoint:
                disjoint, disjoint_note = False, f"{label(e)} in classes {seen[e]} and {cls.index}"
            seen.setdefault(e, cls.index)
    zero = (0,) * (2 * n)
    covered = len(seen) == d * d - 1 and zero not in seen
    cover_note = f"{len(seen)} of {d * d - 1} nonzero vectors"
    count_ok = len(s.classes) == d + 1
    return ValidationReport(
        (
            Check("class count d+1", count_ok, f"{len(s.classes)} classes"),
            Check("abelian", abelian, abelian_note),
            Check("rank n", rank_ok, rank_note),
            Check("pairwise disjoint", disjoint, disjoint_note),
            Check("covers all", covered, cover_note),
        )
    )


def classify_set_type(t: GeneratorTriple) -> str:
    """field / group / semigroup from the shape of R and A.

    Validity of the triple is not re-checked here; see :func:`validate_triple`.
    """
    if t.A.is_zero():
        return "field" if in_polynomial_span(t.R, t.B) else "group"
    if semigroup_a_condition(t.A, t.B, t.R):
        return "semigroup"
    raise UnclassifiedTripleError("A is nonzero but equals q(B) R plus a diagonal matrix")
