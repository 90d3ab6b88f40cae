"""Dense matrices and polynomials over GF(2).

Matrix rows are packed into Python ints: bit ``j`` of ``rows[i]`` is entry
``(i, j)``. Polynomials are packed the same way, bit ``i`` holding the
coefficient of ``x**i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "DimensionError",
    "SingularMatrixError",
    "IndexNotFoundError",
    "Gf2Matrix",
    "Gf2Poly",
    "mat_inverse",
    "char_poly",
    "fibonacci_poly",
    "fibonacci_index",
    "poly_eval_at_matrix",
    "in_polynomial_span",
    "semigroup_a_condition",
    "nullspace",
    "monic_polys",
]

MAX_CHARPOLY_SIZE = 16


class DimensionError(ValueError):
    """Operand shapes are incompatible."""


class SingularMatrixError(ValueError):
    """Raised by :func:`mat_inverse` on a singular input; ``rank`` is attached."""

    def __init__(self, message: str, rank: int):
        super().__init__(message)
        self.rank = rank


class IndexNotFoundError(ValueError):
    """No Fibonacci polynomial below the search bound is divisible by ``p``."""


def _popcount(v: int) -> int:
    return bin(v).count("1")


def _row_to_int(bits: Iterable[int]) -> int:
    out = 0
    for j, b in enumerate(bits):
        if int(b) & 1:
            out |= 1 << j
    return out


@dataclass(frozen=True)
class Gf2Matrix:
    """Immutable dense matrix over Z_2 with bit-packed rows."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.nrows < 1 or self.ncols < 1:
            raise DimensionError(f"matrix must be at least 1x1, got {self.nrows}x{self.ncols}")
        if len(self.rows) != self.nrows:
            raise DimensionError(f"expected {self.nrows} rows, got {len(self.rows)}")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row value {r} does not fit in {self.ncols} columns")

    # construction -----------------------------------------------------------

    @classmethod
    def from_list(cls, data: Sequence[Sequence[int]]) -> Gf2Matrix:
        data = [list(r) for r in data]
        if not data or not data[0]:
            raise DimensionError("matrix must be at least 1x1")
        ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise DimensionError("ragged row lengths")
            for v in r:
                if int(v) not in (0, 1):
                    raise ValueError(f"entry {v!r} is not a bit")
        return cls(len(data), ncols, tuple(_row_to_int(r) for r in data))

    @classmethod
    def from_array(cls, arr) -> Gf2Matrix:
        arr = np.asarray(arr, dtype=np.int64) % 2
        if arr.ndim != 2:
            raise DimensionError(f"expected a 2-d array, got shape {arr.shape}")
        return cls.from_list(arr.tolist())

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> Gf2Matrix:
        return cls.from_list(columns).T

    @classmethod
    def identity(cls, n: int) -> Gf2Matrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> Gf2Matrix:
        ncols = nrows if ncols is None else ncols
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def diagonal(cls, bits: Sequence[int]) -> Gf2Matrix:
        n = len(bits)
        return cls(n, n, tuple((int(b) & 1) << i for i, b in enumerate(bits)))

    @classmethod
    def block(cls, grid: Sequence[Sequence[Gf2Matrix]]) -> Gf2Matrix:
        """Assemble a block matrix from a row-major grid of blocks."""
        return cls.vstack([cls.hstack(row) for row in grid])

    @classmethod
    def hstack(cls, mats: Sequence[Gf2Matrix]) -> Gf2Matrix:
        nrows = mats[0].nrows
        for m in mats:
            if m.nrows != nrows:
                raise DimensionError(
                    f"hstack: row counts differ ({mats[0].shape} vs {m.shape})"
                )
        rows = [0] * nrows
        shift = 0
        for m in mats:
            for i, r in enumerate(m.rows):
                rows[i] |= r << shift
            shift += m.ncols
        return cls(nrows, shift, tuple(rows))

    @classmethod
    def vstack(cls, mats: Sequence[Gf2Matrix]) -> Gf2Matrix:
        ncols = mats[0].ncols
        for m in mats:
            if m.ncols != ncols:
                raise DimensionError(
                    f"vstack: column counts differ ({mats[0].shape} vs {m.shape})"
                )
        rows = tuple(r for m in mats for r in m.rows)
        return cls(len(rows), ncols, rows)

    # access -----------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= j < self.ncols):
            raise IndexError(f"column {j} out of range")
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> tuple[int, ...]:
        r = self.rows[i]
        return tuple((r >> j) & 1 for j in range(self.ncols))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple((r >> j) & 1 for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def column_int(self, j: int) -> int:
        """Column ``j`` packed with bit ``i`` = entry ``(i, j)``."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                out |= 1 << i
        return out

    def to_list(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.nrows)]

    def to_array(self) -> np.ndarray:
        return np.array(self.to_list(), dtype=np.uint8)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> Gf2Matrix:
        """Rows ``r0:r1`` and columns ``c0:c1``."""
        mask = (1 << (c1 - c0)) - 1
        return Gf2Matrix(r1 - r0, c1 - c0, tuple((r >> c0) & mask for r in self.rows[r0:r1]))

    def permute(self, perm: Sequence[int]) -> Gf2Matrix:
        """Simultaneous row/column relabelling: entry (i, j) moves to (perm[i], perm[j])."""
        if not self.is_square or sorted(perm) != list(range(self.nrows)):
            raise DimensionError("permute needs a square matrix and a full permutation")
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i in range(self.nrows):
            for j in range(self.ncols):
                out[perm[i]][perm[j]] = self[i, j]
        return Gf2Matrix.from_list(out)

    # arithmetic -------------------------------------------------------------

    def __add__(self, other: Gf2Matrix) -> Gf2Matrix:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Gf2Matrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    __sub__ = __add__

    def __matmul__(self, other):
        if isinstance(other, Gf2Matrix):
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            brows = other.rows
            out = []
            for a in self.rows:
                acc = 0
                j = 0
                while a:
                    if a & 1:
                        acc ^= brows[j]
                    a >>= 1
                    j += 1
                out.append(acc)
            return Gf2Matrix(self.nrows, other.ncols, tuple(out))
        vec = tuple(int(v) & 1 for v in other)
        if len(vec) != self.ncols:
            raise DimensionError(f"cannot multiply {self.shape} by vector of length {len(vec)}")
        v = _row_to_int(vec)
        return tuple(_popcount(r & v) & 1 for r in self.rows)

    def __pow__(self, k: int) -> Gf2Matrix:
        if not self.is_square:
            raise DimensionError(f"power of non-square {self.shape} matrix")
        if k < 0:
            return mat_inverse(self) ** (-k)
        result = Gf2Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    @property
    def T(self) -> Gf2Matrix:
        out = []
        for j in range(self.ncols):
            acc = 0
            for i, r in enumerate(self.rows):
                if (r >> j) & 1:
                    acc |= 1 << i
            out.append(acc)
        return Gf2Matrix(self.ncols, self.nrows, tuple(out))

    # predicates -------------------------------------------------------------

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.T

    def is_zero(self) -> bool:
        return not any(self.rows)

    def is_identity(self) -> bool:
        return self.is_square and all(r == 1 << i for i, r in enumerate(self.rows))

    def off_diagonal(self) -> Gf2Matrix:
        """Copy with the diagonal cleared."""
        return Gf2Matrix(
            self.nrows, self.ncols, tuple(r & ~(1 << i) for i, r in enumerate(self.rows))
        )

    def rank(self) -> int:
        rows = list(self.rows)
        rank = 0
        for col in range(self.ncols):
            bit = 1 << col
            pivot = next((i for i in range(rank, len(rows)) if rows[i] & bit), None)
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            for i in range(len(rows)):
                if i != rank and rows[i] & bit:
                    rows[i] ^= rows[rank]
            rank += 1
        return rank

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.nrows

    def inverse(self) -> Gf2Matrix:
        return mat_inverse(self)

    # serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {"rows": self.nrows, "cols": self.ncols, "data": self.to_list()}

    @classmethod
    def from_json(cls, obj) -> Gf2Matrix:
        """Accept ``{"rows", "cols", "data"}`` or a bare nested list."""
        if isinstance(obj, dict):
            m = cls.from_list(obj["data"])
            if ("rows" in obj and obj["rows"] != m.nrows) or ("cols" in obj and obj["cols"] != m.ncols):
                raise DimensionError(
                    f"declared shape ({obj.get('rows')}, {obj.get('cols')}) does not match data {m.shape}"
                )
            return m
        return cls.from_list(obj)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(b) for b in self.row(i)) for i in range(self.nrows))


@dataclass(frozen=True)
class Gf2Poly:
    """Polynomial over Z_2. ``degree`` is ``None`` for the zero polynomial."""

    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("coefficient mask must be non-negative")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> Gf2Poly:
        """Build from ascending-degree coefficients."""
        return cls(_row_to_int(coeffs))

    @classmethod
    def x(cls) -> Gf2Poly:
        return cls(0b10)

    @classmethod
    def one(cls) -> Gf2Poly:
        return cls(1)

    @classmethod
    def monomial(cls, k: int) -> Gf2Poly:
        return cls(1 << k)

    @property
    def degree(self) -> int | None:
        return None if self.bits == 0 else self.bits.bit_length() - 1

    @property
    def coeffs(self) -> tuple[int, ...]:
        if self.bits == 0:
            return ()
        return tuple((self.bits >> i) & 1 for i in range(self.bits.bit_length()))

    def is_zero(self) -> bool:
        return self.bits == 0

    def __add__(self, other: Gf2Poly) -> Gf2Poly:
        return Gf2Poly(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: Gf2Poly) -> Gf2Poly:
        a, b, acc = self.bits, other.bits, 0
        while b:
            if b & 1:
                acc ^= a
            a <<= 1
            b >>= 1
        return Gf2Poly(acc)

    def __divmod__(self, other: Gf2Poly) -> tuple[Gf2Poly, Gf2Poly]:
        if other.bits == 0:
            raise ZeroDivisionError("polynomial division by zero")
        q, r = 0, self.bits
        dlen = other.bits.bit_length()
        while r and r.bit_length() >= dlen:
            shift = r.bit_length() - dlen
            q ^= 1 << shift
            r ^= other.bits << shift
        return Gf2Poly(q), Gf2Poly(r)

    def __mod__(self, other: Gf2Poly) -> Gf2Poly:
        return divmod(self, other)[1]

    def __floordiv__(self, other: Gf2Poly) -> Gf2Poly:
        return divmod(self, other)[0]

    def divides(self, other: Gf2Poly) -> bool:
        return (other % self).is_zero()

    def __call__(self, m: Gf2Matrix) -> Gf2Matrix:
        return poly_eval_at_matrix(self, m)

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj: dict) -> Gf2Poly:
        return cls.from_coeffs(obj["coeffs"])

    def __str__(self) -> str:
        if self.bits == 0:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            if (self.bits >> i) & 1:
                terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
        return " + ".join(terms)


def mat_inverse(m: Gf2Matrix) -> Gf2Matrix:
    """Gauss-Jordan inverse mod 2."""
    if not m.is_square:
        raise DimensionError(f"cannot invert non-square {m.shape} matrix")
    n = m.nrows
    rows = [r | (1 << (n + i)) for i, r in enumerate(m.rows)]
    for col in range(n):
        bit = 1 << col
        pivot = next((i for i in range(col, n) if rows[i] & bit), None)
        if pivot is None:
            raise SingularMatrixError(f"matrix is not invertible (rank {m.rank()} < {n})", m.rank())
        rows[col], rows[pivot] = rows[pivot], rows[col]
        for i in range(n):
            if i != col and rows[i] & bit:
                rows[i] ^= rows[col]
    return Gf2Matrix(n, n, tuple(r >> n for r in rows))


def nullspace(m: Gf2Matrix) -> list[int]:
    """Basis of ``{v : m v = 0}``, each vector packed as an int over ``m.ncols`` bits."""
    rows = list(m.rows)
    pivots: list[int] = []
    rank = 0
    for col in range(m.ncols):
        bit = 1 << col
        p = next((i for i in range(rank, len(rows)) if rows[i] & bit), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] & bit:
                rows[i] ^= rows[rank]
        pivots.append(col)
        rank += 1
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = 1 << f
        for r, pc in enumerate(pivots):
            if (rows[r] >> f) & 1:
                v |= 1 << pc
        basis.append(v)
    return basis


def _hessenberg(m: Gf2Matrix) -> list[list[int]]:
    """Upper Hessenberg form similar to ``m`` (over Z_2, as a bit grid)."""
    h = m.to_list()
    n = len(h)
    for k in range(n - 2):
        piv = next((i for i in range(k + 1, n) if h[i][k]), None)
        if piv is None:
            continue
        if piv != k + 1:
            h[piv], h[k + 1] = h[k + 1], h[piv]
            for row in h:
                row[piv], row[k + 1] = row[k + 1], row[piv]
        for j in range(k + 2, n):
            if h[j][k]:
                # E h E with E = I + e_j e_{k+1}^T (self-inverse mod 2)
                h[j] = [a ^ b for a, b in zip(h[j], h[k + 1])]
                for row in h:
                    row[k + 1] ^= row[j]
    return h


def char_poly(m: Gf2Matrix) -> Gf2Poly:
    """det(xI + m) over Z_2, via Hessenberg reduction."""
    if not m.is_square:
        raise DimensionError(f"characteristic polynomial of non-square {m.shape} matrix")
    if m.nrows > MAX_CHARPOLY_SIZE:
        raise DimensionError(f"matrix size {m.nrows} exceeds {MAX_CHARPOLY_SIZE}")
    h = _hessenberg(m)
    n = len(h)
    x = Gf2Poly.x()
    p = [Gf2Poly.one()]
    for k in range(n):
        acc = (x + Gf2Poly(h[k][k])) * p[k]
        chain = 1
        for i in range(k - 1, -1, -1):
            chain &= h[i + 1][i]
            if not chain:
                break
            if h[i][k]:
                acc = acc + p[i]
        p.append(acc)
    return p[n]


def fibonacci_poly(j: int) -> Gf2Poly:
    """F_j(x) over Z_2 with F_0 = 0, F_1 = 1, F_{j+1} = x F_j + F_{j-1}."""
    if j < 0:
        raise ValueError("j must be non-negative")
    prev, cur = 0, 1
    if j == 0:
        return Gf2Poly(0)
    for _ in range(j - 1):
        prev, cur = cur, (cur << 1) ^ prev
    return Gf2Poly(cur)


def fibonacci_index(p: Gf2Poly, bound: int | None = None) -> int:
    """Smallest ``j >= 1`` such that ``p`` divides ``F_j``.

    Residues ``F_j mod p`` are carried through the recurrence, so no large
    polynomials are ever formed. ``bound`` defaults to ``2**(deg p + 2)``.
    """
    if p.degree is None or p.degree < 1:
        raise ValueError(f"fibonacci_index needs a polynomial of degree >= 1, got {p}")
    if bound is None:
        bound = 1 << (p.degree + 2)
    prev, cur = Gf2Poly(0), Gf2Poly(1)
    x = Gf2Poly.x()
    for j in range(1, bound + 1):
        if cur.is_zero():
            return j
        prev, cur = cur, (x * cur + prev) % p
    raise IndexNotFoundError(f"index not found below bound {bound} for {p}")


def poly_eval_at_matrix(p: Gf2Poly, m: Gf2Matrix) -> Gf2Matrix:
    if not m.is_square:
        raise DimensionError(f"cannot evaluate a polynomial at non-square {m.shape} matrix")
    n = m.nrows
    result = Gf2Matrix.zeros(n)
    eye = Gf2Matrix.identity(n)
    for c in reversed(p.coeffs):
        result = result @ m
        if c:
            result = result + eye
    return result


def _matrix_powers(b: Gf2Matrix, count: int) -> list[Gf2Matrix]:
    out = [Gf2Matrix.identity(b.nrows)]
    for _ in range(count - 1):
        out.append(out[-1] @ b)
    return out


def _flatten(m: Gf2Matrix) -> int:
    v = 0
    for i, r in enumerate(m.rows):
        v |= r << (i * m.ncols)
    return v


def _same_square(*mats: Gf2Matrix) -> None:
    n = mats[0].nrows
    for m in mats:
        if not m.is_square or m.nrows != n:
            raise DimensionError(
                "expected square matrices of one size, got " + ", ".join(str(x.shape) for x in mats)
            )


def in_polynomial_span(r: Gf2Matrix, b: Gf2Matrix) -> bool:
    """True iff ``r`` = q(b) for some polynomial q of degree < n."""
    _same_square(r, b)
    n = b.nrows
    vecs = [_flatten(p) for p in _matrix_powers(b, n)]
    ncols = n * n
    base = Gf2Matrix(len(vecs), ncols, tuple(vecs))
    return base.rank() == Gf2Matrix(len(vecs) + 1, ncols, tuple(vecs) + (_flatten(r),)).rank()


def semigroup_a_condition(a: Gf2Matrix, b: Gf2Matrix, r: Gf2Matrix) -> bool:
    """True iff no q (deg < n) and diagonal D give ``a = q(b) r + D``.

    Decided by exhausting all 2**n polynomials; only off-diagonal entries are
    compared since D absorbs the diagonal.
    """
    _same_square(a, b, r)
    n = b.nrows
    powers = [p @ r for p in _matrix_powers(b, n)]
    target = a.off_diagonal()
    for mask in range(1 << n):
        acc = Gf2Matrix.zeros(n)
        for k in range(n):
            if (mask >> k) & 1:
                acc = acc + powers[k]
        if acc.off_diagonal() == target:
            return False
    return True


def monic_polys(degree: int) -> Iterator[Gf2Poly]:
    """All monic polynomials of the given degree, in ascending bit order."""
    top = 1 << degree
    for low in range(top):
        yield Gf2Poly(top | low)
