"""Search for valid generator triples and seed offsets."""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .core import (
    CyclicGenerator,
    GeneratorTriple,
    RankDeficientClassError,
    build_classes,
    classify_set_type,
    standard_seed,
    UnclassifiedTripleError,
    validate_mub_partition,
    validate_triple,
)
from .gf2 import (
    Gf2Matrix,
    Gf2Poly,
    IndexNotFoundError,
    char_poly,
    fibonacci_index,
    in_polynomial_span,
    monic_polys,
    nullspace,
    semigroup_a_condition,
)

KINDS = ("field", "group", "semigroup")
EXHAUSTIVE_MAX_N = 4
HEURISTIC_MAX_DRAWS = 200_000


@dataclass(frozen=True)
class SearchQuery:
    n: int
    kind: str
    limit: Optional[int] = None
    time_budget: Optional[float] = None
    mode: str = "auto"
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("search needs n >= 2")
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.limit is not None and self.limit < 1:
            raise ValueError("limit must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time budget must be positive")
        if self.mode not in ("auto", "exhaustive", "heuristic"):
            raise ValueError(f"unknown mode {self.mode!r}")


@lru_cache(maxsize=None)
def full_index_polys(n: int) -> tuple[Gf2Poly, ...]:
    """Monic degree-n polynomials whose Fibonacci index is 2**n + 1."""
    target = 2 ** n + 1
    out = []
    for p in monic_polys(n):
        try:
            if fibonacci_index(p) == target:
                out.append(p)
        except IndexNotFoundError:
            pass
    return tuple(out)


def _lex_key(m: Gf2Matrix) -> tuple[int, ...]:
    return tuple(b for i in range(m.nrows) for b in m.row(i))


def _all_matrices(n: int) -> Iterator[Gf2Matrix]:
    """All n x n matrices in row-major lexicographic order."""
    k = n * n
    for v in range(1 << k):
        rows = [0] * n
        for idx in range(k):
            if (v >> (k - 1 - idx)) & 1:
                i, j = divmod(idx, n)
                rows[i] |= 1 << j
        yield Gf2Matrix(n, n, tuple(rows))


def _symmetric_from_bits(n: int, value: int) -> Gf2Matrix:
    positions = [(i, j) for i in range(n) for j in range(i, n)]
    k = len(positions)
    rows = [0] * n
    for idx, (i, j) in enumerate(positions):
        if (value >> (k - 1 - idx)) & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Gf2Matrix(n, n, tuple(rows))


def _symmetric_matrices(n: int) -> Iterator[Gf2Matrix]:
    """All symmetric n x n matrices in row-major lexicographic order."""
    # mirrored entries repeat earlier ones, so upper-triangle bit order is row-major order
    k = n * (n + 1) // 2
    for v in range(1 << k):
        yield _symmetric_from_bits(n, v)


def _has_full_index(b: Gf2Matrix) -> bool:
    return char_poly(b) in set(full_index_polys(b.nrows))


def symmetrizer_space(b: Gf2Matrix) -> list[Gf2Matrix]:
    """All R with R and B R symmetric, sorted lexicographically."""
    n = b.nrows
    eqs = []

    def var(i, j):
        return i * n + j

    for i in range(n):
        for j in range(i + 1, n):
            eqs.append((1 << var(i, j)) | (1 << var(j, i)))
            # (BR)_ij - (BR)_ji = sum_k B_ik R_kj - B_jk R_ki
            e = 0
            for k in range(n):
                if b[i, k]:
                    e ^= 1 << var(k, j)
                if b[j, k]:
                    e ^= 1 << var(k, i)
            eqs.append(e)
    system = Gf2Matrix(len(eqs), n * n, tuple(eqs)) if eqs else Gf2Matrix.zeros(1, n * n)
    basis = nullspace(system)
    out = []
    for mask in range(1 << len(basis)):
        v = 0
        for k, vec in enumerate(basis):
            if (mask >> k) & 1:
                v ^= vec
        rows = tuple((v >> (i * n)) & ((1 << n) - 1) for i in range(n))
        out.append(Gf2Matrix(n, n, rows))
    return sorted(out, key=_lex_key)


def _triples_for_b(b: Gf2Matrix, kind: str) -> Iterator[GeneratorTriple]:
    n = b.nrows
    zero = Gf2Matrix.zeros(n)
    if kind == "field":
        if b.is_symmetric():
            yield GeneratorTriple(b, Gf2Matrix.identity(n), zero)
        return
    for r in symmetrizer_space(b):
        if not r.is_invertible():
            continue
        if kind == "group":
            if not in_polynomial_span(r, b):
                yield GeneratorTriple(b, r, zero)
            continue
        for a in _symmetric_matrices(n):
            if not a.is_zero() and semigroup_a_condition(a, b, r):
                yield GeneratorTriple(b, r, a)


def _accept(t: GeneratorTriple, kind: str) -> bool:
    if not validate_triple(t).ok:
        return False
    try:
        return classify_set_type(t) == kind
    except UnclassifiedTripleError:
        return False


def _exhaustive(q: SearchQuery) -> Iterator[GeneratorTriple]:
    n = q.n
    candidates = _symmetric_matrices(n) if q.kind == "field" else _all_matrices(n)
    for b in candidates:
        if not _has_full_index(b):
            continue
        for t in _triples_for_b(b, q.kind):
            if _accept(t, q.kind):
                yield t


def companion(p: Gf2Poly) -> Gf2Matrix:
    """Companion matrix with the coefficients of ``p`` in the last column."""
    n = p.degree
    rows = []
    coeffs = p.coeffs
    for i in range(n):
        r = 0
        if i > 0:
            r |= 1 << (i - 1)
        if coeffs[i]:
            r |= 1 << (n - 1)
        rows.append(r)
    return Gf2Matrix(n, n, tuple(rows))


def _random_invertible(n: int, rng: random.Random) -> Gf2Matrix:
    while True:
        m = Gf2Matrix(n, n, tuple(rng.getrandbits(n) for _ in range(n)))
        if m.is_invertible():
            return m


def _heuristic(q: SearchQuery, deadline: Optional[float]) -> Iterator[GeneratorTriple]:
    """Random candidates: symmetric B for field sets, conjugated companions otherwise."""
    n = q.n
    rng = random.Random(q.seed)
    polys = full_index_polys(n)
    if not polys:
        return
    k = n * (n + 1) // 2
    for _ in range(HEURISTIC_MAX_DRAWS):
        if deadline is not None and time.monotonic() > deadline:
            return
        if q.kind == "field":
            b = _symmetric_from_bits(n, rng.getrandbits(k))
            if not _has_full_index(b):
                continue
            yield GeneratorTriple(b, Gf2Matrix.identity(n), Gf2Matrix.zeros(n))
            continue
        p = rng.choice(polys)
        P = _random_invertible(n, rng)
        b = P.inverse() @ companion(p) @ P
        rs = [r for r in symmetrizer_space(b) if r.is_invertible()]
        rng.shuffle(rs)
        for r in rs:
            if q.kind == "group":
                t = GeneratorTriple(b, r, Gf2Matrix.zeros(n))
            else:
                t = GeneratorTriple(b, r, _symmetric_from_bits(n, rng.getrandbits(k)))
            if _accept(t, q.kind):
                yield t
                break


def find_triples(q: SearchQuery) -> list[GeneratorTriple]:
    """Valid triples of the requested kind, sorted by (B, R, A) row-major bits.

    Exhaustive mode walks candidates in that order and stops at ``limit``;
    heuristic mode (default for n > 4) samples with ``seed`` and sorts what
    it finds. An empty list means nothing was found within the limits.
    """
    mode = q.mode
    if mode == "auto":
        mode = "exhaustive" if q.n <= EXHAUSTIVE_MAX_N else "heuristic"
    deadline = None if q.time_budget is None else time.monotonic() + q.time_budget
    limit = q.limit
    if mode == "heuristic" and limit is None:
        limit = 1
    found: list[GeneratorTriple] = []
    seen = set()
    source = _exhaustive(q) if mode == "exhaustive" else _heuristic(q, deadline)
    for t in source:
        key = (_lex_key(t.B), _lex_key(t.R), _lex_key(t.A))
        if key in seen:
            continue
        seen.add(key)
        found.append(t)
        if limit is not None and len(found) >= limit:
            break
        if deadline is not None and time.monotonic() > deadline:
            break
    return sorted(found, key=lambda t: (_lex_key(t.B), _lex_key(t.R), _lex_key(t.A)))


def is_permutation_equivalent(b1: Gf2Matrix, b2: Gf2Matrix) -> bool:
    """True iff P b1 P^T = b2 for some permutation matrix P."""
    if b1.shape != b2.shape:
        return False
    return any(b1.permute(p) == b2 for p in itertools.permutations(range(b1.nrows)))


def seed_is_valid(g: CyclicGenerator, offset: Gf2Matrix) -> bool:
    """Whether the seed (I; offset) turns ``g`` into a complete partition."""
    if not offset.is_symmetric():
        return False
    trial = CyclicGenerator(g.C, standard_seed(g.n, offset), g.triple)
    try:
        s = build_classes(trial, set_type="explicit")
    except RankDeficientClassError:
        return False
    return validate_mub_partition(s).ok


def find_offset_seeds(g: CyclicGenerator, limit: Optional[int] = None) -> list[Gf2Matrix]:
    """Symmetric seed X-parts giving complete sets, in lexicographic order."""
    out = []
    for offset in _symmetric_matrices(g.n):
        if seed_is_valid(g, offset):
            out.append(offset)
            if limit is not None and len(out) >= limit:
                break
    return out
