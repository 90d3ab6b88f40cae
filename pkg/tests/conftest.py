import random

import pytest
from hypothesis import strategies as st

from cyclic_mubs.core import symplectic_form
from cyclic_mubs.fixtures import load_fixture
from cyclic_mubs.gf2 import Gf2Matrix

VALID_FIXTURES = ("field3", "group3", "semigroup3_symmetric", "offset3")


def transvection(v: tuple[int, ...]) -> Gf2Matrix:
    """T_v(a) = a + <a, v> v, built from J directly (no gate code)."""
    m = len(v)
    J = symplectic_form(m // 2)
    jv = J @ v
    rows = [[int(i == j) ^ (v[i] & jv[j]) for j in range(m)] for i in range(m)]
    return Gf2Matrix.from_list(rows)


def random_symplectic(n: int, rng: random.Random, steps: int = 40) -> Gf2Matrix:
    """Product of random transvections; these generate Sp(2n, 2)."""
    m = Gf2Matrix.identity(2 * n)
    for _ in range(steps):
        v = tuple(rng.randint(0, 1) for _ in range(2 * n))
        if any(v):
            m = transvection(v) @ m
    return m


def random_matrix(rng: random.Random, nrows: int, ncols: int) -> Gf2Matrix:
    return Gf2Matrix.from_list([[rng.randint(0, 1) for _ in range(ncols)] for _ in range(nrows)])


@st.composite
def gf2_matrices(draw, n=None, min_n=1, max_n=5):
    size = draw(st.integers(min_n, max_n)) if n is None else n
    bits = draw(st.lists(st.integers(0, 1), min_size=size * size, max_size=size * size))
    return Gf2Matrix.from_list([bits[i * size:(i + 1) * size] for i in range(size)])


@st.composite
def symplectic_matrices(draw, min_n=1, max_n=4):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_symplectic(n, random.Random(seed))


@pytest.fixture(scope="session")
def fixtures():
    return {name: load_fixture(name) for name in VALID_FIXTURES + ("semigroup3",)}


@pytest.fixture(scope="session")
def valid_sets(fixtures):
    from cyclic_mubs.core import build_classes

    return {name: build_classes(fixtures[name].generator()) for name in VALID_FIXTURES}


# -- acceptance summary ---------------------------------------------------

ACCEPTANCE: dict[int, dict[str, tuple[bool, str]]] = {}
ACCEPTANCE_TITLES: dict[int, str] = {}


def record(criterion: int, case: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE.setdefault(criterion, {})[case] = (bool(ok), detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_TITLES:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_TITLES):
        cases = ACCEPTANCE.get(k, {})
        failed = [c for c, (ok, _) in cases.items() if not ok]
        status = "PASS" if cases and not failed else "FAIL"
        tail = f" (failed: {', '.join(failed)})" if failed else ("" if cases else " (not run)")
        tr.write_line(f"[{status}] {k:>2}. {ACCEPTANCE_TITLES[k]}{tail}")
        for c, (ok, detail) in cases.items():
            if detail:
                tr.write_line(f"        {c}: {detail}")
