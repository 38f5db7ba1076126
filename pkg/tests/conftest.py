import time
from pathlib import Path

import pytest
from hypothesis import strategies as st

from satrank.exact_arith import IntMatrix
from satrank.seifert_core import Pattern, SeifertForm

DATA = Path(__file__).resolve().parent.parent / "data"
BATTERY_LIMIT = 60.0

_session = {}


def pytest_sessionstart(session):
    _session["start"] = time.perf_counter()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if "start" not in _session:
        return
    elapsed = time.perf_counter() - _session["start"]
    ok = elapsed < BATTERY_LIMIT
    terminalreporter.write_line(
        f"{'PASS' if ok else 'FAIL'}  full test battery runtime {elapsed:.1f} s (limit {BATTERY_LIMIT:.0f} s)"
    )


def pytest_sessionfinish(session, exitstatus):
    if "start" in _session and time.perf_counter() - _session["start"] >= BATTERY_LIMIT and exitstatus == 0:
        session.exitstatus = 1


@pytest.fixture
def data_dir():
    return DATA


def symplectic(g: int) -> IntMatrix:
    """Block sum of [[0, 1], [0, 0]]; E - E^T is the standard unimodular form."""
    n = 2 * g
    return IntMatrix([[1 if j == i + 1 and i % 2 == 0 else 0 for j in range(n)] for i in range(n)], cols=n)


@st.composite
def seifert_forms(draw, max_genus=2, bound=3):
    """V = W + E with W symmetric, so V - V^T = E - E^T has determinant 1."""
    g = draw(st.integers(1, max_genus))
    n = 2 * g
    W = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            W[i][j] = W[j][i] = draw(st.integers(-bound, bound))
    V = IntMatrix(W, cols=n) + symplectic(g)
    return SeifertForm(V, "random")


@st.composite
def unimodular(draw, n, steps=6):
    """Product of elementary integer row operations and sign flips."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(0, steps))):
        i = draw(st.integers(0, n - 1))
        j = draw(st.integers(0, n - 1))
        if i == j:
            M[i] = [-x for x in M[i]]
        else:
            k = draw(st.integers(-2, 2))
            M[i] = [a + k * b for a, b in zip(M[i], M[j])]
    return IntMatrix(M, cols=n)


@st.composite
def zero_winding_patterns(draw, max_genus=2):
    s = draw(seifert_forms(max_genus=max_genus))
    v = tuple(draw(st.lists(st.integers(-3, 3), min_size=s.dim, max_size=s.dim)))
    return Pattern(s, 0, v, "random")
