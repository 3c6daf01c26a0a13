import numpy as np
import pytest

from ucframes.frames import FrameFamily


def cplx(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hermitian(rng, n):
    a = cplx(rng, n, n)
    return a + a.conj().T


def random_gl_plus(rng, n, lo=0.2, hi=3.0):
    q, _ = np.linalg.qr(cplx(rng, n, n))
    return (q * rng.uniform(lo, hi, n)) @ q.conj().T


def brute_inner(x, y):
    """<x, y> summed by hand, linear in x."""
    return sum(complex(a) * complex(b).conjugate() for a, b in zip(x, y))


def brute_controlled_gram(sys):
    """G[k][j] = <C f_j, U f_k> entry by entry."""
    u, c = np.asarray(sys.U.matrix), np.asarray(sys.C.matrix)
    vecs = sys.family.vectors
    n = len(vecs)
    g = np.zeros((n, n), dtype=complex)
    for k in range(n):
        uf = u @ vecs[k]
        for j in range(n):
            g[k, j] = brute_inner(c @ vecs[j], uf)
    return g


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


@pytest.fixture
def three_vectors():
    """{e1, e2, e1 + e2} in C^2."""
    return FrameFamily([[1, 0], [0, 1], [1, 1]])


_ACCEPTANCE = []


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line for an acceptance criterion."""

    def record(number, title, ok, detail=""):
        line = f"[criterion {number}] {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
        _ACCEPTANCE.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
