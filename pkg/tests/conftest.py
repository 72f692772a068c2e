"""Independent oracles shared by the test modules.

Nothing here imports the package's kernels: the dense Haar matrix is built
by multiplying explicit level matrices written out from the row pattern,
and search dynamics are reproduced with 2x2 matrices in the plane of the
target and the remainder of the initial state.
"""
import numpy as np
import pytest


def dense_level(n, level):
    size = 2**n
    m = 2 ** (n - level + 1)
    out = np.eye(size)
    block = np.zeros((m, m))
    for i in range(m // 2):
        block[i, 2 * i] = block[i, 2 * i + 1] = 1 / np.sqrt(2)
        block[m // 2 + i, 2 * i] = 1 / np.sqrt(2)
        block[m // 2 + i, 2 * i + 1] = -1 / np.sqrt(2)
    out[:m, :m] = block
    return out


def dense_haar(n):
    w = np.eye(2**n)
    for level in range(1, n + 1):
        w = dense_level(n, level) @ w
    return w


def plane_probabilities(n1, eps_w, iterations):
    """P_m from explicit 2x2 reflections in span{|w>, |r>}."""
    psi = np.array([eps_w / np.sqrt(n1), np.sqrt(1 - 1 / n1)])
    oracle = np.diag([-1.0, 1.0])
    reflect = np.eye(2) - 2 * np.outer(psi, psi)
    x = psi.copy()
    out = [x[0] ** 2]
    for _ in range(iterations):
        x = -reflect @ (oracle @ x)
        out.append(x[0] ** 2)
    return np.array(out)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_state(rng, n):
    x = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return x / np.linalg.norm(x)


ACCEPTANCE_LINES = []


def record_acceptance(criterion, passed, detail):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
