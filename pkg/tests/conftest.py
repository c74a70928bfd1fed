import numpy as np
import pytest
from scipy.linalg import expm

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)


def pauli_on(op, j, n):
    """``op`` on qubit j; qubit j is bit j of the basis index (qubit 0 = LSB)."""
    out = np.array([[1.0 + 0j]])
    for k in reversed(range(n)):
        out = np.kron(out, op if k == j else I2)
    return out


def dense_hamiltonians(graph):
    n = graph.n
    dim = 1 << n
    hc = np.zeros((dim, dim), dtype=complex)
    for j, k in graph.edges:
        hc += 0.5 * (np.eye(dim) - pauli_on(Z, j, n) @ pauli_on(Z, k, n))
    hb = sum(pauli_on(X, j, n) for j in range(n))
    return hc, hb


def dense_state(graph, gammas, betas):
    """Ansatz state from explicit matrix exponentials of the full Hamiltonians."""
    hc, hb = dense_hamiltonians(graph)
    dim = 1 << graph.n
    psi = np.full(dim, dim ** -0.5, dtype=complex)
    for g, b in zip(gammas, betas):
        psi = expm(-1j * g * hc) @ psi
        psi = expm(-1j * b * hb) @ psi
    return psi


@pytest.fixture
def dense_oracle():
    return dense_state


_ACCEPTANCE = []


@pytest.fixture
def acceptance_log():
    def record(criterion, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
