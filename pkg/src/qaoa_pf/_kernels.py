"""Jitted in-place statevector kernels.

All kernels take a contiguous complex128 amplitude array and an int64 cut
spectrum; they never allocate a new state.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def cost_layer(psi, spectrum, gamma):
    kmax = 0
    for i in range(spectrum.shape[0]):
        if spectrum[i] > kmax:
            kmax = spectrum[i]
    table = np.empty(kmax + 1, dtype=np.complex128)
    for k in range(kmax + 1):
        table[k] = np.exp(-1j * gamma * k)
    for i in range(psi.shape[0]):
        psi[i] *= table[spectrum[i]]


@njit(cache=True)
def mixer_layer(psi, beta, n_qubits):
    # exp(-i beta X) on each qubit: pairs (i, i + 2**j) with bit j of i clear
    c = np.cos(beta)
    s = np.sin(beta)
    dim = psi.shape[0]
    for j in range(n_qubits):
        stride = 1 << j
        for base in range(0, dim, 2 * stride):
            for i in range(base, base + stride):
                a0 = psi[i]
                a1 = psi[i + stride]
                psi[i] = complex(c * a0.real + s * a1.imag, c * a0.imag - s * a1.real)
                psi[i + stride] = complex(c * a1.real + s * a0.imag, c * a1.imag - s * a0.real)


@njit(cache=True)
def evolve_layers(psi, spectrum, gammas, betas, n_qubits):
    for q in range(gammas.shape[0]):
        cost_layer(psi, spectrum, gammas[q])
        mixer_layer(psi, betas[q], n_qubits)


@njit(cache=True)
def expectation(psi, spectrum):
    acc = 0.0
    for i in range(psi.shape[0]):
        acc += (psi[i].real * psi[i].real + psi[i].imag * psi[i].imag) * spectrum[i]
    return acc


@njit(cache=True)
def qaoa_value(spectrum, gammas, betas, n_qubits):
    dim = spectrum.shape[0]
    psi = np.full(dim, 1.0 / np.sqrt(dim) + 0j)
    evolve_layers(psi, spectrum, gammas, betas, n_qubits)
    return expectation(psi, spectrum)
