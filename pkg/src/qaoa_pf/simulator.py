"""Exact statevector simulation of the depth-p QAOA ansatz for Max-Cut.

The cost unitary is applied as a diagonal phase ``exp(-i*gamma*C(z))`` where
``C(z)`` is the cut value of basis state ``z``. Cut values are exactly the
eigenvalues of ``H_C = 1/2 sum (I - Z_j Z_k)``, so amplitudes coincide with
a literal ``expm(-i*gamma*H_C)``, identity term included.

The mixer ``exp(-i*beta*sum_j X_j)`` factorizes into one ``exp(-i*beta*X)``
per qubit, each applied by pairing indices ``i`` and ``i + 2**j``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import CapacityError, DegenerateInstanceError, ParameterError
from .graphs import MAX_ENUMERATION_QUBITS, Graph, cut_values_of_indices

MAX_QUBITS = MAX_ENUMERATION_QUBITS
GAMMA_PERIOD = 2.0 * math.pi
BETA_PERIOD = math.pi


def _wrap(x: float, period: float) -> float:
    r = math.fmod(x, period)
    if r < 0.0:
        r += period
    # fmod of a tiny negative number can round up to exactly one period
    return 0.0 if r >= period else r


@dataclass(frozen=True)
class ParameterVector:
    """QAOA angles ``(gamma_1..gamma_p, beta_1..beta_p)``.

    The flat array form used by optimizers keeps that order: all gammas
    first, then all betas.
    """

    gammas: tuple[float, ...] = ()
    betas: tuple[float, ...] = ()

    def __post_init__(self):
        g = tuple(float(v) for v in self.gammas)
        b = tuple(float(v) for v in self.betas)
        if len(g) != len(b):
            raise ParameterError(f"got {len(g)} gammas but {len(b)} betas")
        object.__setattr__(self, "gammas", g)
        object.__setattr__(self, "betas", b)

    @property
    def depth(self) -> int:
        return len(self.gammas)

    @classmethod
    def from_array(cls, x) -> "ParameterVector":
        x = np.asarray(x, dtype=float).ravel()
        if x.size % 2:
            raise ParameterError(f"flat parameter array must have even length, got {x.size}")
        p = x.size // 2
        return cls(tuple(x[:p]), tuple(x[p:]))

    @classmethod
    def zeros(cls, p: int) -> "ParameterVector":
        return cls((0.0,) * p, (0.0,) * p)

    def to_array(self) -> np.ndarray:
        return np.array(self.gammas + self.betas, dtype=float)

    def extend(self, gamma: float, beta: float) -> "ParameterVector":
        """Append one layer ``(gamma, beta)`` after the existing ones."""
        return ParameterVector(self.gammas + (float(gamma),), self.betas + (float(beta),))

    def canonical(self) -> "ParameterVector":
        """Reduce to gamma in [0, 2pi) and beta in [0, pi)."""
        return ParameterVector(
            tuple(_wrap(g, GAMMA_PERIOD) for g in self.gammas),
            tuple(_wrap(b, BETA_PERIOD) for b in self.betas),
        )


def _as_params(params) -> ParameterVector:
    if isinstance(params, ParameterVector):
        return params
    return ParameterVector.from_array(params)


def _check_qubits(n: int) -> None:
    if not 1 <= n <= MAX_QUBITS:
        raise CapacityError(f"qubit count must be in [1, {MAX_QUBITS}], got {n}")


def _n_qubits(state: np.ndarray) -> int:
    n = int(state.shape[0]).bit_length() - 1
    if state.ndim != 1 or (1 << n) != state.shape[0]:
        raise ParameterError(f"state length {state.shape[0]} is not a power of two")
    return n


def prepare_plus_state(n: int) -> np.ndarray:
    """The uniform superposition ``|+>^n`` as a fresh complex128 array."""
    _check_qubits(n)
    return np.full(1 << n, 2.0 ** (-n / 2), dtype=np.complex128)


@lru_cache(maxsize=64)
def cut_spectrum(graph: Graph) -> np.ndarray:
    """Diagonal of the cost Hamiltonian: entry ``i`` is the cut of basis state ``i``.

    Cached per graph and returned read-only so it can be shared freely.
    """
    _check_qubits(graph.n)
    values = cut_values_of_indices(graph, np.arange(1 << graph.n, dtype=np.int64))
    values.setflags(write=False)
    return values


def _check_dims(state: np.ndarray, spectrum: np.ndarray) -> None:
    if state.shape != spectrum.shape:
        raise ParameterError(f"state has {state.shape[0]} amplitudes, spectrum {spectrum.shape[0]}")


def apply_cost_layer(state: np.ndarray, spectrum: np.ndarray, gamma: float) -> np.ndarray:
    """Multiply amplitude ``i`` by ``exp(-i*gamma*spectrum[i])`` in place."""
    _check_dims(state, spectrum)
    _kernels.cost_layer(state, np.asarray(spectrum, dtype=np.int64), float(gamma))
    return state


def apply_mixer_layer(state: np.ndarray, beta: float) -> np.ndarray:
    """Apply ``exp(-i*beta*X)`` to every qubit in place."""
    _kernels.mixer_layer(state, float(beta), _n_qubits(state))
    return state


def expectation(state: np.ndarray, spectrum: np.ndarray) -> float:
    """Exact ``sum_i |a_i|^2 * spectrum[i]``."""
    _check_dims(state, spectrum)
    return float(_kernels.expectation(state, np.asarray(spectrum, dtype=np.int64)))


def evolve(graph: Graph, params) -> np.ndarray:
    """Return the ansatz state: cost then mixer for each layer, from ``|+>^n``."""
    params = _as_params(params)
    spectrum = cut_spectrum(graph)
    state = prepare_plus_state(graph.n)
    _kernels.evolve_layers(
        state, spectrum, np.array(params.gammas), np.array(params.betas), graph.n
    )
    return state


def fp(graph: Graph, params) -> float:
    """Expected cut of the depth-p ansatz state."""
    params = _as_params(params)
    spectrum = cut_spectrum(graph)
    return float(
        _kernels.qaoa_value(spectrum, np.array(params.gammas), np.array(params.betas), graph.n)
    )


class MaxCutQAOA:
    """Cached simulator for one instance, the objective handed to optimizers.

    >>> from qaoa_pf.graphs import complete_graph
    >>> sim = MaxCutQAOA(complete_graph(2))
    >>> round(sim.expectation([math.pi / 2, math.pi / 8]), 12)
    1.0
    """

    def __init__(self, graph: Graph):
        _check_qubits(graph.n)
        self.graph = graph
        self.spectrum = cut_spectrum(graph)
        self.n_qubits = graph.n

    @property
    def c_max(self) -> int:
        if self.graph.num_edges == 0:
            raise DegenerateInstanceError("graph has no edges; approximation ratio undefined")
        return int(self.spectrum.max())

    def evolve(self, params) -> np.ndarray:
        params = _as_params(params)
        state = prepare_plus_state(self.n_qubits)
        _kernels.evolve_layers(
            state, self.spectrum, np.array(params.gammas), np.array(params.betas), self.n_qubits
        )
        return state

    def expectation(self, params) -> float:
        """F_p at ``params`` (a ParameterVector or flat gammas-then-betas array)."""
        if isinstance(params, ParameterVector):
            g, b = np.array(params.gammas), np.array(params.betas)
        else:
            x = np.asarray(params, dtype=np.float64)
            if x.ndim != 1 or x.size % 2:
                raise ParameterError(f"flat parameter array must have even length, got {x.shape}")
            p = x.size // 2
            g, b = np.ascontiguousarray(x[:p]), np.ascontiguousarray(x[p:])
        return float(_kernels.qaoa_value(self.spectrum, g, b, self.n_qubits))

    __call__ = expectation
