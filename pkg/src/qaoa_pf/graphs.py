"""Max-Cut instances: graph container, random ensembles, cut values and the
exhaustive Max-Cut solver.

Bit convention used everywhere in the package: position ``j`` of an
assignment string is vertex ``j``, and in a basis-state index ``i`` the bit
of vertex ``j`` is ``(i >> j) & 1`` (vertex 0 is the least significant bit).
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import CapacityError, DegenerateInstanceError, GenerationError, ParameterError

MAX_ENUMERATION_QUBITS = 24
REGULAR_RETRY_BUDGET = 10_000

# rows of basis indices processed at once by the vectorized enumerator
_CHUNK = 1 << 20

Assignment = Union[str, Sequence[int]]


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Edges are normalised to ``(j, k)`` with ``j < k`` and stored sorted, so
    two graphs with the same edge set compare (and hash) equal.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ParameterError(f"vertex count must be a positive integer, got {self.n!r}")
        norm = []
        for e in self.edges:
            j, k = (int(v) for v in e)
            if j == k:
                raise ParameterError(f"self-loop on vertex {j}")
            if not (0 <= j < self.n and 0 <= k < self.n):
                raise ParameterError(f"edge {(j, k)} out of range for n={self.n}")
            norm.append((min(j, k), max(j, k)))
        norm.sort()
        if len(set(norm)) != len(norm):
            raise ParameterError("duplicate edge")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=int)
        for j, k in self.edges:
            deg[j] += 1
            deg[k] += 1
        return deg

    def edge_array(self) -> np.ndarray:
        """Edges as an ``(m, 2)`` int64 array."""
        return np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)

    def to_text(self) -> str:
        lines = [f"{self.n} {self.num_edges}"]
        lines += [f"{j} {k}" for j, k in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not rows or len(rows[0]) != 2:
            raise ParameterError("graph text must start with a 'n m' header line")
        n, m = int(rows[0][0]), int(rows[0][1])
        body = rows[1:]
        if len(body) != m:
            raise ParameterError(f"header announces {m} edges, found {len(body)}")
        edges = []
        for row in body:
            if len(row) != 2:
                raise ParameterError(f"malformed edge line: {' '.join(row)!r}")
            edges.append((int(row[0]), int(row[1])))
        return cls(n, tuple(edges))


def read_graph(path: str | os.PathLike) -> Graph:
    with open(path) as fh:
        return Graph.from_text(fh.read())


def write_graph(graph: Graph, path: str | os.PathLike) -> None:
    with open(path, "w") as fh:
        fh.write(graph.to_text())


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((j, (j + 1) % n) for j in range(n)))


def generate_regular(n: int, d: int, seed=None) -> Graph:
    """Uniform-ish random ``d``-regular graph via the pairing model.

    Stubs are shuffled and paired consecutively; any self-loop or repeated
    pair rejects the whole pairing and the draw restarts, at most
    ``REGULAR_RETRY_BUDGET`` times.
    """
    if n < 2:
        raise ParameterError("need at least 2 vertices")
    if d < 0 or d >= n:
        raise ParameterError(f"degree must satisfy 0 <= d < n, got d={d}, n={n}")
    if (n * d) % 2:
        raise ParameterError(f"n*d must be even, got n={n}, d={d}")
    rng = np.random.default_rng(seed)
    if d == 0:
        return Graph(n)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(REGULAR_RETRY_BUDGET):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        lo = pairs.min(axis=1)
        hi = pairs.max(axis=1)
        if np.any(lo == hi):
            continue
        keys = lo * n + hi
        if np.unique(keys).size != keys.size:
            continue
        return Graph(n, tuple(zip(lo.tolist(), hi.tolist())))
    raise GenerationError(
        f"no simple {d}-regular pairing on {n} vertices after {REGULAR_RETRY_BUDGET} restarts"
    )


def generate_erdos_renyi(n: int, prob: float, seed=None) -> Graph:
    """G(n, prob): each pair ``j < k`` is an edge independently with ``prob``."""
    if n < 2:
        raise ParameterError("need at least 2 vertices")
    if not 0.0 <= prob <= 1.0:
        raise ParameterError(f"edge probability must lie in [0, 1], got {prob}")
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(pairs)) < prob
    return Graph(n, tuple(p for p, k in zip(pairs, keep) if k))


def _as_bits(assignment: Assignment, n: int) -> list[int]:
    if isinstance(assignment, str):
        if any(ch not in "01" for ch in assignment):
            raise ParameterError(f"assignment must be a 0/1 string, got {assignment!r}")
        bits = [int(ch) for ch in assignment]
    else:
        bits = [int(b) for b in assignment]
        if any(b not in (0, 1) for b in bits):
            raise ParameterError("assignment entries must be 0 or 1")
    if len(bits) != n:
        raise ParameterError(f"assignment has length {len(bits)}, graph has {n} vertices")
    return bits


def cut_value(graph: Graph, assignment: Assignment) -> int:
    """Number of edges whose endpoints land on different sides."""
    bits = _as_bits(assignment, graph.n)
    return sum(1 for j, k in graph.edges if bits[j] != bits[k])


def cut_values_of_indices(graph: Graph, indices: np.ndarray) -> np.ndarray:
    """Cut value of every basis index in ``indices`` (vectorized over edges)."""
    idx = np.asarray(indices, dtype=np.int64)
    out = np.zeros(idx.shape, dtype=np.int64)
    for j, k in graph.edges:
        out += ((idx >> j) ^ (idx >> k)) & 1
    return out


def bits_of_index(index: int, n: int) -> str:
    return "".join(str((index >> j) & 1) for j in range(n))


@dataclass(frozen=True)
class MaxCutSolution:
    c_max: int
    witness: str


def max_cut_bruteforce(graph: Graph) -> MaxCutSolution:
    """Exact Max-Cut by enumerating assignments with vertex 0 pinned to side 0.

    Complementing an assignment leaves its cut unchanged, so the pinned half
    of the cube already contains a maximizer.
    """
    n = graph.n
    if n > MAX_ENUMERATION_QUBITS:
        raise CapacityError(f"n={n} exceeds the enumeration guard of {MAX_ENUMERATION_QUBITS}")
    if graph.num_edges == 0:
        raise DegenerateInstanceError("graph has no edges; approximation ratio undefined")
    half = 1 << (n - 1)
    best, best_idx = -1, 0
    for start in range(0, half, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, half), dtype=np.int64) << 1
        vals = cut_values_of_indices(graph, idx)
        pos = int(np.argmax(vals))
        if vals[pos] > best:
            best, best_idx = int(vals[pos]), int(idx[pos])
    return MaxCutSolution(best, bits_of_index(best_idx, n))


def iter_simple_graphs(n: int) -> Iterable[Graph]:
    """Every labelled simple graph on ``n`` vertices (2**(n(n-1)/2) of them)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, tuple(p for b, p in enumerate(pairs) if (mask >> b) & 1))
