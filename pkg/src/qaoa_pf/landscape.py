"""Grids of F_p over the newest layer's angles with earlier layers held fixed."""
from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .errors import ParameterError
from .graphs import Graph
from .simulator import BETA_PERIOD, GAMMA_PERIOD, MaxCutQAOA, ParameterVector, _as_params


@dataclass(frozen=True)
class LandscapeGrid:
    graph_id: Optional[str]
    depth: int
    prefix: ParameterVector
    gammas: np.ndarray  # row coordinates
    betas: np.ndarray  # column coordinates
    values: np.ndarray  # values[a, b] = F_p at (gammas[a], betas[b])

    @property
    def resolution(self) -> int:
        return self.values.shape[0]

    def mean(self) -> float:
        return float(self.values.mean())

    def to_csv(self) -> str:
        """Header row of beta values, then one row per gamma (17 significant digits)."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["gamma\\beta"] + [f"{b:.17g}" for b in self.betas])
        for g, row in zip(self.gammas, self.values):
            w.writerow([f"{g:.17g}"] + [f"{v:.17g}" for v in row])
        return buf.getvalue()

    def write_csv(self, path: str | os.PathLike) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv())


def landscape_grid(
    graph: Graph,
    prefix_params=(),
    resolution: int = 32,
    sim: Optional[MaxCutQAOA] = None,
    graph_id: Optional[str] = None,
) -> LandscapeGrid:
    """Evaluate F_p on the lattice gamma_p = 2*pi*k/r, beta_p = pi*k/r.

    ``prefix_params`` holds the ``2(p-1)`` fixed angles, gammas first then
    betas (a ParameterVector is accepted too). The prefix state is evolved
    once and copied for every lattice point.
    """
    if resolution < 2:
        raise ParameterError(f"resolution must be >= 2, got {resolution}")
    if not isinstance(prefix_params, ParameterVector) and len(prefix_params) % 2:
        raise ParameterError("prefix must hold an even number of angles")
    prefix = _as_params(prefix_params)
    sim = sim or MaxCutQAOA(graph)
    if sim.graph != graph:
        raise ParameterError("simulator was built for a different graph")

    base = sim.evolve(prefix)
    gammas = GAMMA_PERIOD * np.arange(resolution) / resolution
    betas = BETA_PERIOD * np.arange(resolution) / resolution
    values = np.empty((resolution, resolution))
    for a, g in enumerate(gammas):
        after_cost = base.copy()
        _kernels.cost_layer(after_cost, sim.spectrum, g)
        for b, beta in enumerate(betas):
            state = after_cost.copy()
            _kernels.mixer_layer(state, beta, sim.n_qubits)
            values[a, b] = _kernels.expectation(state, sim.spectrum)
    return LandscapeGrid(graph_id, prefix.depth + 1, prefix, gammas, betas, values)


def read_landscape_csv(path: str | os.PathLike) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Parse a grid CSV back into ``(gammas, betas, values)``."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    betas = np.array([float(v) for v in rows[0][1:]])
    gammas = np.array([float(r[0]) for r in rows[1:]])
    values = np.array([[float(v) for v in r[1:]] for r in rows[1:]])
    return gammas, betas, values


def parse_prefix(text: str) -> ParameterVector:
    """``"g1,..,g_k,b1,..,b_k"`` (possibly empty) into a ParameterVector."""
    items = [t for t in (s.strip() for s in text.split(",")) if t]
    vals = [float(t) for t in items]
    if any(not math.isfinite(v) for v in vals):
        raise ParameterError("prefix angles must be finite")
    if len(vals) % 2:
        raise ParameterError(f"prefix must hold an even number of angles, got {len(vals)}")
    return ParameterVector.from_array(vals)
