"""Initialization protocols compared in the experiments.

``random_init_sweep`` restarts every depth from uniformly random angles.
``parameters_fixing_sweep`` seeds depth ``q`` with the best depth ``q-1``
optimum plus one fresh random layer, keeps all ``2q`` angles free during
the search, and hands the best result on to depth ``q+1``.

Randomness is split by counter: trial ``k`` at depth ``q`` draws from
``derive_seed(master_seed, q, k)``, so results do not depend on the order
in which trials are executed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ParameterError
from .graphs import Graph
from .optimize import OptimizerOptions, Termination, maximize
from .simulator import GAMMA_PERIOD, BETA_PERIOD, MaxCutQAOA, ParameterVector


def derive_seed(master_seed: int, *keys: int) -> int:
    """Child seed for the counter tuple ``keys`` under ``master_seed``."""
    ss = np.random.SeedSequence(int(master_seed), spawn_key=tuple(int(k) for k in keys))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class TrialResult:
    depth: int
    initial_params: ParameterVector
    optimal_params: ParameterVector  # raw optimizer output, not reduced
    f_opt: float
    alpha: float
    n_evals: int
    termination: Termination
    seed: Optional[int]  # None for the deterministic zero-seeded trial


@dataclass(frozen=True)
class DepthRecord:
    depth: int
    trials: tuple[TrialResult, ...]
    best_trial: TrialResult
    all_alphas: tuple[float, ...]
    mean_alpha: float
    std_alpha: float

    @classmethod
    def from_trials(cls, depth: int, trials: Sequence[TrialResult]) -> "DepthRecord":
        alphas = tuple(t.alpha for t in trials)
        mean, std = alpha_stats(alphas)
        # max() keeps the first maximal element: lowest trial index wins ties
        best = max(trials, key=lambda t: t.f_opt)
        return cls(depth, tuple(trials), best, alphas, mean, std)


@dataclass(frozen=True)
class DriftTrack:
    index: int  # 1-based layer index i
    kind: str  # "gamma" or "beta"
    values: dict[int, float] = field(default_factory=dict)  # depth -> canonical value


def alpha_stats(alphas: Sequence[float]) -> tuple[float, float]:
    """Mean and population standard deviation."""
    a = np.asarray(alphas, dtype=float)
    return float(np.mean(a)), float(np.std(a))


def _simulator(graph: Graph, simulator: Optional[MaxCutQAOA]) -> MaxCutQAOA:
    if simulator is None:
        return MaxCutQAOA(graph)
    if simulator.graph != graph:
        raise ParameterError("simulator was built for a different graph")
    return simulator


def optimize_from(
    sim: MaxCutQAOA,
    init: ParameterVector,
    c_max: int,
    seed: Optional[int],
    options: Optional[OptimizerOptions] = None,
) -> TrialResult:
    """Run one local search from ``init`` and package it as a trial."""
    res = maximize(sim.expectation, init.to_array(), options)
    return TrialResult(
        depth=init.depth,
        initial_params=init,
        optimal_params=ParameterVector.from_array(res.x_opt),
        f_opt=res.f_opt,
        alpha=res.f_opt / c_max,
        n_evals=res.n_evals,
        termination=res.termination,
        seed=seed,
    )


def _rng_and_seed(rng):
    if isinstance(rng, np.random.Generator):
        return rng, None
    return np.random.default_rng(rng), (None if rng is None else int(rng))


def random_trial(
    graph: Graph,
    p: int,
    rng=None,
    *,
    c_max: Optional[int] = None,
    options: Optional[OptimizerOptions] = None,
    simulator: Optional[MaxCutQAOA] = None,
) -> TrialResult:
    """Optimize from gammas ~ U[0, 2pi) and betas ~ U[0, pi).

    ``rng`` is an integer seed (recorded on the result) or a Generator.
    """
    if p < 1:
        raise ParameterError(f"depth must be >= 1, got {p}")
    sim = _simulator(graph, simulator)
    c_max = sim.c_max if c_max is None else c_max
    gen, seed = _rng_and_seed(rng)
    gammas = gen.uniform(0.0, GAMMA_PERIOD, size=p)
    betas = gen.uniform(0.0, BETA_PERIOD, size=p)
    return optimize_from(sim, ParameterVector(tuple(gammas), tuple(betas)), c_max, seed, options)


def random_init_sweep(
    graph: Graph,
    p_max: int,
    trials_per_depth: int = 20,
    seed: int = 0,
    *,
    c_max: Optional[int] = None,
    options: Optional[OptimizerOptions] = None,
) -> list[DepthRecord]:
    if p_max < 1 or trials_per_depth < 1:
        raise ParameterError("p_max and trials_per_depth must be >= 1")
    sim = MaxCutQAOA(graph)
    c_max = sim.c_max if c_max is None else c_max
    records = []
    for q in range(1, p_max + 1):
        trials = [
            random_trial(graph, q, derive_seed(seed, q, k), c_max=c_max, options=options, simulator=sim)
            for k in range(trials_per_depth)
        ]
        records.append(DepthRecord.from_trials(q, trials))
    return records


def parameters_fixing_sweep(
    graph: Graph,
    p_max: int,
    trials_per_depth: int = 20,
    seed: int = 0,
    *,
    c_max: Optional[int] = None,
    options: Optional[OptimizerOptions] = None,
    augment_zero_trial: bool = True,
) -> list[DepthRecord]:
    """Layer-by-layer sweep that reuses the best optimum of the previous depth.

    With ``augment_zero_trial`` each depth ``q >= 2`` gets one extra trial
    (appended last) whose new layer starts at ``(0, 0)``. Zero angles are
    identity layers, so that trial starts exactly at the previous best value
    and the best value per depth cannot regress.
    """
    if p_max < 1 or trials_per_depth < 1:
        raise ParameterError("p_max and trials_per_depth must be >= 1")
    sim = MaxCutQAOA(graph)
    c_max = sim.c_max if c_max is None else c_max
    records: list[DepthRecord] = []
    prefix: Optional[ParameterVector] = None
    for q in range(1, p_max + 1):
        trials = []
        for k in range(trials_per_depth):
            child = derive_seed(seed, q, k)
            if q == 1:
                trials.append(random_trial(graph, 1, child, c_max=c_max, options=options, simulator=sim))
                continue
            gen = np.random.default_rng(child)
            gamma = gen.uniform(0.0, GAMMA_PERIOD)
            beta = gen.uniform(0.0, BETA_PERIOD)
            trials.append(optimize_from(sim, prefix.extend(gamma, beta), c_max, child, options))
        if augment_zero_trial and q >= 2:
            trials.append(optimize_from(sim, prefix.extend(0.0, 0.0), c_max, None, options))
        record = DepthRecord.from_trials(q, trials)
        records.append(record)
        prefix = record.best_trial.optimal_params
    return records


def drift_tracks(records: Sequence[DepthRecord]) -> list[DriftTrack]:
    """Per-position optimal angles (canonical) of each depth's best trial.

    Tracks are ordered gamma_1, beta_1, gamma_2, beta_2, ...
    """
    if not records:
        return []
    p_max = max(r.depth for r in records)
    tracks = []
    for i in range(1, p_max + 1):
        g = DriftTrack(i, "gamma")
        b = DriftTrack(i, "beta")
        for rec in records:
            if rec.depth < i:
                continue
            canon = rec.best_trial.optimal_params.canonical()
            g.values[rec.depth] = canon.gammas[i - 1]
            b.values[rec.depth] = canon.betas[i - 1]
        tracks += [g, b]
    return tracks


def circular_change(a: float, b: float, period: float) -> float:
    """Smallest distance between two angles on a circle of ``period``."""
    d = math.fmod(abs(a - b), period)
    return min(d, period - d)
