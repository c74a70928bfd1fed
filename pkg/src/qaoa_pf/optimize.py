"""Nelder-Mead simplex search with a hard evaluation budget.

Standard coefficients: reflection 1, expansion 2, contraction 1/2,
shrink 1/2. The initial simplex is ``x0`` plus one vertex displaced by
``initial_step`` along each coordinate. Iteration stops when both the
spread of objective values and the largest coordinate distance from the
best vertex drop below their absolute tolerances, or when the next
evaluation would exceed ``max_evals``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import OptimizerError, ParameterError

REFLECT = 1.0
EXPAND = 2.0
CONTRACT = 0.5
SHRINK = 0.5


@dataclass(frozen=True)
class OptimizerOptions:
    max_evals: int = 1000
    f_abs_tol: float = 1e-4
    x_abs_tol: float = 1e-4
    initial_step: float = 0.05

    def __post_init__(self):
        if int(self.max_evals) != self.max_evals or self.max_evals < 1:
            raise ParameterError(f"max_evals must be a positive integer, got {self.max_evals}")
        for name in ("f_abs_tol", "x_abs_tol", "initial_step"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ParameterError(f"{name} must be positive and finite, got {v}")


class Termination(str, enum.Enum):
    CONVERGED = "converged"
    EVAL_BUDGET_EXHAUSTED = "eval_budget_exhausted"


@dataclass(frozen=True)
class OptimizationResult:
    x_opt: np.ndarray
    f_opt: float
    n_evals: int
    termination: Termination
    # best simplex value after the initial simplex and after each iteration
    history: tuple[float, ...] = ()


class _BudgetExhausted(Exception):
    pass


class _Counted:
    def __init__(self, fun, max_evals):
        self.fun = fun
        self.max_evals = max_evals
        self.n = 0
        self.best_x = None
        self.best_f = math.inf

    def __call__(self, x):
        if self.n >= self.max_evals:
            raise _BudgetExhausted
        self.n += 1
        f = float(self.fun(x))
        if not math.isfinite(f):
            raise OptimizerError(f"objective returned {f} at x={x.tolist()} (evaluation {self.n})")
        if f < self.best_f:
            self.best_f, self.best_x = f, x.copy()
        return f


def minimize(
    objective: Callable[[np.ndarray], float],
    x0,
    options: OptimizerOptions | None = None,
) -> OptimizationResult:
    options = options or OptimizerOptions()
    x0 = np.array(x0, dtype=float).ravel()
    d = x0.size
    if d == 0:
        raise ParameterError("cannot optimize over zero parameters")
    fun = _Counted(objective, options.max_evals)
    history: list[float] = []

    sim = np.empty((d + 1, d))
    fsim = np.full(d + 1, math.inf)
    sim[0] = x0
    for i in range(d):
        sim[i + 1] = x0
        sim[i + 1, i] += options.initial_step

    termination = Termination.EVAL_BUDGET_EXHAUSTED
    try:
        for i in range(d + 1):
            fsim[i] = fun(sim[i])
        while True:
            order = np.argsort(fsim, kind="stable")
            sim, fsim = sim[order], fsim[order]
            history.append(float(fsim[0]))
            if (
                fsim[-1] - fsim[0] < options.f_abs_tol
                and np.max(np.abs(sim[1:] - sim[0])) < options.x_abs_tol
            ):
                termination = Termination.CONVERGED
                break

            centroid = sim[:-1].mean(axis=0)
            xr = centroid + REFLECT * (centroid - sim[-1])
            fr = fun(xr)
            if fr < fsim[0]:
                xe = centroid + EXPAND * (centroid - sim[-1])
                fe = fun(xe)
                if fe < fr:
                    sim[-1], fsim[-1] = xe, fe
                else:
                    sim[-1], fsim[-1] = xr, fr
                continue
            if fr < fsim[-2]:
                sim[-1], fsim[-1] = xr, fr
                continue
            if fr < fsim[-1]:
                xc = centroid + CONTRACT * (xr - centroid)
                fc = fun(xc)
                if fc <= fr:
                    sim[-1], fsim[-1] = xc, fc
                    continue
            else:
                xc = centroid + CONTRACT * (sim[-1] - centroid)
                fc = fun(xc)
                if fc < fsim[-1]:
                    sim[-1], fsim[-1] = xc, fc
                    continue
            for i in range(1, d + 1):
                sim[i] = sim[0] + SHRINK * (sim[i] - sim[0])
                fsim[i] = fun(sim[i])
    except _BudgetExhausted:
        pass

    return OptimizationResult(
        x_opt=fun.best_x,
        f_opt=fun.best_f,
        n_evals=fun.n,
        termination=termination,
        history=tuple(history),
    )


def maximize(
    objective: Callable[[np.ndarray], float],
    x0,
    options: OptimizerOptions | None = None,
) -> OptimizationResult:
    """Maximize by minimizing the negated objective; ``f_opt`` is sign-restored."""
    res = minimize(lambda x: -objective(x), x0, options)
    return OptimizationResult(
        x_opt=res.x_opt,
        f_opt=-res.f_opt,
        n_evals=res.n_evals,
        termination=res.termination,
        history=tuple(-h for h in res.history),
    )
