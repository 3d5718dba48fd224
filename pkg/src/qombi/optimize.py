"""Classical outer loop for QAOA angles: bounded-budget Nelder-Mead and layer-wise deepening."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .exceptions import ValidationError
from .ising import IsingModel, cost_table
from .qaoa import QaoaParams, cost_phases, expectation, run_qaoa
from .validation import check_seed

TWO_PI = 2.0 * math.pi
DEFAULT_MAX_EVALS = 300
INITIAL_STEP = 0.5
SPREAD_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class OptResult:
    params: QaoaParams
    value: float
    evaluations: int
    trajectory: list[tuple[int, float]] = field(default_factory=list)


def wrap_angles(x) -> np.ndarray:
    return np.mod(np.asarray(x, dtype=float), TWO_PI)


def nelder_mead(
    func: Callable[[np.ndarray], float],
    x0,
    max_evals: int,
    step: float = INITIAL_STEP,
    tol: float = SPREAD_TOL,
) -> tuple[np.ndarray, float, int, list[tuple[int, float]]]:
    """Minimize ``func`` with the standard simplex moves, never exceeding ``max_evals`` calls.

    Returns ``(x_best, f_best, evaluations, trajectory)``; the trajectory holds
    ``(iteration, best value so far)`` pairs. ``x0`` is evaluated first and is
    only displaced by a strictly better point.
    """
    alpha, gamma, rho, sigma = 1.0, 2.0, 0.5, 0.5
    x0 = np.asarray(x0, dtype=float)
    dim = x0.size
    if max_evals < dim + 1:
        raise ValidationError(f"budget {max_evals} below the {dim + 1} evaluations of an initial simplex")
    evals = 0

    def f(x):
        nonlocal evals
        evals += 1
        return float(func(x))

    simplex = [x0]
    for k in range(dim):
        v = x0.copy()
        v[k] += step
        simplex.append(v)
    values = [f(v) for v in simplex]
    trajectory = [(0, min(values))]
    iteration = 0

    def order():
        # stable sort keeps earlier vertices (x0 first) ahead on ties
        idx = sorted(range(dim + 1), key=lambda i: values[i])
        return [simplex[i] for i in idx], [values[i] for i in idx]

    simplex, values = order()
    while evals < max_evals and values[-1] - values[0] >= tol:
        iteration += 1
        centroid = np.mean(simplex[:-1], axis=0)
        xr = centroid + alpha * (centroid - simplex[-1])
        fr = f(xr)
        if values[0] <= fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
        elif fr < values[0]:
            if evals < max_evals:
                xe = centroid + gamma * (xr - centroid)
                fe = f(xe)
                simplex[-1], values[-1] = (xe, fe) if fe < fr else (xr, fr)
            else:
                simplex[-1], values[-1] = xr, fr
        else:
            if evals >= max_evals:
                break
            if fr < values[-1]:
                xc = centroid + rho * (xr - centroid)
                fc = f(xc)
                accept = fc <= fr
            else:
                xc = centroid + rho * (simplex[-1] - centroid)
                fc = f(xc)
                accept = fc < values[-1]
            if accept:
                simplex[-1], values[-1] = xc, fc
            else:
                for i in range(1, dim + 1):
                    if evals >= max_evals:
                        break
                    simplex[i] = simplex[0] + sigma * (simplex[i] - simplex[0])
                    values[i] = f(simplex[i])
        simplex, values = order()
        trajectory.append((iteration, values[0]))
    return simplex[0], values[0], evals, trajectory


def qaoa_objective(model: IsingModel) -> Callable[[np.ndarray], float]:
    """Expectation of the QAOA state as a function of the flat angle vector (wrapped mod 2 pi)."""
    costs = cost_phases(model)
    energies = cost_table(model)

    def objective(x):
        params = QaoaParams.from_vector(wrap_angles(x))
        return expectation(run_qaoa(model, params, costs), model, energies)

    return objective


def local_search(model: IsingModel, init: QaoaParams, max_evals: int = DEFAULT_MAX_EVALS) -> OptResult:
    """Nelder-Mead over all ``2p`` angles starting from ``init``."""
    if max_evals < 2 * init.p + 1:
        raise ValidationError(f"max_evals must be >= 2p + 1 = {2 * init.p + 1}")
    x0 = wrap_angles(init.to_vector())
    x, value, evals, trajectory = nelder_mead(qaoa_objective(model), x0, max_evals)
    return OptResult(QaoaParams.from_vector(wrap_angles(x)), value, evals, trajectory)


def layerwise_optimize(
    model: IsingModel,
    p_max: int,
    max_evals_per_level: int = DEFAULT_MAX_EVALS,
    seed: int = 0,
    fresh: bool = False,
    restarts: int = 1,
) -> list[OptResult]:
    """Optimize depths ``1..p_max`` in turn.

    Depth 1 runs ``restarts`` local searches from uniform random angles in
    ``[0, 2 pi)`` and keeps the best. Each deeper level starts from the
    previous optimum with a ``(0, 0)`` layer appended, which reproduces the
    shallower circuit exactly, so values never increase with depth.
    ``fresh=True`` instead uses random starts at every depth. Each local
    search gets its own ``max_evals_per_level`` budget.
    """
    if p_max < 1:
        raise ValidationError("p_max must be >= 1")
    if restarts < 1:
        raise ValidationError("restarts must be >= 1")
    rng = np.random.default_rng(check_seed(seed))
    results: list[OptResult] = []
    for p in range(1, p_max + 1):
        if p == 1 or fresh:
            inits = [QaoaParams.from_vector(rng.uniform(0.0, TWO_PI, size=2 * p)) for _ in range(restarts)]
        else:
            prev = results[-1].params
            inits = [QaoaParams(prev.gammas + (0.0,), prev.betas + (0.0,))]
        runs = [local_search(model, init, max_evals_per_level) for init in inits]
        results.append(min(runs, key=lambda r: r.value))
    return results
