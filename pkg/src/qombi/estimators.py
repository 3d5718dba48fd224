"""scikit-learn style solver estimators.

Each solver is configured through constructor hyper-parameters (so
``get_params``/``set_params``/``clone`` work) and ``fit(model)`` solves an
:class:`~qombi.ising.IsingModel`, storing results in trailing-underscore
attributes. ``predict()`` returns the best spin configuration found and
``histogram_`` holds the bitstring counts consumed by
:func:`qombi.report.build_report`.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .adiabatic import LINEAR, EvolutionSpec, evolve
from .classical import exhaustive, multi_run, records_from_histogram, sa_solver
from .exceptions import ValidationError
from .ising import DEFAULT_H_MAX, DEFAULT_J_MAX, IsingModel, rescale
from .optimize import DEFAULT_MAX_EVALS, layerwise_optimize
from .qaoa import expectation, run_qaoa, sample
from .validation import check_seed


def check_model(model) -> IsingModel:
    if isinstance(model, IsingModel):
        return model
    if isinstance(model, dict):
        return IsingModel.from_dict(model)
    raise ValidationError(f"expected an IsingModel, got {type(model).__name__}")


class _SolverMixin:
    def predict(self) -> np.ndarray:
        check_is_fitted(self, "histogram_")
        return self.best_config_

    def fit_predict(self, model) -> np.ndarray:
        return self.fit(model).predict()

    def _set_best(self, model: IsingModel, records=None):
        if records is None:
            records = records_from_histogram(model, self.histogram_)
        self.records_ = records
        self.best_config_ = records[0].config
        self.best_energy_ = records[0].energy
        self.n_features_in_ = model.n


class ExhaustiveSolver(_SolverMixin, BaseEstimator):
    """Enumerate all configurations; ``histogram_`` counts each one once."""

    def fit(self, model, y=None):
        model = check_model(model)
        records = exhaustive(model)
        self.histogram_ = {r.bitstring: 1 for r in records}
        self._set_best(model, records)
        return self


class SimulatedAnnealingSolver(_SolverMixin, BaseEstimator):
    """Best-of-``runs`` simulated annealing with independent seeded runs."""

    def __init__(self, runs=1000, sweeps=1000, t_hot=2.0, t_cold=0.05, seed=0):
        self.runs = runs
        self.sweeps = sweeps
        self.t_hot = t_hot
        self.t_cold = t_cold
        self.seed = seed

    def fit(self, model, y=None):
        model = check_model(model)
        records = multi_run(model, self.runs, sa_solver(self.sweeps, self.t_hot, self.t_cold), check_seed(self.seed))
        self.histogram_ = dict(sorted((r.bitstring, r.count) for r in records))
        self._set_best(model, records)
        return self


class QAOASolver(_SolverMixin, BaseEstimator):
    """Layer-wise optimized QAOA, sampled with ``shots`` measurements.

    With ``rescale=True`` the angles are optimized on the model shrunk into
    the ``|h| <= h_max``, ``|J| <= j_max`` range (same minimizers, better
    conditioned angle landscape); energies are always reported on the
    original model.

    After ``fit``: ``results_`` holds one ``OptResult`` per depth (values on
    the circuit model), ``params_`` the final angles, ``scale_`` the
    coefficient scale applied, ``state_`` the final statevector and
    ``expectation_`` its mean cost on the original model.
    """

    def __init__(self, depth=1, max_evals=DEFAULT_MAX_EVALS, shots=1024, seed=0, fresh=False,
                 restarts=5, rescale=True, h_max=DEFAULT_H_MAX, j_max=DEFAULT_J_MAX):
        self.depth = depth
        self.max_evals = max_evals
        self.shots = shots
        self.seed = seed
        self.fresh = fresh
        self.restarts = restarts
        self.rescale = rescale
        self.h_max = h_max
        self.j_max = j_max

    def circuit_model(self, model: IsingModel) -> tuple[IsingModel, float]:
        if self.rescale and not model.is_zero():
            return rescale(model, self.h_max, self.j_max)
        return model, 1.0

    def fit(self, model, y=None):
        model = check_model(model)
        seed = check_seed(self.seed)
        circuit, self.scale_ = self.circuit_model(model)
        self.results_ = layerwise_optimize(circuit, self.depth, self.max_evals, seed, self.fresh, self.restarts)
        self.params_ = self.results_[-1].params
        self.state_ = run_qaoa(circuit, self.params_)
        self.expectation_ = expectation(self.state_, model)
        self.histogram_ = sample(self.state_, self.shots, seed)
        self._set_best(model)
        return self

    def transform(self, model):
        """Statevector of the fitted angles applied to ``model``."""
        check_is_fitted(self, "params_")
        return run_qaoa(self.circuit_model(check_model(model))[0], self.params_)


class AnnealingEvolutionSolver(_SolverMixin, BaseEstimator):
    """Closed-system annealing evolution followed by ``shots`` measurements."""

    def __init__(self, t_f=10.0, steps=None, schedule=LINEAR, shots=1024, seed=0):
        self.t_f = t_f
        self.steps = steps
        self.schedule = schedule
        self.shots = shots
        self.seed = seed

    def fit(self, model, y=None):
        model = check_model(model)
        self.state_ = evolve(model, self.schedule, EvolutionSpec(self.t_f, self.steps))
        self.histogram_ = sample(self.state_, self.shots, check_seed(self.seed))
        self._set_best(model)
        return self


SOLVERS = {
    "exhaustive": ExhaustiveSolver,
    "sa": SimulatedAnnealingSolver,
    "qaoa": QAOASolver,
    "evolve": AnnealingEvolutionSolver,
}

