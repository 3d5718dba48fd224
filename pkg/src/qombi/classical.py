"""Exhaustive search, simulated annealing and the best-of-R multi-run protocol."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numba
import numpy as np

from .exceptions import CapacityError, ValidationError
from .ising import IsingModel, cost_table, evaluate_cost, ground_state_mask
from .validation import (
    MAX_STATE_QUBITS,
    bitstring_to_spins,
    check_seed,
    check_spins,
    index_to_spins,
    lexicographic_keys,
    spins_to_bitstring,
)


@dataclass(frozen=True, eq=False)
class SolutionRecord:
    config: np.ndarray
    energy: float
    objective: float | None = None
    count: int = 1

    @property
    def bitstring(self) -> str:
        return spins_to_bitstring(self.config)

    def sort_key(self):
        return (self.energy, self.bitstring)


@dataclass(frozen=True)
class SaParams:
    sweeps: int = 1000
    t_hot: float = 2.0
    t_cold: float = 0.05
    seed: int = 0
    schedule: str = "geometric"

    def __post_init__(self):
        if int(self.sweeps) != self.sweeps or self.sweeps < 1:
            raise ValidationError("sweeps must be a positive integer")
        if not (self.t_hot > self.t_cold > 0):
            raise ValidationError("temperatures must satisfy t_hot > t_cold > 0")
        if self.schedule != "geometric":
            raise ValidationError(f"unsupported cooling schedule {self.schedule!r}")
        check_seed(self.seed)

    def temperatures(self) -> np.ndarray:
        if self.sweeps == 1:
            return np.array([self.t_hot])
        k = np.arange(self.sweeps) / (self.sweeps - 1)
        return self.t_hot * (self.t_cold / self.t_hot) ** k


def exhaustive(model: IsingModel, limit: int | None = None) -> list[SolutionRecord]:
    """All ``2**n`` configurations sorted by energy, ties by bitstring.

    ``limit`` truncates the list to the best ``limit`` records.
    """
    if model.n > MAX_STATE_QUBITS:
        raise CapacityError(f"exhaustive search limited to n <= {MAX_STATE_QUBITS}")
    energies = cost_table(model)
    order = np.lexsort((lexicographic_keys(model.n), energies))
    if limit is not None:
        order = order[:limit]
    return [SolutionRecord(index_to_spins(int(z), model.n), float(energies[z])) for z in order]


def ground_states(model: IsingModel, rtol: float = 1e-9) -> list[SolutionRecord]:
    """Exhaustive ground states (energy within ``rtol`` of the minimum)."""
    count = int(np.sum(ground_state_mask(cost_table(model), rtol)))
    return exhaustive(model, limit=count)


def _csr_adjacency(model: IsingModel):
    rows, cols, vals = model.coupling_arrays()
    r = np.concatenate([rows, cols])
    c = np.concatenate([cols, rows])
    v = np.concatenate([vals, vals])
    order = np.lexsort((c, r))
    r, c, v = r[order], c[order], v[order]
    indptr = np.zeros(model.n + 1, dtype=np.int64)
    np.add.at(indptr, r + 1, 1)
    return np.cumsum(indptr), c.astype(np.int64), v.astype(np.float64)


@numba.njit(cache=True)
def _metropolis(h, indptr, indices, data, spins, temps, uniforms, offset, trace):
    n = spins.size
    field = h.copy()
    for i in range(n):
        for k in range(indptr[i], indptr[i + 1]):
            field[i] += data[k] * spins[indices[k]]
    energy = offset
    for i in range(n):
        energy += h[i] * spins[i]
        for k in range(indptr[i], indptr[i + 1]):
            if indices[k] > i:
                energy += data[k] * spins[i] * spins[indices[k]]
    best = spins.copy()
    best_energy = energy
    record = trace.size > 0
    for sweep in range(temps.size):
        t = temps[sweep]
        for i in range(n):
            delta = -2.0 * spins[i] * field[i]
            u = uniforms[sweep * n + i]
            if delta <= 0.0 or u < math.exp(-delta / t):
                spins[i] = -spins[i]
                energy += delta
                for k in range(indptr[i], indptr[i + 1]):
                    field[indices[k]] += 2.0 * data[k] * spins[i]
                if energy < best_energy:
                    best_energy = energy
                    best[:] = spins
        if record:
            z = 0
            for i in range(n):
                if spins[i] < 0:
                    z |= 1 << i
            trace[sweep] = z
    return best, best_energy


def metropolis_trace(model: IsingModel, temperatures, seed: int) -> np.ndarray:
    """Basis index of the chain after every sweep at the given temperatures."""
    temps = np.asarray(temperatures, dtype=np.float64)
    rng = np.random.default_rng(check_seed(seed))
    spins = rng.choice(np.array([-1.0, 1.0]), size=model.n)
    uniforms = rng.random(temps.size * model.n)
    trace = np.zeros(temps.size, dtype=np.int64)
    indptr, indices, data = _csr_adjacency(model)
    _metropolis(np.array(model.h, dtype=np.float64), indptr, indices, data, spins, temps, uniforms, model.offset, trace)
    return trace


def simulated_annealing(model: IsingModel, params: SaParams = SaParams()) -> SolutionRecord:
    """Single-spin-flip Metropolis annealing; returns the best configuration visited.

    Each sweep proposes flips of spins ``0..n-1`` in order at one temperature of
    the geometric ladder. The random start and all acceptance draws come from
    ``numpy.random.default_rng(params.seed)``.
    """
    temps = params.temperatures()
    rng = np.random.default_rng(params.seed)
    spins = rng.choice(np.array([-1.0, 1.0]), size=model.n)
    uniforms = rng.random(temps.size * model.n)
    indptr, indices, data = _csr_adjacency(model)
    best, _ = _metropolis(
        np.array(model.h, dtype=np.float64), indptr, indices, data,
        spins, temps, uniforms, model.offset, np.zeros(0, dtype=np.int64),
    )
    config = check_spins(best.astype(np.int8), model.n)
    # recompute so the record matches evaluate_cost bit for bit
    return SolutionRecord(config, evaluate_cost(model, config))


Solver = Callable[[IsingModel, int], SolutionRecord]


def sa_solver(sweeps: int = 1000, t_hot: float = 2.0, t_cold: float = 0.05) -> Solver:
    """Bind SA knobs into a ``(model, seed) -> SolutionRecord`` solver for :func:`multi_run`."""
    def solve(model: IsingModel, seed: int) -> SolutionRecord:
        return simulated_annealing(model, SaParams(sweeps, t_hot, t_cold, seed))
    return solve


def run_seeds(seed: int, runs: int) -> list[int]:
    """Independent per-run seeds derived from one master seed."""
    seq = np.random.SeedSequence(check_seed(seed))
    return [int(child.generate_state(1, dtype=np.uint64)[0] >> 1) for child in seq.spawn(runs)]


def aggregate(records, objective: Callable | None = None) -> list[SolutionRecord]:
    """Merge records with identical configs, summing counts; sorted by energy then bitstring."""
    merged: dict[str, SolutionRecord] = {}
    for rec in records:
        key = rec.bitstring
        if key in merged:
            prev = merged[key]
            merged[key] = SolutionRecord(prev.config, prev.energy, prev.objective, prev.count + rec.count)
        else:
            obj = rec.objective if objective is None else float(objective(rec.config))
            merged[key] = SolutionRecord(rec.config, rec.energy, obj, rec.count)
    return sorted(merged.values(), key=SolutionRecord.sort_key)


def multi_run(model: IsingModel, runs: int, solver: Solver, seed: int = 0) -> list[SolutionRecord]:
    """Run ``solver`` ``runs`` times on independent seed streams and aggregate.

    The best-of-R answer is the first record; ``count / runs`` is the
    empirical occurrence probability of each distinct configuration.
    """
    if runs < 1:
        raise ValidationError("runs must be >= 1")
    return aggregate(solver(model, s) for s in run_seeds(seed, runs))


def records_from_histogram(model: IsingModel, histogram: dict[str, int]) -> list[SolutionRecord]:
    recs = []
    for bits, count in histogram.items():
        s = bitstring_to_spins(bits, model.n)
        recs.append(SolutionRecord(s, evaluate_cost(model, s), None, int(count)))
    return aggregate(recs)
