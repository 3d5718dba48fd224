"""Interpolated annealing Hamiltonian, spectral gap analysis and closed-system evolution.

``H(s) = -A(s) sum_i X_i + B(s) diag(C0)`` with ``C0`` the offset-free Ising
cost; units are dimensionless with hbar = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .exceptions import CapacityError, SolverError, ValidationError
from .ising import IsingModel, cost_table, ground_state_mask
from .qaoa import QaoaParams, init_uniform
from .validation import MAX_DENSE_QUBITS, check_state

DEGENERACY_TOL = 1e-9
# Above this dimension evolution uses sparse Krylov propagation instead of eigh.
_DENSE_PROPAGATOR_DIM = 256


@dataclass(frozen=True, eq=False)
class Schedule:
    """Annealing functions ``A(s)``, ``B(s)`` on ``s`` in ``[0, 1]``.

    ``kind="linear"`` is ``A = 1 - s``, ``B = s``. ``kind="piecewise"``
    linearly interpolates sampled ``(s, A, B)`` rows, e.g. vendor curves.
    """

    kind: str = "linear"
    samples: np.ndarray | None = field(default=None)

    def __post_init__(self):
        if self.kind == "linear":
            return
        if self.kind != "piecewise":
            raise ValidationError(f"unknown schedule kind {self.kind!r}")
        table = np.asarray(self.samples, dtype=float)
        if table.ndim != 2 or table.shape[1] != 3 or table.shape[0] < 2:
            raise ValidationError("piecewise schedule needs >= 2 rows of (s, A, B)")
        s, a, b = table.T
        if not np.all(np.isfinite(table)):
            raise ValidationError("schedule samples must be finite")
        if s[0] != 0.0 or s[-1] != 1.0 or np.any(np.diff(s) <= 0):
            raise ValidationError("schedule fractions must increase strictly from 0 to 1")
        if np.any(np.diff(a) > 0) or np.any(np.diff(b) < 0):
            raise ValidationError("A must be non-increasing and B non-decreasing")
        if not (a[0] > b[0] >= 0 and b[-1] > a[-1] >= 0):
            raise ValidationError("schedule must satisfy A(0) > B(0) >= 0 and B(1) > A(1) >= 0")
        table.setflags(write=False)
        object.__setattr__(self, "samples", table)

    def A(self, s):
        if self.kind == "linear":
            return 1.0 - np.asarray(s, dtype=float)
        return np.interp(s, self.samples[:, 0], self.samples[:, 1])

    def B(self, s):
        if self.kind == "linear":
            return np.asarray(s, dtype=float) * 1.0
        return np.interp(s, self.samples[:, 0], self.samples[:, 2])


LINEAR = Schedule()


@dataclass(frozen=True)
class EvolutionSpec:
    t_f: float
    steps: int | None = None

    def __post_init__(self):
        if not (math.isfinite(self.t_f) and self.t_f >= 0):
            raise ValidationError("t_f must be finite and >= 0")
        steps = default_steps(self.t_f) if self.steps is None else self.steps
        if int(steps) != steps or steps < 1:
            raise ValidationError("steps must be a positive integer")
        object.__setattr__(self, "steps", int(steps))


def default_steps(t_f: float) -> int:
    return max(100, math.ceil(100 * t_f))


@dataclass(frozen=True, eq=False)
class GapReport:
    s_grid: np.ndarray
    levels: np.ndarray
    delta_min: float
    s_star: float
    degenerate_ground: bool
    # min over s of E_1 - E_0 regardless of degeneracy
    delta_min_adjacent: float

    def summary(self) -> dict:
        return {
            "delta_min": float(self.delta_min),
            "s_star": float(self.s_star),
            "degenerate_ground": bool(self.degenerate_ground),
            "delta_min_adjacent": float(self.delta_min_adjacent),
        }


def _check_dense(model: IsingModel) -> None:
    if model.n > MAX_DENSE_QUBITS:
        raise CapacityError(f"dense Hamiltonian path supports n <= {MAX_DENSE_QUBITS}, got {model.n}")


def _check_fraction(s: float) -> float:
    if not (0.0 <= s <= 1.0):
        raise ValidationError(f"annealing fraction {s} outside [0, 1]")
    return float(s)


def transverse_field(n: int, sparse: bool = False):
    """``sum_i X_i`` as a real symmetric matrix."""
    dim = 1 << n
    rows = np.repeat(np.arange(dim), n)
    cols = (np.arange(dim)[:, None] ^ (1 << np.arange(n))).ravel()
    mat = scipy.sparse.csr_matrix((np.ones(rows.size), (rows, cols)), shape=(dim, dim))
    return mat if sparse else mat.toarray()


def build_hamiltonian(model: IsingModel, s: float, sched: Schedule = LINEAR) -> np.ndarray:
    _check_dense(model)
    s = _check_fraction(s)
    h = -float(sched.A(s)) * transverse_field(model.n)
    h[np.diag_indices_from(h)] += float(sched.B(s)) * cost_table(model, include_offset=False)
    return h


def _gap_at(evals: np.ndarray) -> tuple[float, float, bool]:
    """(policy gap, adjacent gap, ground degenerate) for sorted eigenvalues."""
    e0 = evals[0]
    adjacent = float(evals[1] - e0)
    tol = DEGENERACY_TOL * max(1.0, abs(e0))
    distinct = evals[evals > e0 + tol]
    degenerate = adjacent <= tol
    if not degenerate:
        return adjacent, adjacent, False
    return (float(distinct[0] - e0) if distinct.size else 0.0), adjacent, True


def spectrum(model: IsingModel, sched: Schedule = LINEAR, grid_points: int = 101, m_levels: int = 4) -> GapReport:
    """Lowest ``m_levels`` eigenvalues of ``H(s)`` on a uniform ``s`` grid, plus the minimum gap.

    When the ground level is degenerate (within 1e-9) at some ``s``, the gap
    there is measured to the lowest distinct level and ``degenerate_ground``
    is set; ``delta_min_adjacent`` keeps the plain ``E_1 - E_0`` minimum.
    """
    _check_dense(model)
    if grid_points < 2:
        raise ValidationError("grid_points must be >= 2")
    dim = 1 << model.n
    if not 1 <= m_levels:
        raise ValidationError("m_levels must be >= 1")
    s_grid = np.linspace(0.0, 1.0, grid_points)
    x_field = transverse_field(model.n)
    diag = cost_table(model, include_offset=False)
    keep = min(m_levels, dim)
    levels = np.empty((grid_points, keep))
    gaps = np.empty(grid_points)
    adjacent = np.empty(grid_points)
    degenerate_any = False
    for k, s in enumerate(s_grid):
        h = -float(sched.A(s)) * x_field
        h[np.diag_indices_from(h)] += float(sched.B(s)) * diag
        evals = scipy.linalg.eigh(h, eigvals_only=True)
        levels[k] = evals[:keep]
        if dim == 1:
            gaps[k] = adjacent[k] = 0.0
            continue
        gaps[k], adjacent[k], degenerate = _gap_at(evals)
        degenerate_any |= degenerate
    k_star = int(np.argmin(gaps))
    return GapReport(
        s_grid=s_grid,
        levels=levels,
        delta_min=float(gaps[k_star]),
        s_star=float(s_grid[k_star]),
        degenerate_ground=degenerate_any,
        delta_min_adjacent=float(np.min(adjacent)),
    )


def evolve(model: IsingModel, sched: Schedule = LINEAR, spec: EvolutionSpec | None = None, *, t_f: float | None = None) -> np.ndarray:
    """Closed-system evolution from the uniform superposition.

    Each of ``spec.steps`` equal sub-intervals applies the exact propagator of
    ``H`` frozen at the sub-interval midpoint.
    """
    _check_dense(model)
    if spec is None:
        if t_f is None:
            raise ValidationError("provide an EvolutionSpec or t_f")
        spec = EvolutionSpec(t_f)
    psi = init_uniform(model.n)
    if spec.t_f == 0:
        return psi
    dt = spec.t_f / spec.steps
    diag = cost_table(model, include_offset=False)
    dense = psi.size <= _DENSE_PROPAGATOR_DIM
    x_field = transverse_field(model.n, sparse=not dense)
    for k in range(spec.steps):
        s = (k + 0.5) / spec.steps
        a, b = float(sched.A(s)), float(sched.B(s))
        if dense:
            h = -a * x_field
            h[np.diag_indices_from(h)] += b * diag
            evals, vecs = np.linalg.eigh(h)
            psi = vecs @ (np.exp(-1j * dt * evals) * (vecs.T @ psi))
        else:
            h = (-a * x_field + scipy.sparse.diags(b * diag)).tocsr()
            psi = scipy.sparse.linalg.expm_multiply(-1j * dt * h, psi)
    if not np.all(np.isfinite(psi)):
        raise SolverError("evolution produced non-finite amplitudes")
    return psi


def success_probability(state, model: IsingModel) -> float:
    """Total probability on the exhaustive ground-state configurations."""
    psi = check_state(state, model.n)
    mask = ground_state_mask(cost_table(model))
    return float(np.sum(np.abs(psi[mask]) ** 2))


def linear_ramp_params(p: int, dt: float, sched: Schedule = LINEAR) -> QaoaParams:
    """Trotterized annealing angles: ``gamma_k = B(s_k) dt``, ``beta_k = A(s_k) dt``, ``s_k = (k - 1/2)/p``."""
    if p < 1:
        raise ValidationError("p must be >= 1")
    if not dt > 0:
        raise ValidationError("dt must be positive")
    s = (np.arange(1, p + 1) - 0.5) / p
    return QaoaParams(tuple(sched.B(s) * dt), tuple(sched.A(s) * dt))
