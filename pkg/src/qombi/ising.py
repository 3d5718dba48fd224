"""Ising and QUBO cost functions, conversions and coefficient rescaling.

The Ising cost of spins ``s`` is::

    C(s) = offset + sum_i h_i s_i + sum_{i<j} J_ij s_i s_j

and a QUBO over bits ``x`` is ``offset + sum_{i<=j} q_ij x_i x_j`` (diagonal
entries are linear terms).  Conversions use ``x_i = (1 - s_i) / 2`` so that
``x_i`` is the measured bit of qubit ``i``.
"""

from __future__ import annotations

import hashlib
import json
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .exceptions import CapacityError, DegenerateInputError, ValidationError
from .validation import MAX_STATE_QUBITS, basis_spins, check_spins

DEFAULT_H_MAX = 2.0
DEFAULT_J_MAX = 1.0


def _check_finite(value, what: str) -> float:
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{what} is not a real number: {value!r}") from None
    if not math.isfinite(v):
        raise ValidationError(f"{what} is not finite: {value!r}")
    return v


def _normalize_pairs(n: int, pairs, *, allow_diagonal: bool, what: str) -> dict:
    if isinstance(pairs, Mapping):
        items = list(pairs.items())
    else:
        items = [((i, j), v) for i, j, v in pairs]
    out: dict[tuple[int, int], float] = {}
    for key, value in items:
        try:
            i, j = (int(k) for k in key)
        except (TypeError, ValueError):
            raise ValidationError(f"{what} key {key!r} is not an index pair") from None
        if not (0 <= i < n and 0 <= j < n):
            raise ValidationError(f"{what} index pair {(i, j)} out of range for n={n}")
        if i == j and not allow_diagonal:
            raise ValidationError(f"{what} has a self-coupling at {(i, j)}")
        v = _check_finite(value, f"{what}[{i},{j}]")
        a, b = min(i, j), max(i, j)
        if (a, b) in out:
            warnings.warn(
                f"{what} entries ({i},{j}) and ({j},{i}) folded into upper triangle",
                stacklevel=4,
            )
            out[(a, b)] += v
        else:
            out[(a, b)] = v
    return dict(sorted(out.items()))


@dataclass(frozen=True, eq=False)
class IsingModel:
    """Linear fields ``h``, upper-triangular couplings ``J`` and a constant offset.

    ``J`` may be given as a mapping ``{(i, j): value}`` or an iterable of
    ``(i, j, value)`` triples. Keys with ``i > j`` are reordered; when both
    orientations of one pair appear they are summed with a warning.
    """

    n: int
    h: np.ndarray = None
    J: Mapping[tuple[int, int], float] = field(default_factory=dict)
    offset: float = 0.0

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool) or self.n < 1:
            raise ValidationError(f"variable count must be a positive integer, got {self.n!r}")
        n = int(self.n)
        h = np.zeros(n) if self.h is None else np.array(self.h, dtype=float).ravel()
        if h.shape != (n,):
            raise ValidationError(f"h has length {h.size}, expected {n}")
        if not np.all(np.isfinite(h)):
            raise ValidationError("h contains non-finite values")
        h.setflags(write=False)
        J = _normalize_pairs(n, self.J, allow_diagonal=False, what="J")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "J", MappingProxyType(J))
        object.__setattr__(self, "offset", _check_finite(self.offset, "offset"))

    def coupling_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return ``(rows, cols, values)`` of the couplings as arrays."""
        if not self.J:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64), np.zeros(0)
        keys = np.array(list(self.J.keys()), dtype=np.int64)
        return keys[:, 0], keys[:, 1], np.array(list(self.J.values()), dtype=float)

    def with_offset(self, offset: float) -> "IsingModel":
        return IsingModel(self.n, self.h, dict(self.J), offset)

    def is_zero(self) -> bool:
        return not np.any(self.h) and not any(self.J.values())

    def to_dict(self, metadata: dict | None = None) -> dict:
        return {
            "n": self.n,
            "h": [float(v) for v in self.h],
            "J": [[i, j, float(v)] for (i, j), v in self.J.items()],
            "offset": float(self.offset),
            "metadata": dict(metadata or {}),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "IsingModel":
        try:
            n = data["n"]
            J = data.get("J", [])
            if any(len(t) != 3 for t in J):
                raise ValidationError("each J entry must be [i, j, value]")
            return cls(n, data.get("h"), J, data.get("offset", 0.0))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed problem JSON: {exc}") from None

    def __repr__(self):
        return f"IsingModel(n={self.n}, nnz_h={int(np.count_nonzero(self.h))}, nnz_J={len(self.J)}, offset={self.offset!r})"


@dataclass(frozen=True, eq=False)
class QuboModel:
    """QUBO ``offset + sum_{i<=j} q_ij x_i x_j`` over bits ``x_i in {0, 1}``."""

    n: int
    q: Mapping[tuple[int, int], float] = field(default_factory=dict)
    offset: float = 0.0

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool) or self.n < 1:
            raise ValidationError(f"variable count must be a positive integer, got {self.n!r}")
        q = _normalize_pairs(int(self.n), self.q, allow_diagonal=True, what="q")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "q", MappingProxyType(q))
        object.__setattr__(self, "offset", _check_finite(self.offset, "offset"))

    def evaluate(self, bits) -> float:
        x = np.asarray(bits)
        if x.shape != (self.n,) or not np.all((x == 0) | (x == 1)):
            raise ValidationError(f"expected {self.n} binary values")
        total = self.offset
        for (i, j), v in self.q.items():
            total += v * x[i] * x[j]
        return float(total)


def evaluate_cost(model: IsingModel, config) -> float:
    """Ising energy of one spin configuration, offset included."""
    s = check_spins(config, model.n).astype(float)
    rows, cols, vals = model.coupling_arrays()
    return float(model.offset + model.h @ s + np.sum(vals * s[rows] * s[cols]))


def cost_table(model: IsingModel, include_offset: bool = True) -> np.ndarray:
    """Energies of all ``2**n`` basis states, indexed by basis index.

    ``include_offset=False`` gives the offset-free cost used as the problem
    Hamiltonian's diagonal.
    """
    if model.n > MAX_STATE_QUBITS:
        raise CapacityError(f"cost table for n={model.n} exceeds 2**{MAX_STATE_QUBITS} entries")
    spins = basis_spins(model.n).astype(float)
    energies = spins @ model.h
    for (i, j), v in model.J.items():
        energies += v * spins[:, i] * spins[:, j]
    if include_offset:
        energies += model.offset
    return energies


def ground_state_mask(energies: np.ndarray, rtol: float = 1e-9) -> np.ndarray:
    """Boolean mask of entries within a relative tolerance of the minimum."""
    e_min = float(np.min(energies))
    return energies <= e_min + rtol * max(1.0, abs(e_min))


def qubo_to_ising(qubo: QuboModel) -> IsingModel:
    h = np.zeros(qubo.n)
    J: dict[tuple[int, int], float] = {}
    offset = qubo.offset
    for (i, j), v in qubo.q.items():
        if i == j:
            offset += v / 2
            h[i] -= v / 2
        else:
            offset += v / 4
            h[i] -= v / 4
            h[j] -= v / 4
            J[(i, j)] = J.get((i, j), 0.0) + v / 4
    return IsingModel(qubo.n, h, {k: v for k, v in J.items() if v != 0.0}, offset)


def ising_to_qubo(model: IsingModel) -> QuboModel:
    q: dict[tuple[int, int], float] = {}
    offset = model.offset
    for i, hi in enumerate(model.h):
        if hi:
            offset += hi
            q[(i, i)] = q.get((i, i), 0.0) - 2 * hi
    for (i, j), v in model.J.items():
        offset += v
        q[(i, i)] = q.get((i, i), 0.0) - 2 * v
        q[(j, j)] = q.get((j, j), 0.0) - 2 * v
        q[(i, j)] = q.get((i, j), 0.0) + 4 * v
    return QuboModel(model.n, {k: v for k, v in q.items() if v != 0.0}, offset)


def rescale(
    model: IsingModel, h_max: float = DEFAULT_H_MAX, j_max: float = DEFAULT_J_MAX
) -> tuple[IsingModel, float]:
    """Shrink coefficients so ``|h_i| <= h_max`` and ``|J_ij| <= j_max``.

    Models already within range are returned unchanged (scale 1); the offset
    is scaled by the same factor so energies stay proportional.
    """
    if h_max <= 0 or j_max <= 0:
        raise ValidationError("h_max and j_max must be positive")
    if model.is_zero():
        raise DegenerateInputError("cannot rescale a model with no nonzero coefficient")
    candidates = [1.0]
    max_h = float(np.max(np.abs(model.h)))
    if max_h > 0:
        candidates.append(h_max / max_h)
    max_j = max((abs(v) for v in model.J.values()), default=0.0)
    if max_j > 0:
        candidates.append(j_max / max_j)
    scale = min(candidates)
    if scale == 1.0:
        return model, 1.0
    scaled = IsingModel(
        model.n,
        model.h * scale,
        {k: v * scale for k, v in model.J.items()},
        model.offset * scale,
    )
    return scaled, scale


def problem_digest(model: IsingModel) -> str:
    """SHA-256 of the canonical serialization of the model's coefficients."""
    canon = {
        "n": model.n,
        "h": [format(float(v), ".17g") for v in model.h],
        "J": [[i, j, format(float(v), ".17g")] for (i, j), v in model.J.items()],
        "offset": format(float(model.offset), ".17g"),
    }
    blob = json.dumps(canon, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def load_problem(path) -> tuple[IsingModel, dict]:
    """Read the JSON problem format; returns the model and its metadata."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: problem file must hold a JSON object")
    return IsingModel.from_dict(data), dict(data.get("metadata") or {})


def save_problem(model: IsingModel, path, metadata: dict | None = None) -> None:
    text = json.dumps(model.to_dict(metadata), indent=2, sort_keys=True)
    Path(path).write_text(text + "\n")
