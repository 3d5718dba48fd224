"""Exact statevector simulation of QAOA on Ising cost functions.

States are plain complex128 numpy arrays of length ``2**n`` with qubit 0 as
the least-significant bit of the basis index (see :mod:`qombi.validation`).
Two execution paths exist: the default diagonal path (phase multiply for the
cost layer, per-axis kernel for the mixer) and an explicit gate list
(H, RZ, CNOT, RX) used for cross-checks and export.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .exceptions import ValidationError
from .ising import IsingModel, cost_table
from .validation import (
    check_n_qubits,
    check_seed,
    check_state,
    index_to_bitstring,
    n_qubits_of,
)

BIT_ORDER_NOTE = "qubit 0 is the least-significant bit of the basis index; bit 0 <-> spin +1"


@dataclass(frozen=True)
class QaoaParams:
    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        gammas = tuple(float(g) for g in np.ravel(self.gammas))
        betas = tuple(float(b) for b in np.ravel(self.betas))
        if len(gammas) != len(betas):
            raise ValidationError("gammas and betas must have equal length")
        if not gammas:
            raise ValidationError("QAOA depth must be at least 1")
        if not all(math.isfinite(a) for a in gammas + betas):
            raise ValidationError("QAOA angles must be finite")
        object.__setattr__(self, "gammas", gammas)
        object.__setattr__(self, "betas", betas)

    @property
    def p(self) -> int:
        return len(self.gammas)

    def to_vector(self) -> np.ndarray:
        """Flatten as ``[gamma_1..gamma_p, beta_1..beta_p]``."""
        return np.array(self.gammas + self.betas)

    @classmethod
    def from_vector(cls, x) -> "QaoaParams":
        x = np.asarray(x, dtype=float)
        p = x.size // 2
        return cls(tuple(x[:p]), tuple(x[p:]))


class Gate(NamedTuple):
    name: str
    qubits: tuple[int, ...]
    angle: float | None = None


def init_uniform(n: int) -> np.ndarray:
    n = check_n_qubits(n)
    return np.full(1 << n, 2.0 ** (-n / 2), dtype=np.complex128)


def cost_phases(model: IsingModel) -> np.ndarray:
    """Offset-free cost of every basis state (the phase-separator diagonal)."""
    return cost_table(model, include_offset=False)


def apply_cost_layer(state, model: IsingModel, gamma: float, costs: np.ndarray | None = None) -> np.ndarray:
    """Multiply each amplitude by ``exp(-i gamma C0(z))``.

    ``costs`` may carry a precomputed :func:`cost_phases` table.
    """
    psi = check_state(state, model.n)
    if costs is None:
        costs = cost_phases(model)
    return psi * np.exp(-1j * gamma * costs)


def apply_mixer_layer(state, beta: float) -> np.ndarray:
    """Apply ``exp(+i beta X) = RX(-2 beta)`` to every qubit."""
    psi = check_state(state)
    n = n_qubits_of(psi)
    c, s = math.cos(beta), 1j * math.sin(beta)
    # C-order reshape puts qubit k on axis n-1-k; every axis gets the same kernel.
    t = psi.reshape((2,) * n)
    for axis in range(n):
        t = c * t + s * np.flip(t, axis=axis)
    return t.reshape(-1)


def run_qaoa(model: IsingModel, params: QaoaParams, costs: np.ndarray | None = None) -> np.ndarray:
    if costs is None:
        costs = cost_phases(model)
    psi = init_uniform(model.n)
    for gamma, beta in zip(params.gammas, params.betas):
        psi = apply_cost_layer(psi, model, gamma, costs)
        psi = apply_mixer_layer(psi, beta)
    return psi


def expectation(state, model: IsingModel, energies: np.ndarray | None = None) -> float:
    """Mean cost (offset included) under the Born distribution of ``state``."""
    psi = check_state(state, model.n)
    if energies is None:
        energies = cost_table(model)
    return float(np.dot(np.abs(psi) ** 2, energies))


def probabilities(state) -> np.ndarray:
    p = np.abs(check_state(state)) ** 2
    return p / p.sum()


def sample(state, shots: int, seed: int) -> dict[str, int]:
    """Multinomial measurement histogram keyed by bitstring, sorted by key."""
    if shots < 1:
        raise ValidationError("shots must be >= 1")
    psi = check_state(state)
    n = n_qubits_of(psi)
    rng = np.random.default_rng(check_seed(seed))
    counts = rng.multinomial(int(shots), probabilities(psi))
    hits = np.flatnonzero(counts)
    return dict(sorted((index_to_bitstring(int(z), n), int(counts[z])) for z in hits))


def fidelity(a, b) -> float:
    """``|<a|b>|`` for two normalized states (global phase ignored)."""
    return float(abs(np.vdot(check_state(a), check_state(b))))


# -- gate path ---------------------------------------------------------------

def to_gate_list(model: IsingModel, params: QaoaParams) -> list[Gate]:
    gates = [Gate("H", (q,)) for q in range(model.n)]
    for gamma, beta in zip(params.gammas, params.betas):
        for i, hi in enumerate(model.h):
            if hi != 0.0:
                gates.append(Gate("RZ", (i,), 2.0 * hi * gamma))
        for (i, j), v in model.J.items():
            gates.append(Gate("CNOT", (i, j)))
            gates.append(Gate("RZ", (j,), 2.0 * v * gamma))
            gates.append(Gate("CNOT", (i, j)))
        gates.extend(Gate("RX", (q,), -2.0 * beta) for q in range(model.n))
    return gates


def _single_qubit(psi: np.ndarray, n: int, q: int, u: np.ndarray) -> np.ndarray:
    t = psi.reshape((2,) * n)
    axis = n - 1 - q
    t = np.moveaxis(np.tensordot(u, t, axes=([1], [axis])), 0, axis)
    return t.reshape(-1)


def simulate_gates(gates: Iterable[Gate], n: int) -> np.ndarray:
    """Run a gate list on ``|0...0>`` gate by gate."""
    n = check_n_qubits(n)
    psi = np.zeros(1 << n, dtype=np.complex128)
    psi[0] = 1.0
    index = np.arange(1 << n)
    hadamard = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)
    for gate in gates:
        if any(not 0 <= q < n for q in gate.qubits):
            raise ValidationError(f"gate {gate} addresses a qubit outside 0..{n - 1}")
        if gate.name == "H":
            psi = _single_qubit(psi, n, gate.qubits[0], hadamard)
        elif gate.name == "RZ":
            half = gate.angle / 2
            u = np.diag([np.exp(-1j * half), np.exp(1j * half)])
            psi = _single_qubit(psi, n, gate.qubits[0], u)
        elif gate.name == "RX":
            half = gate.angle / 2
            c, s = math.cos(half), -1j * math.sin(half)
            psi = _single_qubit(psi, n, gate.qubits[0], np.array([[c, s], [s, c]]))
        elif gate.name == "CNOT":
            control, target = gate.qubits
            flipped = np.where((index >> control) & 1, index ^ (1 << target), index)
            psi = psi[flipped]
        else:
            raise ValidationError(f"unknown gate {gate.name!r}")
    return psi


def gate_list_to_jsonl(gates: Iterable[Gate], n: int) -> str:
    """JSON-lines export; the first record is a header carrying the bit order."""
    gates = list(gates)
    lines = [json.dumps({"header": True, "n_qubits": n, "gate_count": len(gates), "bit_order": BIT_ORDER_NOTE}, sort_keys=True)]
    for g in gates:
        rec = {"gate": g.name, "qubits": list(g.qubits)}
        if g.angle is not None:
            rec["angle"] = g.angle
        lines.append(json.dumps(rec, sort_keys=True))
    return "\n".join(lines) + "\n"


def gate_list_from_jsonl(text: str) -> tuple[int, list[Gate]]:
    records = [json.loads(line) for line in text.splitlines() if line.strip()]
    if not records or not records[0].get("header"):
        raise ValidationError("gate list must start with a header record")
    gates = [Gate(r["gate"], tuple(r["qubits"]), r.get("angle")) for r in records[1:]]
    return int(records[0]["n_qubits"]), gates
