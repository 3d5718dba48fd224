"""Benchmark problem generators: star-graph MaxCut and 1-bit RIS beamforming.

RIS channel generation
----------------------
Channels are drawn from ``numpy.random.Generator(PCG64(seed))``.  Complex
Gaussian entries come from a Box-Muller transform of that generator's
uniform stream: for each entry two uniforms ``u1, u2`` in ``[0, 1)`` are
drawn (``rng.random(2)``), and with ``r = sqrt(-2 ln(1 - u1))`` the entry is
``(r cos(2 pi u2) + 1j r sin(2 pi u2)) / sqrt(2)``, i.e. unit total variance.
All ``n`` transmitter-to-RIS gains are drawn first, then the ``n``
RIS-to-receiver gains.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import DegenerateInputError, ValidationError
from .ising import IsingModel
from .validation import check_seed, check_spins


@dataclass(frozen=True)
class Graph:
    node_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for i, j in self.edges:
            if i == j:
                raise ValidationError(f"self-loop at node {i}")
            if not (0 <= i < self.node_count and 0 <= j < self.node_count):
                raise ValidationError(f"edge {(i, j)} out of range")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValidationError(f"duplicate edge {key}")
            seen.add(key)

    def degrees(self) -> list[int]:
        deg = [0] * self.node_count
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def cut_size(self, spins) -> int:
        s = check_spins(spins, self.node_count)
        return sum(1 for i, j in self.edges if s[i] != s[j])


def gen_star_maxcut(leaves: int) -> Graph:
    """Star graph: leaves ``0..leaves-1`` all joined to center node ``leaves``."""
    if leaves < 1:
        raise DegenerateInputError("a star needs at least one leaf")
    return Graph(leaves + 1, tuple((i, leaves) for i in range(leaves)))


def maxcut_to_ising(graph: Graph) -> IsingModel:
    """Unit antiferromagnetic couplings; ``cut(s) = (|E| - C(s)) / 2``."""
    return IsingModel(graph.node_count, None, {(i, j): 1.0 for i, j in graph.edges})


@dataclass(frozen=True, eq=False)
class RisInstance:
    n: int
    h_chan: np.ndarray
    g_chan: np.ndarray
    power: float = 1.0
    noise_var: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("RIS needs at least one element")
        h = np.array(self.h_chan, dtype=np.complex128)
        g = np.array(self.g_chan, dtype=np.complex128)
        if h.shape != (self.n,) or g.shape != (self.n,):
            raise ValidationError(f"channel vectors must have length {self.n}")
        if not (np.all(np.isfinite(h)) and np.all(np.isfinite(g))):
            raise ValidationError("channel gains must be finite")
        if not (self.power > 0 and self.noise_var > 0):
            raise ValidationError("power and noise variance must be positive")
        h.setflags(write=False)
        g.setflags(write=False)
        object.__setattr__(self, "h_chan", h)
        object.__setattr__(self, "g_chan", g)

    @property
    def effective_gains(self) -> np.ndarray:
        """Cascaded per-element gains ``a_k = h_k g_k``."""
        return self.h_chan * self.g_chan

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "h_chan": [[float(z.real), float(z.imag)] for z in self.h_chan],
            "g_chan": [[float(z.real), float(z.imag)] for z in self.g_chan],
            "power": float(self.power),
            "noise_var": float(self.noise_var),
            "seed": int(self.seed),
        }

    @classmethod
    def from_dict(cls, data) -> "RisInstance":
        try:
            return cls(
                int(data["n"]),
                [complex(re, im) for re, im in data["h_chan"]],
                [complex(re, im) for re, im in data["g_chan"]],
                float(data.get("power", 1.0)),
                float(data.get("noise_var", 1.0)),
                int(data.get("seed", 0)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed RIS instance: {exc}") from None


def complex_gaussian(rng: np.random.Generator, size: int) -> np.ndarray:
    """Unit-variance circular complex Gaussians via Box-Muller on ``rng.random``."""
    u = rng.random((size, 2))
    r = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
    theta = 2.0 * math.pi * u[:, 1]
    return (r * np.cos(theta) + 1j * r * np.sin(theta)) / math.sqrt(2.0)


def gen_ris_instance(n: int, power: float = 1.0, noise_var: float = 1.0, seed: int = 0) -> RisInstance:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValidationError(f"RIS element count must be a positive integer, got {n!r}")
    rng = np.random.Generator(np.random.PCG64(check_seed(seed)))
    h = complex_gaussian(rng, int(n))
    g = complex_gaussian(rng, int(n))
    return RisInstance(int(n), h, g, float(power), float(noise_var), int(seed))


def ris_snr(inst: RisInstance, config) -> float:
    """Receiver SNR for a +1/-1 phase configuration (+1 is phase 0, -1 is phase pi)."""
    s = check_spins(config, inst.n)
    field = np.sum(inst.effective_gains * s)
    return float(inst.power * abs(field) ** 2 / inst.noise_var)


def ris_to_ising(inst: RisInstance) -> IsingModel:
    """Ising model whose cost is exactly ``-ris_snr`` for every configuration.

    Expanding ``|sum_k a_k s_k|^2`` gives ``sum_k |a_k|^2`` (since ``s_k^2 = 1``)
    plus ``2 Re(a_i conj(a_j)) s_i s_j`` for every pair ``i < j``.
    """
    a = inst.effective_gains
    snr_scale = inst.power / inst.noise_var
    gram = np.real(np.outer(a, np.conj(a)))
    J = {
        (i, j): -2.0 * snr_scale * gram[i, j]
        for i in range(inst.n)
        for j in range(i + 1, inst.n)
    }
    offset = -snr_scale * float(np.sum(np.abs(a) ** 2))
    return IsingModel(inst.n, None, J, offset)


def load_instance(path) -> RisInstance:
    return RisInstance.from_dict(json.loads(Path(path).read_text()))


def save_instance(inst: RisInstance, path) -> None:
    Path(path).write_text(json.dumps(inst.to_dict(), indent=2, sort_keys=True) + "\n")
