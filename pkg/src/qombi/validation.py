"""Input validation and basis-state helpers.

Conventions used across the package:

* bit ``b_i = 0`` corresponds to spin ``s_i = +1`` and ``b_i = 1`` to ``s_i = -1``;
* qubit ``i`` is bit ``i`` of a basis-state index, i.e. ``z = sum_i b_i 2**i``
  (qubit 0 is the least-significant bit);
* a *bitstring* lists bits in qubit order, so character ``i`` is ``b_i``.
  ``"10"`` on two qubits is index 1 and spins ``(-1, +1)``.
"""

from __future__ import annotations

import numbers

import numpy as np

from .exceptions import CapacityError, DimensionError, ValidationError

MAX_STATE_QUBITS = 24
MAX_DENSE_QUBITS = 12


def check_spins(spins, n: int | None = None) -> np.ndarray:
    """Return ``spins`` as an int8 array of +1/-1, raising on bad input."""
    arr = np.asarray(spins)
    if arr.ndim != 1:
        raise ValidationError(f"spin config must be 1-D, got shape {arr.shape}")
    if n is not None and arr.shape[0] != n:
        raise DimensionError(f"spin config has length {arr.shape[0]}, model has n={n}")
    if not np.all((arr == 1) | (arr == -1)):
        raise ValidationError("spin values must be +1 or -1")
    return arr.astype(np.int8)


def check_n_qubits(n, limit: int = MAX_STATE_QUBITS) -> int:
    if not isinstance(n, numbers.Integral) or isinstance(n, bool):
        raise ValidationError(f"qubit count must be an integer, got {n!r}")
    if n < 1 or n > limit:
        raise CapacityError(f"qubit count {n} outside supported range 1..{limit}")
    return int(n)


def check_state(state, n: int | None = None) -> np.ndarray:
    """Validate a statevector and return it as a complex128 array."""
    psi = np.asarray(state, dtype=np.complex128)
    if psi.ndim != 1 or psi.size < 2 or psi.size & (psi.size - 1):
        raise ValidationError("statevector length must be a power of two >= 2")
    if n is not None and psi.size != 1 << n:
        raise DimensionError(f"statevector has {n_qubits_of(psi)} qubits, model has n={n}")
    return psi


def n_qubits_of(state: np.ndarray) -> int:
    return int(state.size).bit_length() - 1


def basis_bits(n: int) -> np.ndarray:
    """``(2**n, n)`` uint8 array; row ``z`` holds the bits of index ``z``."""
    z = np.arange(1 << n, dtype=np.int64)
    return ((z[:, None] >> np.arange(n)) & 1).astype(np.uint8)


def basis_spins(n: int) -> np.ndarray:
    """``(2**n, n)`` int8 array of spins for every basis index."""
    return (1 - 2 * basis_bits(n).astype(np.int8)).astype(np.int8)


def spins_to_index(spins) -> int:
    s = check_spins(spins)
    return int(sum(1 << i for i, v in enumerate(s) if v == -1))


def index_to_spins(z: int, n: int) -> np.ndarray:
    return np.array([1 - 2 * ((z >> i) & 1) for i in range(n)], dtype=np.int8)


def index_to_bitstring(z: int, n: int) -> str:
    return "".join("1" if (z >> i) & 1 else "0" for i in range(n))


def bitstring_to_index(bits: str, n: int | None = None) -> int:
    if not isinstance(bits, str) or not bits or set(bits) - {"0", "1"}:
        raise ValidationError(f"malformed bitstring {bits!r}")
    if n is not None and len(bits) != n:
        raise DimensionError(f"bitstring {bits!r} has length {len(bits)}, expected {n}")
    return sum(1 << i for i, c in enumerate(bits) if c == "1")


def spins_to_bitstring(spins) -> str:
    return "".join("1" if v == -1 else "0" for v in check_spins(spins))


def bitstring_to_spins(bits: str, n: int | None = None) -> np.ndarray:
    return index_to_spins(bitstring_to_index(bits, n), len(bits))


def lexicographic_keys(n: int) -> np.ndarray:
    """Integer key per basis index whose order matches bitstring string order."""
    bits = basis_bits(n).astype(np.int64)
    weights = 1 << np.arange(n - 1, -1, -1, dtype=np.int64)
    return bits @ weights


def check_seed(seed) -> int:
    if not isinstance(seed, numbers.Integral) or isinstance(seed, bool) or seed < 0:
        raise ValidationError(f"seed must be a non-negative integer, got {seed!r}")
    return int(seed)
