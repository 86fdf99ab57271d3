"""Dense statevector with specialised in-place kernels.

Only the operations the doubling circuit needs are provided: Hadamard layers
(as a fast Walsh-Hadamard transform), S-phase layers, a Hadamard layer
restricted to one value of a control qubit, and basis permutations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import kernels
from .bitmath import BitLike, BitString

__all__ = [
    "StateVector",
    "BasisPermutation",
    "init_basis",
    "hadamard_all",
    "s_phase_all",
    "controlled_subspace_hadamard",
    "permute_basis",
    "probabilities_marginal",
]

NORM_TOL = 1e-12
AMPLITUDE_TOL = 1e-10


@dataclass
class StateVector:
    amplitudes: np.ndarray
    qubit_count: int

    def __post_init__(self):
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.ndim != 1 or self.amplitudes.shape[0] != 1 << self.qubit_count:
            raise ValueError(
                f"expected {1 << self.qubit_count} amplitudes for "
                f"{self.qubit_count} qubits, got shape {self.amplitudes.shape}")

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes.copy(), self.qubit_count)

    def __len__(self):
        return self.amplitudes.shape[0]


class BasisPermutation:
    """Immutable bijection on basis indices, stored as an index array.

    ``mapping[x]`` is the image of ``x``.
    """

    __slots__ = ("mapping",)

    def __init__(self, mapping):
        arr = np.array(mapping, dtype=np.int64)
        arr.setflags(write=False)
        self.mapping = arr

    @classmethod
    def identity(cls, size: int) -> "BasisPermutation":
        return cls(np.arange(size, dtype=np.int64))

    def __len__(self):
        return self.mapping.shape[0]

    def __call__(self, x: int) -> int:
        return int(self.mapping[x])

    def is_bijection(self) -> bool:
        size = self.mapping.shape[0]
        if size == 0:
            return True
        if self.mapping.min() < 0 or self.mapping.max() >= size:
            return False
        return bool(np.all(np.bincount(self.mapping, minlength=size) == 1))

    def inverse(self) -> "BasisPermutation":
        inv = np.empty_like(self.mapping)
        inv[self.mapping] = np.arange(self.mapping.shape[0], dtype=np.int64)
        return BasisPermutation(inv)

    def then(self, other: "BasisPermutation") -> "BasisPermutation":
        """Apply ``self`` first, then ``other``."""
        return BasisPermutation(other.mapping[self.mapping])

    def __eq__(self, other):
        if not isinstance(other, BasisPermutation):
            return NotImplemented
        return np.array_equal(self.mapping, other.mapping)

    __hash__ = None


def _as_targets(targets: Optional[Iterable[int]], q: int) -> np.ndarray:
    if targets is None:
        return np.arange(q, dtype=np.int64)
    arr = np.array(sorted(set(int(t) for t in targets)), dtype=np.int64)
    if arr.size and (arr[0] < 0 or arr[-1] >= q):
        raise ValueError(f"target qubits {arr.tolist()} outside [0, {q})")
    return arr


def init_basis(q: int, x: BitLike) -> StateVector:
    if isinstance(x, BitString) and x.width != q:
        raise ValueError(f"basis label width {x.width} != qubit count {q}")
    amps = np.zeros(1 << q, dtype=np.complex128)
    amps[int(x)] = 1.0
    return StateVector(amps, q)


def hadamard_all(state: StateVector, targets: Optional[Iterable[int]] = None) -> StateVector:
    """Apply H to every target qubit (all qubits by default), in place.

    Butterflies run unnormalised; one ``2**(-k/2)`` scale follows.
    """
    tgt = _as_targets(targets, state.qubit_count)
    if tgt.size:
        kernels.fwht(state.amplitudes, tgt)
        state.amplitudes *= 2.0 ** (-tgt.size / 2)
    return state


def s_phase_all(state: StateVector, targets: Optional[Iterable[int]] = None) -> StateVector:
    """Multiply each amplitude by ``i**(set target bits of its index)``."""
    tgt = _as_targets(targets, state.qubit_count)
    mask = 0
    for t in tgt:
        mask |= 1 << int(t)
    if mask:
        kernels.s_phase(state.amplitudes, np.int64(mask))
    return state


def controlled_subspace_hadamard(state: StateVector, targets: Iterable[int],
                                 control: int, control_value: int = 1) -> StateVector:
    """H on ``targets`` inside the subspace where ``control`` reads ``control_value``."""
    q = state.qubit_count
    tgt = _as_targets(targets, q)
    if not 0 <= control < q:
        raise ValueError(f"control qubit {control} outside [0, {q})")
    if control in tgt:
        raise ValueError(f"control qubit {control} is also a target")
    if control_value not in (0, 1):
        raise ValueError("control_value must be 0 or 1")
    if not tgt.size:
        return state

    lo = 1 << control
    view = state.amplitudes.reshape(-1, 2, lo)[:, control_value, :]
    sub = np.ascontiguousarray(view).reshape(-1)
    # index bits above the control shift down by one in the extracted subspace
    sub_targets = np.where(tgt > control, tgt - 1, tgt).astype(np.int64)
    kernels.fwht(sub, sub_targets)
    sub *= 2.0 ** (-tgt.size / 2)
    view[...] = sub.reshape(view.shape)
    return state


def permute_basis(state: StateVector,
                  permutation: Union[BasisPermutation, Sequence[int], np.ndarray],
                  validate: Optional[bool] = None) -> StateVector:
    """Move amplitude of ``|x>`` to ``|permutation(x)>``, in place.

    Bijectivity is checked when ``validate`` is true; by default that follows
    ``__debug__`` so ``python -O`` skips it.
    """
    if not isinstance(permutation, BasisPermutation):
        permutation = BasisPermutation(permutation)
    if len(permutation) != len(state):
        raise ValueError(
            f"permutation size {len(permutation)} != state size {len(state)}")
    if validate is None:
        validate = __debug__
    if validate and not permutation.is_bijection():
        raise ValueError("permutation is not a bijection on basis indices")
    new = np.empty_like(state.amplitudes)
    new[permutation.mapping] = state.amplitudes
    state.amplitudes = new
    return state


def probabilities_marginal(state: StateVector, kept_qubits: Sequence[int]) -> np.ndarray:
    """Marginal distribution over ``kept_qubits``.

    Entry ``k`` of the result has ``kept_qubits[j]`` equal to bit ``j`` of ``k``.
    """
    kept = [int(t) for t in kept_qubits]
    q = state.qubit_count
    if len(set(kept)) != len(kept) or any(not 0 <= t < q for t in kept):
        raise ValueError(f"invalid kept qubits {kept} for {q} qubits")
    probs = np.abs(state.amplitudes) ** 2
    if kept == list(range(q)):
        return probs
    idx = np.arange(len(state), dtype=np.int64)
    key = np.zeros_like(idx)
    for j, t in enumerate(kept):
        key |= ((idx >> t) & 1) << j
    return np.bincount(key, weights=probs, minlength=1 << len(kept))
