"""Partition Problem instances and the reversible oracle used by the circuit.

Register layout (qubit indices, low to high)::

    x: 0 .. n-1          subset selector, x_e = 1 puts element e in the subset
    sigma: n .. n+m-1    m-bit two's-complement accumulator
    c: n+m               control qubit

The constant registers holding each ``s(e)`` never change, so they are not
simulated; the adders read the weights directly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from os import PathLike
from typing import Union

import numpy as np

from .bitmath import BitLike, BitString, twos_complement_encode
from .statevector import BasisPermutation

__all__ = [
    "RejectedInstanceError",
    "PartitionInstance",
    "RegisterLayout",
    "ENUMERATION_MAX_N",
    "half_sum",
    "sigma_of",
    "is_solution",
    "subset_sigmas",
    "enumerate_solutions",
    "conditional_add_permutation",
    "zero_flip_permutation",
    "initial_sigma_field",
]

ENUMERATION_MAX_N = 24


class RejectedInstanceError(ValueError):
    """Total weight is odd, so no equal split can exist."""


@dataclass(frozen=True)
class PartitionInstance:
    weights: tuple[int, ...]

    def __post_init__(self):
        weights = tuple(self.weights)
        if not weights:
            raise ValueError("instance needs at least one element")
        for w in weights:
            if isinstance(w, bool) or not isinstance(w, (int, np.integer)) or w < 1:
                raise ValueError(f"weights must be positive integers, got {w!r}")
        object.__setattr__(self, "weights", tuple(int(w) for w in weights))

    @property
    def n(self) -> int:
        return len(self.weights)

    @classmethod
    def from_dict(cls, data) -> "PartitionInstance":
        if not isinstance(data, dict) or "weights" not in data:
            raise ValueError('instance must be a JSON object with a "weights" list')
        if not isinstance(data["weights"], list):
            raise ValueError('"weights" must be a list')
        return cls(tuple(data["weights"]))

    @classmethod
    def from_json(cls, path: Union[str, PathLike]) -> "PartitionInstance":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def half_sum(instance: PartitionInstance) -> int:
    total = sum(instance.weights)
    if total % 2:
        raise RejectedInstanceError(
            f"instance rejected: half-sum not integer (total weight {total})")
    return total // 2


@dataclass(frozen=True)
class RegisterLayout:
    n: int
    m: int

    @classmethod
    def for_instance(cls, instance: PartitionInstance) -> "RegisterLayout":
        target = half_sum(instance)
        # ceil(log2 S) + 1 for S >= 1
        return cls(instance.n, (target - 1).bit_length() + 1)

    @property
    def total(self) -> int:
        return self.n + self.m + 1

    @property
    def x_qubits(self) -> list[int]:
        return list(range(self.n))

    @property
    def sigma_qubits(self) -> list[int]:
        return list(range(self.n, self.n + self.m))

    @property
    def control_qubit(self) -> int:
        return self.n + self.m

    def index(self, x: int, sigma_field: int, c: int) -> int:
        return x | (sigma_field << self.n) | (c << (self.n + self.m))

    def fields(self, index):
        """Split basis index/indices into ``(x, sigma_field, c)``."""
        x = index & ((1 << self.n) - 1)
        sigma = (index >> self.n) & ((1 << self.m) - 1)
        c = (index >> (self.n + self.m)) & 1
        return x, sigma, c


def _x_value(instance: PartitionInstance, x: BitLike) -> int:
    if isinstance(x, BitString) and x.width != instance.n:
        raise ValueError(f"bit string width {x.width} != n={instance.n}")
    v = int(x)
    if not 0 <= v < 1 << instance.n:
        raise ValueError(f"x={v} outside [0, 2**{instance.n})")
    return v


def sigma_of(instance: PartitionInstance, x: BitLike) -> int:
    """``-S + sum of the weights selected by x``."""
    v = _x_value(instance, x)
    selected = sum(w for e, w in enumerate(instance.weights) if (v >> e) & 1)
    return selected - half_sum(instance)


def is_solution(instance: PartitionInstance, x: BitLike) -> bool:
    return sigma_of(instance, x) == 0


def subset_sigmas(instance: PartitionInstance) -> np.ndarray:
    """``sigma_of`` for every ``x`` at once, as an int64 array of length ``2**n``."""
    if instance.n > ENUMERATION_MAX_N:
        raise ValueError(f"n={instance.n} exceeds enumeration limit {ENUMERATION_MAX_N}")
    sums = np.zeros(1, dtype=np.int64)
    for w in instance.weights:
        # element e doubles the table: bit e clear, then bit e set
        sums = np.concatenate([sums, sums + w])
    return sums - half_sum(instance)


def enumerate_solutions(instance: PartitionInstance) -> list[BitString]:
    """All solution states in ascending order. Closed under complement."""
    hits = np.flatnonzero(subset_sigmas(instance) == 0)
    return [BitString(int(x), instance.n) for x in hits]


def conditional_add_permutation(instance: PartitionInstance, e: int,
                                layout: RegisterLayout) -> BasisPermutation:
    """Add ``s(e)`` into sigma (mod ``2**m``) on basis states with ``x_e = 1``."""
    if not 0 <= e < instance.n:
        raise ValueError(f"element index {e} outside [0, {instance.n})")
    if layout.n != instance.n:
        raise ValueError("layout does not match instance")
    idx = np.arange(1 << layout.total, dtype=np.int64)
    x, sigma, c = layout.fields(idx)
    selected = (x >> e) & 1
    new_sigma = (sigma + selected * instance.weights[e]) & ((1 << layout.m) - 1)
    return BasisPermutation(layout.index(x, new_sigma, c))


def zero_flip_permutation(layout: RegisterLayout) -> BasisPermutation:
    """Flip c on exactly those basis states whose sigma field is all zeros."""
    idx = np.arange(1 << layout.total, dtype=np.int64)
    _, sigma, _ = layout.fields(idx)
    flip = np.where(sigma == 0, 1 << layout.control_qubit, 0)
    return BasisPermutation(idx ^ flip)


def initial_sigma_field(instance: PartitionInstance, layout: RegisterLayout) -> int:
    return twos_complement_encode(-half_sum(instance), layout.m).value
