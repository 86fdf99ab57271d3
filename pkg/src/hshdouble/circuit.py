"""End-to-end amplitude-doubling circuit for a Partition Problem instance.

Stages, in order: prepare ``|0>^n |enc(-S)> |1>``; H on x; add each selected
weight into sigma; flip c where sigma is zero; undo the additions; S on x;
H on x restricted to c = 1.

``run_full`` simulates every stage on all ``n + m + 1`` qubits. ``run_fast``
uses the fact that after the uncompute sigma is constant and c is a function
of x, so two length-``2**n`` branches suffice; the c = 1 branch is
transformed with an integer FWHT, so its amplitudes are exact multiples of
``2**-n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

import numpy as np

from . import kernels
from .bitmath import BitString, GaussianInt, hamming_weight
from .closedform import residual_amplitude_b
from .partition import (
    PartitionInstance,
    RegisterLayout,
    conditional_add_permutation,
    enumerate_solutions,
    initial_sigma_field,
    subset_sigmas,
    zero_flip_permutation,
)
from .statevector import (
    NORM_TOL,
    controlled_subspace_hadamard,
    hadamard_all,
    init_basis,
    permute_basis,
    probabilities_marginal,
    s_phase_all,
)

__all__ = [
    "MAX_FULL_QUBITS",
    "MAX_FAST_N",
    "RegisterTooLargeError",
    "SolutionDiagnostics",
    "CircuitResult",
    "run_full",
    "run_fast",
    "run",
    "predicted_solution_probability",
    "doubling_ratio_bound",
    "RatioRow",
    "doubling_ratio_sweep",
    "WEIGHT_RULES",
]

MAX_FULL_QUBITS = 22
MAX_FAST_N = 24


class RegisterTooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class SolutionDiagnostics:
    """Per-solution readout.

    ``branch0`` and ``branch1`` are normalised amplitudes of ``|y, enc(-S), c>``
    for c = 0 and c = 1. The exact forms carry different scales:
    ``branch0 = branch0_exact / sqrt(2**n)`` and
    ``branch1 = branch1_exact / 2**n``.
    """

    y: BitString
    branch0: complex
    branch1: complex
    probability: float
    doubling_ratio: float
    branch0_exact: Optional[GaussianInt]
    branch1_exact: Optional[GaussianInt]


@dataclass
class CircuitResult:
    instance: PartitionInstance
    mode: str
    probabilities: np.ndarray
    solutions: list[BitString]
    diagnostics: list[SolutionDiagnostics]
    sigma_marginal: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.instance.n

    def probability(self, x) -> float:
        return float(self.probabilities[int(x)])

    def diagnostic(self, y) -> SolutionDiagnostics:
        for d in self.diagnostics:
            if d.y.value == int(y):
                return d
        raise KeyError(f"{y} is not a solution state")


def _nearest_gaussian(value: complex, tol: float = 1e-6) -> Optional[GaussianInt]:
    re, im = round(value.real), round(value.imag)
    if abs(value.real - re) > tol or abs(value.imag - im) > tol:
        return None
    return GaussianInt(int(re), int(im))


def _check_probabilities(probs: np.ndarray) -> None:
    total = float(probs.sum())
    if abs(total - 1.0) > NORM_TOL:
        raise RuntimeError(f"probabilities sum to {total!r}, not 1")


def _diagnostics(n, solutions, probs, branch0, branch1, exact1=None):
    out = []
    scale0 = math.sqrt(2 ** n)
    for y in solutions:
        p = float(probs[y.value])
        b0 = complex(branch0[y.value])
        b1 = complex(branch1[y.value])
        out.append(SolutionDiagnostics(
            y=y,
            branch0=b0,
            branch1=b1,
            probability=p,
            doubling_ratio=p * 2 ** n,
            branch0_exact=_nearest_gaussian(b0 * scale0),
            branch1_exact=exact1[y.value] if exact1 is not None
            else _nearest_gaussian(b1 * 2 ** n),
        ))
    return out


def run_full(instance: PartitionInstance) -> CircuitResult:
    """Simulate every stage on the complete ``x, sigma, c`` register."""
    layout = RegisterLayout.for_instance(instance)
    if layout.total > MAX_FULL_QUBITS:
        raise RegisterTooLargeError(
            f"full mode needs {layout.total} qubits; limit is {MAX_FULL_QUBITS}")
    n, xq, cq = layout.n, layout.x_qubits, layout.control_qubit
    sigma0 = initial_sigma_field(instance, layout)

    state = init_basis(layout.total, layout.index(0, sigma0, 1))
    hadamard_all(state, xq)
    for e in range(n):
        permute_basis(state, conditional_add_permutation(instance, e, layout))
    permute_basis(state, zero_flip_permutation(layout))
    for e in reversed(range(n)):
        permute_basis(state, conditional_add_permutation(instance, e, layout).inverse())

    sigma_marginal = probabilities_marginal(state, layout.sigma_qubits)
    if abs(sigma_marginal[sigma0] - 1.0) > NORM_TOL:
        raise RuntimeError("uncompute left the sigma register entangled")

    s_phase_all(state, xq)
    controlled_subspace_hadamard(state, xq, control=cq, control_value=1)

    probs = probabilities_marginal(state, xq)
    _check_probabilities(probs)
    x = np.arange(1 << n, dtype=np.int64)
    branch0 = state.amplitudes[layout.index(x, sigma0, 0)]
    branch1 = state.amplitudes[layout.index(x, sigma0, 1)]
    solutions = enumerate_solutions(instance)
    return CircuitResult(instance, "full", probs, solutions,
                         _diagnostics(n, solutions, probs, branch0, branch1),
                         sigma_marginal=sigma_marginal)


_RE = np.array([1, 0, -1, 0], dtype=np.int64)
_IM = np.array([0, 1, 0, -1], dtype=np.int64)
_PHASE = np.array([1, 1j, -1, -1j], dtype=np.complex128)


def run_fast(instance: PartitionInstance) -> CircuitResult:
    """Two-branch simulation: c = 0 holds solutions, c = 1 everything else."""
    n = instance.n
    if n > MAX_FAST_N:
        raise RegisterTooLargeError(f"fast mode supports n <= {MAX_FAST_N}, got {n}")
    solution_mask = subset_sigmas(instance) == 0
    k = np.bitwise_count(np.arange(1 << n, dtype=np.int64)) & 3

    branch0 = np.where(solution_mask, _PHASE[k], 0) / math.sqrt(2 ** n)

    # unnormalised c = 1 branch: i**w(x) on non-solutions, exact in int64
    re = np.where(solution_mask, 0, _RE[k])
    im = np.where(solution_mask, 0, _IM[k])
    targets = np.arange(n, dtype=np.int64)
    kernels.fwht(re, targets)
    kernels.fwht(im, targets)
    branch1 = (re + 1j * im) / 2 ** n

    probs = np.abs(branch0) ** 2 + np.abs(branch1) ** 2
    _check_probabilities(probs)
    solutions = enumerate_solutions(instance)
    exact1 = {y.value: GaussianInt(int(re[y.value]), int(im[y.value])) for y in solutions}
    return CircuitResult(instance, "fast", probs, solutions,
                         _diagnostics(n, solutions, probs, branch0, branch1, exact1))


def run(instance: PartitionInstance, mode: str = "fast") -> CircuitResult:
    if mode == "fast":
        return run_fast(instance)
    if mode == "full":
        return run_full(instance)
    raise ValueError(f"unknown mode {mode!r}; expected 'fast' or 'full'")


def predicted_solution_probability(n: int, weight_y: int) -> Fraction:
    """Closed-form ``P(y)`` for a two-solution instance: ``(2**n + |b|**2) / 4**n``."""
    if not 0 <= weight_y <= n:
        raise ValueError(f"weight {weight_y} outside [0, {n}]")
    b = residual_amplitude_b(n, weight_y)
    return Fraction(2 ** n + b.norm(), 4 ** n)


def doubling_ratio_bound(n: int) -> Fraction:
    """Upper bound on ``|P(y) * 2**n - 2|``: ``(4 * 2**(n//2) + 4) / 2**n``."""
    return Fraction(4 * 2 ** (n // 2) + 4, 2 ** n)


@dataclass(frozen=True)
class RatioRow:
    n: int
    weight: int
    b_norm: int
    predicted: Fraction
    ratio: Fraction
    bound: Fraction

    @property
    def deviation(self) -> Fraction:
        return abs(self.ratio - 2)

    @property
    def within_bound(self) -> bool:
        return self.deviation <= self.bound


WEIGHT_RULES: dict[str, Callable[[int], int]] = {
    "half": lambda n: n // 2,
}


def doubling_ratio_sweep(n_range: Iterable[int],
                         weight_rule: Callable[[int], int]) -> list[RatioRow]:
    rows = []
    for n in n_range:
        w = weight_rule(n)
        if not 0 <= w <= n:
            raise ValueError(f"weight rule gave {w} for n={n}")
        p = predicted_solution_probability(n, w)
        rows.append(RatioRow(n, w, residual_amplitude_b(n, w).norm(), p,
                             p * 2 ** n, doubling_ratio_bound(n)))
    return rows
