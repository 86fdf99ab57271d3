"""Self-check suite: closed forms vs brute force vs the float simulator.

Each check returns a :class:`CheckResult` with the number of cases examined
and the first counterexample, if any. Functions are looked up through their
modules at call time so a patched implementation is what gets checked.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import closedform, statevector
from .bitmath import BitString, hamming_weight

__all__ = ["CheckResult", "EXHAUSTIVE_MAX_N", "HALF_RANGE_EXHAUSTIVE_MAX_N",
           "run_checks", "VERIFY_MAX_N"]

VERIFY_MAX_N = 16
EXHAUSTIVE_MAX_N = 12
HALF_RANGE_EXHAUSTIVE_MAX_N = 13
SAMPLES_PER_N = 256


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: int = 0
    counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, describe) -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = describe()


def _z_values(n: int, exhaustive_max: int) -> Iterator[int]:
    """All z when small; otherwise one z per weight plus a seeded random sample."""
    if n <= exhaustive_max:
        yield from range(1 << n)
        return
    for w in range(n + 1):
        yield (1 << w) - 1
    rng = random.Random(n)
    for _ in range(SAMPLES_PER_N):
        yield rng.randrange(1 << n)


def check_oracle_equivalence(max_n: int) -> tuple[CheckResult, CheckResult]:
    equiv = CheckResult("oracle_equivalence")
    by_weight = CheckResult("weight_dependence")
    for n in range(1, max_n + 1):
        first_seen = {}
        for z in _z_values(n, EXHAUSTIVE_MAX_N):
            w = hamming_weight(z)
            brute = closedform.brute_force_sum(n, BitString(z, n))
            closed = closedform.closed_form_sum(n, w)
            equiv.record(brute == closed, lambda: (
                f"n={n} z={z:0{n}b}: closed form {closed} != brute force {brute}"))
            ref = first_seen.setdefault(w, (z, brute))
            by_weight.record(ref[1] == brute, lambda: (
                f"n={n}: z={ref[0]:0{n}b} gives {ref[1]} but z={z:0{n}b} gives {brute}"))
    return equiv, by_weight


def check_magnitude(max_n: int) -> CheckResult:
    res = CheckResult("magnitude")
    for n in range(1, max_n + 1):
        for w in range(n + 1):
            norm = closedform.closed_form_sum(n, w).norm()
            res.record(norm == 2 ** n, lambda: f"n={n} w={w}: |a|^2={norm} != {2 ** n}")
    return res


def check_half_range(max_n: int) -> CheckResult:
    res = CheckResult("half_range_identity")
    for n in range(1, max_n + 1, 2):
        for z in _z_values(n, HALF_RANGE_EXHAUSTIVE_MAX_N):
            lhs = closedform.half_range_upper_sum(n, BitString(z, n))
            rhs = closedform.half_range_recursion(n, BitString(z, n))
            res.record(lhs == rhs, lambda: f"n={n} z={z:0{n}b}: upper half {lhs} != {rhs}")
    return res


def check_residual(max_n: int) -> tuple[CheckResult, CheckResult]:
    consistency = CheckResult("residual_consistency")
    split = CheckResult("residual_case_split")
    for n in range(1, max_n + 1):
        for y in _z_values(n, EXHAUSTIVE_MAX_N):
            w = hamming_weight(y)
            try:
                b = closedform.residual_amplitude_b(n, w)
            except ArithmeticError as exc:
                consistency.record(False, lambda: str(exc))
                continue
            direct = closedform.direct_residual_sum(n, BitString(y, n))
            consistency.record(b == direct, lambda: (
                f"n={n} y={y:0{n}b}: b={b} != direct sum {direct}"))
        for w in range(n + 1):
            pair = closedform.solution_pair_term(n, w)
            corr = closedform.residual_correction(n, w)
            split.record(pair == corr, lambda: (
                f"n={n} w={w}: pair term {pair} != case-split form {corr}"))
    return consistency, split


def check_hsh_simulation(max_n: int, tol: float = statevector.AMPLITUDE_TOL) -> CheckResult:
    res = CheckResult("hsh_simulation")
    for n in range(1, max_n + 1):
        state = statevector.init_basis(n, 0)
        statevector.hadamard_all(state)
        statevector.s_phase_all(state)
        statevector.hadamard_all(state)
        by_weight = np.array([complex(closedform.closed_form_sum(n, w)) / 2 ** n
                              for w in range(n + 1)])
        expected = by_weight[np.bitwise_count(np.arange(1 << n, dtype=np.int64))]
        err = float(np.max(np.abs(state.amplitudes - expected)))
        norm_err = abs(state.norm_squared() - 1.0)
        res.record(err <= tol and norm_err <= statevector.NORM_TOL, lambda: (
            f"n={n}: max amplitude error {err:.3e}, norm error {norm_err:.3e}"))
    return res


def run_checks(max_n: int) -> list[CheckResult]:
    if not 1 <= max_n <= VERIFY_MAX_N:
        raise ValueError(f"max_n must be in [1, {VERIFY_MAX_N}], got {max_n}")
    return [
        *check_oracle_equivalence(max_n),
        check_magnitude(max_n),
        check_half_range(max_n),
        *check_residual(max_n),
        check_hsh_simulation(max_n),
    ]
