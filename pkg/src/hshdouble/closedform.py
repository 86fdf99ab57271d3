"""Exact amplitudes of H^n S^n H^n |0...0>, in Gaussian integers.

Unnormalised amplitude of ``|z>`` is

    a_z = sum_x i**w(x) * (-1)**(x.z)

and the physical amplitude is ``a_z / 2**n``. ``a_z`` depends on ``z`` only
through its Hamming weight, which is why :func:`closed_form_sum` takes a
weight rather than a bit string.

Two independent routes are kept apart on purpose: the ``brute_force_*``
functions add the terms one by one (via the residue-counting kernel), the
``closed_form_*`` functions never touch individual terms.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .bitmath import BitLike, BitString, GaussianInt, hamming_weight, i_pow, low_bits

__all__ = [
    "BRUTE_FORCE_MAX_N",
    "UnnormalizedAmplitude",
    "s_phase_exponent",
    "brute_force_sum",
    "direct_residual_sum",
    "closed_form_sum",
    "half_range_upper_sum",
    "half_range_recursion",
    "solution_pair_term",
    "residual_correction",
    "residual_amplitude_b",
    "table_row",
    "table",
]

BRUTE_FORCE_MAX_N = 24


@dataclass(frozen=True)
class UnnormalizedAmplitude:
    value: GaussianInt
    n: int

    @property
    def normalized(self) -> complex:
        return complex(self.value) / 2 ** self.n

    @property
    def probability(self) -> float:
        return self.value.norm() / 4 ** self.n


def _width_of(z: BitLike, n: int) -> int:
    if isinstance(z, BitString) and z.width != n:
        raise ValueError(f"bit string width {z.width} != n={n}")
    v = int(z)
    if not 0 <= v < 1 << n:
        raise ValueError(f"z={v} outside [0, 2**{n})")
    return v


def _sum_from_counts(counts) -> GaussianInt:
    # counts[r] = number of terms equal to i**r
    c0, c1, c2, c3 = (int(c) for c in counts)
    return GaussianInt(c0 - c2, c1 - c3)


def _term_sum(z: int, start: int, stop: int, skip=(-1, -1)) -> GaussianInt:
    return _sum_from_counts(kernels.residue_counts(z, start, stop, skip[0], skip[1]))


def s_phase_exponent(x: BitLike) -> int:
    """Exponent ``k`` such that S on every qubit maps ``|x>`` to ``i**k |x>``."""
    return hamming_weight(x)


def _check_brute_n(n: int) -> None:
    if not 1 <= n <= BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force supports 1 <= n <= {BRUTE_FORCE_MAX_N}, got {n}")


def brute_force_sum(n: int, z: BitLike) -> GaussianInt:
    """``sum_x i**w(x) (-1)**(x.z)`` over all ``2**n`` terms."""
    _check_brute_n(n)
    zv = _width_of(z, n)
    return _term_sum(zv, 0, 1 << n)


def direct_residual_sum(n: int, y: BitLike) -> GaussianInt:
    """Same sum as :func:`brute_force_sum` at ``z=y`` but skipping ``x in {y, ~y}``."""
    _check_brute_n(n)
    yv = _width_of(y, n)
    return _term_sum(yv, 0, 1 << n, (yv, yv ^ ((1 << n) - 1)))


def closed_form_sum(n: int, weight: int) -> GaussianInt:
    """``a_z`` for any ``z`` of Hamming weight ``weight``.

    n = 2m:    (-1)**w * i**(m+w) * 2**m
    n = 2m+1:  (-1)**w * i**(m+w) * 2**m * (1+i)
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= weight <= n:
        raise ValueError(f"weight {weight} outside [0, {n}]")
    m = n // 2
    sign = -1 if weight % 2 else 1
    value = i_pow(m + weight) * (sign * 2 ** m)
    if n % 2:
        value = value * GaussianInt(1, 1)
    return value


def _check_odd(n_odd: int) -> int:
    if n_odd < 1 or n_odd % 2 == 0 or n_odd > BRUTE_FORCE_MAX_N:
        raise ValueError(f"expected odd 1 <= n <= {BRUTE_FORCE_MAX_N}, got {n_odd}")
    return n_odd // 2


def half_range_upper_sum(n_odd: int, z: BitLike) -> GaussianInt:
    """Brute-force sum over the upper half ``x in [2**(n-1), 2**n)``."""
    m = _check_odd(n_odd)
    zv = _width_of(z, n_odd)
    return _term_sum(zv, 1 << (2 * m), 1 << (2 * m + 1))


def half_range_recursion(n_odd: int, z: BitLike) -> GaussianInt:
    """``i * (-1)**z_top`` times the brute-force sum over the lower ``n-1`` bits."""
    m = _check_odd(n_odd)
    zb = BitString(_width_of(z, n_odd), n_odd)
    lower = low_bits(zb, 1)
    half = _term_sum(lower.value, 0, 1 << (2 * m))
    sign = -1 if zb.bit(2 * m) else 1
    return half.times_i() * sign


def solution_pair_term(n: int, weight_y: int) -> GaussianInt:
    """Contribution of ``x in {y, ~y}`` to the full sum at ``z = y``.

    ``y.y = w(y)`` and ``~y.y = 0``, so this is ``i**w (-1)**w + i**(n-w)``.
    """
    if not 0 <= weight_y <= n:
        raise ValueError(f"weight {weight_y} outside [0, {n}]")
    sign = -1 if weight_y % 2 else 1
    return i_pow(weight_y) * sign + i_pow(n - weight_y)


def residual_correction(n: int, weight_y: int) -> GaussianInt:
    """Parity case split of :func:`solution_pair_term`: ``+-i**w (1 + i**n)``."""
    if not 0 <= weight_y <= n:
        raise ValueError(f"weight {weight_y} outside [0, {n}]")
    value = i_pow(weight_y) * (1 + i_pow(n))
    return value if weight_y % 2 == 0 else -value


def residual_amplitude_b(n: int, weight_y: int) -> GaussianInt:
    """Unnormalised amplitude that the c=1 branch leaves on a solution ``|y>``.

    Computed as full sum minus the two solution terms, then cross-checked
    against the parity case-split form; a mismatch raises ``ArithmeticError``.
    """
    full = closed_form_sum(n, weight_y)
    b = full - solution_pair_term(n, weight_y)
    split = full - residual_correction(n, weight_y)
    if b != split:
        raise ArithmeticError(
            f"residual mismatch at n={n}, w={weight_y}: {b} vs {split}")
    return b


def table_row(n: int, z: BitLike) -> UnnormalizedAmplitude:
    _width_of(z, n)
    return UnnormalizedAmplitude(closed_form_sum(n, hamming_weight(z)), n)


def table(n: int) -> list[tuple[BitString, UnnormalizedAmplitude]]:
    """One ``(|z>, a_z)`` row per basis state, ascending in ``z``."""
    by_weight = [closed_form_sum(n, w) for w in range(n + 1)]
    return [(BitString(z, n), UnnormalizedAmplitude(by_weight[hamming_weight(z)], n))
            for z in range(1 << n)]
