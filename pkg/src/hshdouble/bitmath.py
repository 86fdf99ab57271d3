"""Bit-level primitives and exact Gaussian-integer arithmetic.

Qubit ``j`` is bit ``j`` of a basis index; bit 0 is the least significant.

Integers are Python ints, so nothing here overflows. The numeric kernels
elsewhere use int64, which is ample for the supported sizes (n <= 30 qubits,
amplitude magnitudes up to 2**15 before normalisation).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

__all__ = [
    "BitString",
    "GaussianInt",
    "hamming_weight",
    "dot_mod2",
    "low_bits",
    "i_pow",
    "twos_complement_encode",
    "twos_complement_decode",
]


@dataclass(frozen=True)
class BitString:
    """A basis-state index together with its register width."""

    value: int
    width: int

    def __post_init__(self):
        if self.width < 0:
            raise ValueError(f"width must be non-negative, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(
                f"value {self.value} does not fit in {self.width} bits")

    def bit(self, j: int) -> int:
        if not 0 <= j < self.width:
            raise IndexError(f"bit {j} out of range for width {self.width}")
        return (self.value >> j) & 1

    def complement(self) -> "BitString":
        return BitString(self.value ^ ((1 << self.width) - 1), self.width)

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b") if self.width else ""


BitLike = Union[BitString, int]


@dataclass(frozen=True)
class GaussianInt:
    """Exact complex number ``re + im*i`` with integer parts."""

    re: int = 0
    im: int = 0

    @classmethod
    def coerce(cls, other) -> "GaussianInt":
        if isinstance(other, GaussianInt):
            return other
        if isinstance(other, int):
            return cls(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = GaussianInt.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __sub__(self, other):
        other = GaussianInt.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = GaussianInt.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianInt(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def times_i(self) -> "GaussianInt":
        return GaussianInt(-self.im, self.re)

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        """Squared magnitude ``re**2 + im**2`` (exact)."""
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __eq__(self, other):
        other = GaussianInt.coerce(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self) -> str:
        # Table style: "-2+2i", "4i", "-4", "1-i"
        if self.im == 0:
            return str(self.re)
        if abs(self.im) == 1:
            imag = "i" if self.im > 0 else "-i"
        else:
            imag = f"{self.im}i"
        if self.re == 0:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{self.re}{sign}{imag}"

    @classmethod
    def parse(cls, text: str) -> "GaussianInt":
        """Inverse of ``str``; accepts forms like ``-2+2i``, ``4i``, ``-i``, ``3``."""
        s = text.strip().replace("−", "-").replace(" ", "")
        if not s:
            raise ValueError("empty Gaussian integer literal")
        if not s.endswith("i"):
            return cls(int(s), 0)
        body = s[:-1]
        # split at the last sign that is not the leading one
        cut = max(body.rfind("+", 1), body.rfind("-", 1))
        if cut == -1:
            re_part, im_part = "", body
        else:
            re_part, im_part = body[:cut], body[cut:]
        if im_part in ("", "+"):
            im = 1
        elif im_part == "-":
            im = -1
        else:
            im = int(im_part)
        return cls(int(re_part) if re_part else 0, im)


_I_POWERS = (GaussianInt(1, 0), GaussianInt(0, 1),
             GaussianInt(-1, 0), GaussianInt(0, -1))


def i_pow(k: int) -> GaussianInt:
    """``i**k`` for any signed integer ``k``."""
    return _I_POWERS[k % 4]


def hamming_weight(x: BitLike) -> int:
    return int(x).bit_count()


def _check_widths(z: BitLike, x: BitLike) -> None:
    if isinstance(z, BitString) and isinstance(x, BitString) and z.width != x.width:
        raise ValueError(f"width mismatch: {z.width} != {x.width}")


def dot_mod2(z: BitLike, x: BitLike) -> int:
    """Parity of the bitwise AND, i.e. ``sum_j z_j x_j mod 2``."""
    _check_widths(z, x)
    return hamming_weight(int(z) & int(x)) & 1


def low_bits(z: BitString, k: int) -> BitString:
    """Drop the ``k`` most significant bits of ``z``."""
    if not 0 <= k <= z.width:
        raise ValueError(f"k={k} out of range for width {z.width}")
    width = z.width - k
    return BitString(z.value & ((1 << width) - 1), width)


def twos_complement_encode(v: int, m: int) -> BitString:
    """``v mod 2**m`` as an m-bit pattern. Never raises on range; wraps."""
    if m < 1:
        raise ValueError(f"bit width must be >= 1, got {m}")
    return BitString(v % (1 << m), m)


def twos_complement_decode(pattern: BitLike, m: int) -> int:
    v = int(pattern)
    return v - (1 << m) if v >= (1 << (m - 1)) else v
