"""Binary fixed-point reals backed by Python ints."""
from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from typing import Union

Number = Union["BigFixed", int, Fraction]


def _round_shift(x: int, shift: int) -> int:
    """x / 2**shift rounded to nearest (ties away from zero)."""
    if shift <= 0:
        return x << -shift
    half = 1 << (shift - 1)
    return (x + half) >> shift if x >= 0 else -((-x + half) >> shift)


class BigFixed:
    """The real number ``mantissa / 2**frac_bits``.

    Binary operations require both operands to share ``frac_bits``; mixing
    precisions is almost always a bug in the error accounting, so it raises.
    """

    __slots__ = ("mantissa", "frac_bits")

    def __init__(self, mantissa: int, frac_bits: int):
        self.mantissa = int(mantissa)
        self.frac_bits = int(frac_bits)

    @classmethod
    def from_int(cls, n: int, frac_bits: int) -> "BigFixed":
        return cls(n << frac_bits, frac_bits)

    @classmethod
    def from_fraction(cls, q: Fraction, frac_bits: int) -> "BigFixed":
        q = Fraction(q)
        num = q.numerator << frac_bits
        # round half away from zero
        quo, rem = divmod(abs(num), q.denominator)
        if 2 * rem >= q.denominator:
            quo += 1
        return cls(quo if num >= 0 else -quo, frac_bits)

    @classmethod
    def from_string(cls, text: str, frac_bits: int) -> "BigFixed":
        return cls.from_fraction(Fraction(Decimal(text)), frac_bits)

    @classmethod
    def ulp(cls, frac_bits: int, count: int = 1) -> "BigFixed":
        return cls(count, frac_bits)

    def rescale(self, frac_bits: int) -> "BigFixed":
        return BigFixed(_round_shift(self.mantissa, self.frac_bits - frac_bits), frac_bits)

    def _coerce(self, other: Number) -> "BigFixed":
        if isinstance(other, BigFixed):
            if other.frac_bits != self.frac_bits:
                raise ValueError(f"precision mismatch: {self.frac_bits} vs {other.frac_bits} bits")
            return other
        if isinstance(other, int):
            return BigFixed.from_int(other, self.frac_bits)
        if isinstance(other, Fraction):
            return BigFixed.from_fraction(other, self.frac_bits)
        raise TypeError(f"cannot combine BigFixed with {type(other).__name__}")

    def __add__(self, other: Number) -> "BigFixed":
        return BigFixed(self.mantissa + self._coerce(other).mantissa, self.frac_bits)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "BigFixed":
        return BigFixed(self.mantissa - self._coerce(other).mantissa, self.frac_bits)

    def __rsub__(self, other: Number) -> "BigFixed":
        return self._coerce(other) - self

    def __neg__(self) -> "BigFixed":
        return BigFixed(-self.mantissa, self.frac_bits)

    def __abs__(self) -> "BigFixed":
        return BigFixed(abs(self.mantissa), self.frac_bits)

    def __mul__(self, other: Number) -> "BigFixed":
        if isinstance(other, int):
            return BigFixed(self.mantissa * other, self.frac_bits)
        other = self._coerce(other)
        return BigFixed(_round_shift(self.mantissa * other.mantissa, self.frac_bits), self.frac_bits)

    __rmul__ = __mul__

    def __truediv__(self, n: int) -> "BigFixed":
        if not isinstance(n, int):
            raise TypeError("BigFixed only divides by integers")
        if n == 0:
            raise ZeroDivisionError("BigFixed division by zero")
        q = Fraction(self.mantissa, n)
        return BigFixed(round(q), self.frac_bits)

    def _cmp_key(self, other: Number) -> tuple[int, int]:
        return self.mantissa, self._coerce(other).mantissa

    def __eq__(self, other) -> bool:
        try:
            a, b = self._cmp_key(other)
        except (TypeError, ValueError):
            return NotImplemented
        return a == b

    def __lt__(self, other: Number) -> bool:
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other: Number) -> bool:
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other: Number) -> bool:
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other: Number) -> bool:
        a, b = self._cmp_key(other)
        return a >= b

    def __hash__(self) -> int:
        return hash((self.mantissa, self.frac_bits))

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 1 << self.frac_bits)

    def __float__(self) -> float:
        return self.mantissa / (1 << self.frac_bits) if self.frac_bits < 1000 else float(self.to_fraction())

    def decimal_digits(self) -> int:
        """Decimal digits that are meaningful at this binary precision."""
        return max(1, int(self.frac_bits * 0.30103))

    def to_decimal(self, digits: int | None = None) -> str:
        """Decimal string rounded to ``digits`` places after the point."""
        if digits is None:
            digits = self.decimal_digits()
        scaled = _round_shift(self.mantissa * 10**digits, self.frac_bits)
        sign = "-" if scaled < 0 else ""
        whole, frac = divmod(abs(scaled), 10**digits)
        if digits == 0:
            return f"{sign}{whole}"
        return f"{sign}{whole}.{frac:0{digits}d}"

    def to_sci(self, digits: int = 6) -> str:
        """Short scientific notation, handy for tiny differences."""
        if self.mantissa == 0:
            return "0"
        return f"{Decimal(self.mantissa) / (Decimal(2) ** self.frac_bits):.{digits}e}"

    def __str__(self) -> str:
        return self.to_decimal()

    def __repr__(self) -> str:
        return f"BigFixed({self.to_decimal(30)}..., frac_bits={self.frac_bits})"
