"""Exact fixed-point arithmetic for weights and scores.

Every weight and every computed score is an integer count of millionths
(six fractional digits). Sums and products are exact; a product whose
exact value does not land on the millionths grid raises PrecisionError
instead of rounding, because rounding is reserved for normalization.
Python integers are unbounded, so overflow cannot occur.
"""

from __future__ import annotations

from dataclasses import dataclass

SCALE = 10**6
FRACTION_DIGITS = 6


class WeightError(ValueError):
    """Malformed or out-of-range weight value."""


class PrecisionError(WeightError):
    """Exact result does not fit the millionths grid."""


def parse_millionths(text: str) -> int:
    """Parse a decimal string (optionally signed) into scaled millionths."""
    s = text.strip()
    if not s:
        raise WeightError("empty decimal string")
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    whole, dot, frac = s.partition(".")
    if not whole and not frac:
        raise WeightError(f"not a decimal number: {text!r}")
    if dot and not frac:
        raise WeightError(f"trailing decimal point: {text!r}")
    whole = whole or "0"
    ascii_digits = set("0123456789")
    if not (set(whole) <= ascii_digits and set(frac) <= ascii_digits):
        raise WeightError(f"not a decimal number: {text!r}")
    if len(frac) > FRACTION_DIGITS:
        raise WeightError(
            f"{text!r} has more than {FRACTION_DIGITS} fractional digits"
        )
    frac = frac.ljust(FRACTION_DIGITS, "0")
    return sign * (int(whole) * SCALE + int(frac))


def format_millionths(scaled: int) -> str:
    """Render scaled millionths as a decimal string, trailing zeros trimmed."""
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), SCALE)
    if frac == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:06d}".rstrip("0")


def div_round_half_up(numerator: int, denominator: int) -> int:
    """Integer division of nonnegative operands, rounding half away from zero up."""
    if denominator <= 0:
        raise WeightError("denominator must be positive")
    if numerator < 0:
        raise WeightError("numerator must be nonnegative")
    quotient, remainder = divmod(numerator, denominator)
    if remainder * 2 >= denominator:
        quotient += 1
    return quotient


@dataclass(frozen=True, order=True)
class Weight:
    """Nonnegative exact fixed-point value in millionths."""

    scaled: int

    def __post_init__(self) -> None:
        if not isinstance(self.scaled, int):
            raise WeightError(f"scaled count must be int, got {type(self.scaled).__name__}")
        if self.scaled < 0:
            raise WeightError(f"weight must be nonnegative, got {format_millionths(self.scaled)}")

    @classmethod
    def parse(cls, text: str) -> "Weight":
        scaled = parse_millionths(text)
        if scaled < 0:
            raise WeightError(f"weight must be nonnegative: {text!r}")
        return cls(scaled)

    @classmethod
    def from_int(cls, value: int) -> "Weight":
        return cls(value * SCALE)

    def __add__(self, other: "Weight") -> "Weight":
        if not isinstance(other, Weight):
            return NotImplemented
        return Weight(self.scaled + other.scaled)

    def __mul__(self, other: "Weight") -> "Weight":
        if not isinstance(other, Weight):
            return NotImplemented
        product, remainder = divmod(self.scaled * other.scaled, SCALE)
        if remainder:
            raise PrecisionError(
                f"product {self} * {other} is not representable in "
                f"{FRACTION_DIGITS} fractional digits"
            )
        return Weight(product)

    def __str__(self) -> str:
        return format_millionths(self.scaled)


ZERO = Weight(0)
ONE = Weight(SCALE)
