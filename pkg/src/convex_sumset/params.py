"""Exact parameter model and the fixed-denominator integer representation.

Every quantity in the construction is a rational with denominator dividing
``D = 1000 n^3``.  Values are therefore stored as integer numerators at that
scale and all comparisons are plain integer comparisons.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

PAPER_THETA = Fraction(999, 1000)
PAPER_STRIDE = 4

WARN_NO_BLOCKS = "no_blocks"
WARN_NO_BLOCK_PAIR = "no_block_pair"
WARN_OVERLAP = "theta_below_overlap_threshold"


def parse_rational(value: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, a decimal string or an int into an exact Fraction.

    Binary floats are refused so nothing upstream can smuggle in rounding.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"expected an exact rational, got {type(value).__name__}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot interpret {value!r} as a rational")


@dataclass(frozen=True)
class Params:
    n: int
    theta: Fraction
    stride: int
    D: int
    alpha_scaled: int
    gamma_scaled: int
    eps_scaled: int
    warnings: tuple[str, ...] = field(default=())

    @property
    def k_min(self) -> int:
        return math.ceil(self.theta * self.n)

    def block_indices(self) -> list[int]:
        """Multiples of ``stride`` in ``[ceil(theta*n), n]``, increasing."""
        first = -(-self.k_min // self.stride) * self.stride
        return list(range(first, self.n + 1, self.stride))

    @property
    def feasible(self) -> bool:
        return not self.warnings

    def to_fraction(self, num: int) -> Fraction:
        return Fraction(num, self.D)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "theta": str(self.theta),
            "stride": self.stride,
            "D": self.D,
            "alpha_scaled": self.alpha_scaled,
            "gamma_scaled": self.gamma_scaled,
            "eps_scaled": self.eps_scaled,
        }


def make_params(n: int, theta: str | int | Fraction = PAPER_THETA,
                stride: int = PAPER_STRIDE) -> Params:
    """Build the exact parameter record for construction size ``n``.

    Infeasible configurations (no block index in range, fewer than two blocks,
    or ``theta <= stride/6`` where consecutive blocks stop overlapping) are
    flagged in ``warnings`` rather than rejected; the exact splice search has
    the final word.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    theta = parse_rational(theta)
    if not 0 < theta <= 1:
        raise ValueError(f"theta must lie in (0, 1], got {theta}")
    if isinstance(stride, bool) or not isinstance(stride, int) or stride < 1:
        raise ValueError(f"stride must be a positive integer, got {stride!r}")

    D = 1000 * n**3
    params = Params(
        n=n, theta=theta, stride=stride, D=D,
        alpha_scaled=1000 * n,
        gamma_scaled=1,
        eps_scaled=100 * n**3,
    )
    warnings = []
    blocks = params.block_indices()
    if not blocks:
        warnings.append(WARN_NO_BLOCKS)
    elif len(blocks) < 2:
        warnings.append(WARN_NO_BLOCK_PAIR)
    if theta <= Fraction(stride, 6):
        warnings.append(WARN_OVERLAP)
    return replace(params, warnings=tuple(warnings))


@functools.total_ordering
@dataclass(frozen=True, slots=True)
class ScaledInt:
    """The rational ``num / scale``; only values sharing a scale interact."""

    num: int
    scale: int

    def _check(self, other: ScaledInt) -> None:
        if not isinstance(other, ScaledInt):
            raise TypeError(f"cannot compare ScaledInt with {type(other).__name__}")
        if other.scale != self.scale:
            raise ValueError(f"scale mismatch: {self.scale} vs {other.scale}")

    def __lt__(self, other: ScaledInt) -> bool:
        self._check(other)
        return self.num < other.num

    def __add__(self, other: ScaledInt) -> ScaledInt:
        self._check(other)
        return ScaledInt(self.num + other.num, self.scale)

    def __sub__(self, other: ScaledInt) -> ScaledInt:
        self._check(other)
        return ScaledInt(self.num - other.num, self.scale)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.scale)


def cmp(a: ScaledInt, b: ScaledInt) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    a._check(b)
    return (a.num > b.num) - (a.num < b.num)
