"""Mixed radix bases: weights, digit extraction, and representation matrices.

A base is a finite sequence of radices, each at least 2.  A number written
in a base of length k always has k+1 digits (least significant first); the
most significant digit is unbounded.  The empty base is the unary base,
where every number is a single digit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Base = tuple[int, ...]
DigitVector = tuple[int, ...]

# Values are arbitrary-width in contract but kept 64-bit safe in practice:
# every weight and product used on a non-redundant base is bounded by max(S).
MAX_ELEMENT = 1 << 62


def validate_base(radices: Sequence[int]) -> Base:
    base = tuple(int(r) for r in radices)
    for r in base:
        if r < 2:
            raise ValueError(f"invalid radix {r}: every radix must be at least 2")
    return base


def product(base: Sequence[int]) -> int:
    out = 1
    for r in base:
        out *= r
    return out


def weights(base: Sequence[int]) -> tuple[int, ...]:
    """Positional weights: w[0] = 1 and w[i+1] = w[i] * base[i]."""
    out = [1]
    for r in base:
        out.append(out[-1] * r)
    return tuple(out)


def digits_of(value: int, base: Sequence[int]) -> DigitVector:
    """Digits of ``value`` in ``base``, least significant first.

    Always returns len(base) + 1 digits; value 0 yields the all-zero vector.
    """
    if value < 0:
        raise ValueError("cannot take digits of a negative value")
    digits = []
    rest = value
    for r in base:
        rest, d = divmod(rest, r)
        digits.append(d)
    digits.append(rest)
    return tuple(digits)


def value_of(digits: Sequence[int], base: Sequence[int]) -> int:
    """Inverse of digits_of: the weighted sum of a digit vector."""
    if len(digits) != len(base) + 1:
        raise ValueError(
            f"digit vector of length {len(digits)} does not fit a base of length {len(base)}"
        )
    total = 0
    w = 1
    for i, d in enumerate(digits):
        total += d * w
        if i < len(base):
            w *= base[i]
    return total


@dataclass(frozen=True)
class Multiset:
    """Sorted multiset of positive integers, with the cached views the cost
    functions need: the maximum, and a (value, multiplicity) run view so a
    base extension can be re-costed in time proportional to the number of
    distinct values."""

    elements: tuple[int, ...]

    @staticmethod
    def of(values: Iterable[int]) -> "Multiset":
        elems = tuple(sorted(int(v) for v in values))
        if not elems:
            raise ValueError("multiset must be non-empty")
        if elems[0] < 1:
            raise ValueError(f"multiset elements must be positive, got {elems[0]}")
        if elems[-1] > MAX_ELEMENT:
            raise ValueError(f"element {elems[-1]} exceeds the supported bound 2**62")
        return Multiset(elems)

    @property
    def max(self) -> int:
        return self.elements[-1]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def counts(self) -> tuple[tuple[int, int], ...]:
        """Distinct values with multiplicities, ascending."""
        runs: list[tuple[int, int]] = []
        for v in self.elements:
            if runs and runs[-1][0] == v:
                runs[-1] = (v, runs[-1][1] + 1)
            else:
                runs.append((v, 1))
        return tuple(runs)

    @property
    def distinct_count(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class DigitMatrix:
    """Row i holds the digit vector of the i-th multiset element."""

    rows: tuple[DigitVector, ...]
    base: Base

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def msd_column(self) -> tuple[int, ...]:
        return self.column(len(self.base))


def digit_matrix(s: Multiset, base: Sequence[int]) -> DigitMatrix:
    base = tuple(base)
    return DigitMatrix(tuple(digits_of(v, base) for v in s.elements), base)


def is_redundant(s: Multiset, base: Sequence[int]) -> bool:
    """A base is redundant for S when its product exceeds max(S), which is
    exactly when the most significant digit column is all zeros."""
    return product(base) > s.max
