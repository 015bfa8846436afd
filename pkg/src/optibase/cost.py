"""Cost functions over (multiset, base) pairs, and the pruning machinery.

Three measures of how expensive a base makes the sorter construction:

* ``sum_digits``  - total number of digits of the multiset in the base,
  i.e. the number of inputs fed to the sorting networks.
* ``sum_carry``   - digits plus the carry bits that ripple between digit
  positions when the columns are summed.
* ``num_comp``    - total comparators of the sorting networks sized by the
  per-position input counts.

Each cost comes with a partial cost (the part every extension of the base
must pay) and an admissible heuristic, whose sum ``cost_alpha`` never
overestimates the cost of any extension.  All values are integers; no
floating point is used anywhere.
"""

from __future__ import annotations

import enum
from bisect import bisect_left
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .mixedradix import Multiset, digits_of, product

_SMALL_NETWORK_SIZES = (0, 0, 1, 3, 5, 9, 12, 16, 19)


class CostKind(enum.Enum):
    SUM_DIGITS = "digits"
    SUM_CARRY = "carry"
    NUM_COMP = "comp"


def comparator_count(n: int) -> int:
    """Comparators in an n-input sorting network.

    Sizes of the known optimal networks up to 8 inputs; the odd-even
    mergesort formula n*ceil(log2 n)*(ceil(log2 n)-1)/4 + n - 1 beyond
    (evaluated in integers, rounding the rare fractional case down).
    """
    if n < 0:
        raise ValueError("network size cannot be negative")
    if n <= 8:
        return _SMALL_NETWORK_SIZES[n]
    levels = (n - 1).bit_length()
    return n * levels * (levels - 1) // 4 + n - 1


@dataclass(frozen=True)
class CostBreakdown:
    """Per-position column sums and carries for a digit matrix.

    carries[0] = 0 and carries[j+1] = (column_sums[j] + carries[j]) div
    base[j]; no carry is taken out of the most significant position.
    """

    column_sums: tuple[int, ...]
    carries: tuple[int, ...]

    def inputs(self, j: int) -> int:
        """Number of inputs of the sorting network at position j."""
        return self.column_sums[j] + self.carries[j]

    def network_sizes(self) -> tuple[int, ...]:
        return tuple(s + c for s, c in zip(self.column_sums, self.carries))


def breakdown(s: Multiset, base: Sequence[int]) -> CostBreakdown:
    base = tuple(base)
    k = len(base)
    sums = [0] * (k + 1)
    for value, mult in s.counts:
        for j, d in enumerate(digits_of(value, base)):
            sums[j] += d * mult
    carries = [0] * (k + 1)
    for j in range(k):
        carries[j + 1] = (sums[j] + carries[j]) // base[j]
    return CostBreakdown(tuple(sums), tuple(carries))


def sum_digits(s: Multiset, base: Sequence[int]) -> int:
    return sum(breakdown(s, base).column_sums)


def sum_carry(s: Multiset, base: Sequence[int]) -> int:
    b = breakdown(s, base)
    return sum(b.column_sums) + sum(b.carries)


def num_comp(s: Multiset, base: Sequence[int]) -> int:
    b = breakdown(s, base)
    return sum(comparator_count(b.inputs(j)) for j in range(len(b.column_sums)))


def cost_of(kind: CostKind, s: Multiset, base: Sequence[int]) -> int:
    if kind is CostKind.SUM_DIGITS:
        return sum_digits(s, base)
    if kind is CostKind.SUM_CARRY:
        return sum_carry(s, base)
    return num_comp(s, base)


def partial_cost(kind: CostKind, s: Multiset, base: Sequence[int]) -> int:
    """The share of the cost that any extension of ``base`` keeps paying.

    For the digit-counting costs this is the cost minus the most
    significant digit column; for the comparator cost it is the cost minus
    the last network.
    """
    b = breakdown(s, base)
    k = len(b.column_sums) - 1
    if kind is CostKind.NUM_COMP:
        total = sum(comparator_count(b.inputs(j)) for j in range(k + 1))
        return total - comparator_count(b.inputs(k))
    total = sum(b.column_sums)
    if kind is CostKind.SUM_CARRY:
        total += sum(b.carries)
    return total - b.column_sums[k]


def heuristic(kind: CostKind, s: Multiset, base: Sequence[int]) -> int:
    """Admissible lower bound on the extra cost any extension must add:
    the number of elements (with multiplicity) at least the base product.
    Zero for the comparator cost."""
    if kind is CostKind.NUM_COMP:
        return 0
    prod = product(base)
    return sum(mult for value, mult in s.counts if value >= prod)


def cost_alpha(kind: CostKind, s: Multiset, base: Sequence[int]) -> int:
    return partial_cost(kind, s, base) + heuristic(kind, s, base)


def _bit_length(a: np.ndarray) -> np.ndarray:
    """Vectorized int bit length, integer arithmetic only."""
    a = a.copy()
    out = np.zeros_like(a)
    for shift in (32, 16, 8, 4, 2, 1):
        big = a >= (1 << shift)
        out[big] += shift
        a[big] >>= shift
    out[a > 0] += 1
    return out


_SMALL_SIZES_ARR = np.array(_SMALL_NETWORK_SIZES, dtype=np.int64)


def _comparator_count_vec(n: np.ndarray) -> np.ndarray:
    small = n <= 8
    out = np.empty_like(n)
    out[small] = _SMALL_SIZES_ARR[n[small]]
    big = n[~small]
    levels = _bit_length(big - 1)
    out[~small] = big * levels * (levels - 1) // 4 + big - 1
    return out


class BaseEval:
    """Incremental cost evaluation of one base over a fixed multiset.

    Extending a base only changes the former most significant digit
    column, so a child is re-costed from the parent's cached state in time
    proportional to the number of distinct values.  ``child_metrics``
    evaluates a whole batch of candidate extensions at once.
    """

    __slots__ = (
        "multiset", "values", "mults", "suffix_counts", "base", "prod",
        "cur", "prefix_digits", "prefix_carries", "prefix_comp",
        "msd_sum", "carry_in",
    )

    def __init__(self, multiset, values, mults, suffix_counts, base, prod,
                 cur, prefix_digits, prefix_carries, prefix_comp,
                 msd_sum, carry_in):
        self.multiset = multiset
        self.values = values
        self.mults = mults
        self.suffix_counts = suffix_counts
        self.base = base
        self.prod = prod
        self.cur = cur
        self.prefix_digits = prefix_digits
        self.prefix_carries = prefix_carries
        self.prefix_comp = prefix_comp
        self.msd_sum = msd_sum
        self.carry_in = carry_in

    @staticmethod
    def root(s: Multiset) -> "BaseEval":
        values = np.array([v for v, _ in s.counts], dtype=np.int64)
        mults = np.array([m for _, m in s.counts], dtype=np.int64)
        suffix = np.zeros(len(values) + 1, dtype=np.int64)
        suffix[:-1] = mults[::-1].cumsum()[::-1]
        return BaseEval(
            s, values, mults, suffix, (), 1, values.copy(),
            0, 0, 0, int(values @ mults), 0,
        )

    def extend(self, p: int) -> "BaseEval":
        rem = self.cur % p
        newcur = self.cur // p
        col = int(rem @ self.mults)
        carry_out = (col + self.carry_in) // p
        return BaseEval(
            self.multiset, self.values, self.mults, self.suffix_counts,
            self.base + (p,), self.prod * p, newcur,
            self.prefix_digits + col,
            self.prefix_carries + self.carry_in,
            self.prefix_comp + comparator_count(col + self.carry_in),
            int(newcur @ self.mults),
            carry_out,
        )

    def heuristic_count(self) -> int:
        """Elements (with multiplicity) at least the base product."""
        idx = bisect_left(self.multiset.elements, self.prod)
        return len(self.multiset.elements) - idx

    def cost(self, kind: CostKind) -> int:
        if kind is CostKind.SUM_DIGITS:
            return self.prefix_digits + self.msd_sum
        if kind is CostKind.SUM_CARRY:
            return (self.prefix_digits + self.prefix_carries
                    + self.msd_sum + self.carry_in)
        return self.prefix_comp + comparator_count(self.msd_sum + self.carry_in)

    def partial(self, kind: CostKind) -> int:
        if kind is CostKind.SUM_DIGITS:
            return self.prefix_digits
        if kind is CostKind.SUM_CARRY:
            return self.prefix_digits + self.prefix_carries + self.carry_in
        return self.prefix_comp

    def alpha(self, kind: CostKind) -> int:
        if kind is CostKind.NUM_COMP:
            return self.prefix_comp
        return self.partial(kind) + self.heuristic_count()

    def child_metrics(self, ps: np.ndarray, kind: CostKind):
        """(cost, alpha) arrays for extending by each candidate in ``ps``.

        Candidates must already satisfy prod * p <= max(S) so that all
        intermediate products stay within 64 bits.
        """
        rem = self.cur[None, :] % ps[:, None]
        cols = rem @ self.mults
        msd = (self.cur[None, :] // ps[:, None]) @ self.mults
        net_in = cols + self.carry_in
        carry_out = net_in // ps
        if kind is CostKind.NUM_COMP:
            part = self.prefix_comp + _comparator_count_vec(net_in)
            cost = part + _comparator_count_vec(msd + carry_out)
            return cost, part
        if kind is CostKind.SUM_DIGITS:
            part = self.prefix_digits + cols
            cost = part + msd
        else:
            part = (self.prefix_digits + self.prefix_carries
                    + cols + self.carry_in + carry_out)
            cost = part + msd
        idx = np.searchsorted(self.values, self.prod * ps, side="left")
        alpha = part + self.suffix_counts[idx]
        return cost, alpha
