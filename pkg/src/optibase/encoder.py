"""Compile Pseudo-Boolean constraints to CNF through sorting networks.

A normal-form constraint (positive coefficients, each variable once,
relation >=, positive threshold) is encoded against a mixed radix base in
four steps: the coefficients are decomposed into per-position digit buses,
each bus is sorted into a unary number, a normalizer reduces each sorted
bus modulo its radix and forwards every radix-th output as a carry into
the next position, and finally the resulting mixed radix number is
compared lexicographically against the threshold.

Literals are DIMACS-style signed integers; the TRUE and FALSE sentinels
fold away structurally and never reach an emitted clause.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .cost import cost_of
from .mixedradix import Multiset, digits_of
from .search import SearchConfig, SearchResult, find_base, initial_best

MAX_VARIABLES = 2**31 - 1


class _Const:
    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self):
        return self._name


TRUE = _Const("TRUE")
FALSE = _Const("FALSE")

Lit = Union[int, _Const]


def neg(lit: Lit) -> Lit:
    if lit is TRUE:
        return FALSE
    if lit is FALSE:
        return TRUE
    return -lit


UnaryBus = tuple  # ordered literals of a unary (sorted) number


@dataclass(frozen=True)
class PbConstraint:
    """Normal form: terms (coefficient, literal) with every coefficient
    positive and every variable in at most one term; threshold >= 1."""

    terms: tuple[tuple[int, int], ...]
    threshold: int

    def __post_init__(self):
        seen = set()
        for coef, lit in self.terms:
            if coef < 1:
                raise ValueError(f"coefficient {coef} is not positive")
            if lit == 0:
                raise ValueError("literal 0 is reserved")
            if abs(lit) in seen:
                raise ValueError(f"variable {abs(lit)} occurs twice")
            seen.add(abs(lit))
        if self.threshold < 1:
            raise ValueError("threshold must be positive")

    @property
    def coefficient_sum(self) -> int:
        return sum(c for c, _ in self.terms)

    def holds(self, assignment: dict[int, bool]) -> bool:
        total = 0
        for coef, lit in self.terms:
            v = assignment[abs(lit)]
            if lit < 0:
                v = not v
            if v:
                total += coef
        return total >= self.threshold


class CnfBuilder:
    """Fresh-variable allocator and clause sink with emission statistics.

    ``num_vars`` starts at the number of pre-reserved input variables;
    fresh ids continue above it.  Clauses fold constants on the way in:
    a TRUE literal satisfies the clause, FALSE literals drop out, and a
    clause holding complementary literals is discarded.  An empty clause
    (unsatisfiable) is kept and marks the formula statically false.
    """

    def __init__(self, num_input_vars: int = 0, polarity: str = "full"):
        if polarity not in ("full", "monotone"):
            raise ValueError(f"unknown polarity {polarity!r}")
        self.num_vars = num_input_vars
        self.clauses: list[list[int]] = []
        self.comparators = 0
        self.network_sizes: list[int] = []
        self.polarity = polarity
        self._empty_clauses = 0

    def fresh(self) -> int:
        if self.num_vars >= MAX_VARIABLES:
            raise OverflowError("fresh-variable budget of 2**31 exhausted")
        self.num_vars += 1
        return self.num_vars

    def add_clause(self, lits: Iterable[Lit]) -> None:
        out: list[int] = []
        seen: set[int] = set()
        for lit in lits:
            if lit is TRUE:
                return
            if lit is FALSE:
                continue
            if -lit in seen:
                return
            if lit not in seen:
                seen.add(lit)
                out.append(lit)
        if not out:
            self._empty_clauses += 1
        self.clauses.append(out)

    def assert_true(self, lit: Lit) -> None:
        if lit is TRUE:
            return
        self.add_clause([lit])

    @property
    def has_empty_clause(self) -> bool:
        return self._empty_clauses > 0


def comparator(a: Lit, b: Lit, bld: CnfBuilder) -> tuple[Lit, Lit]:
    """Two-input sorter: returns (a or b, a and b).

    Constant inputs fold without allocating variables or emitting clauses
    and do not count toward comparator statistics.  A real comparator
    costs six clauses (three per equivalence), or the three justification
    clauses under monotone polarity.
    """
    if a is TRUE or b is FALSE:
        return a, b
    if b is TRUE or a is FALSE:
        return b, a
    hi = bld.fresh()
    lo = bld.fresh()
    bld.add_clause([-hi, a, b])
    bld.add_clause([-lo, a])
    bld.add_clause([-lo, b])
    if bld.polarity == "full":
        bld.add_clause([-a, hi])
        bld.add_clause([-b, hi])
        bld.add_clause([-a, -b, lo])
    bld.comparators += 1
    return hi, lo


def _and2(a: Lit, b: Lit, bld: CnfBuilder) -> Lit:
    """Fresh literal equivalent to a and b, folding constants and
    duplicate or complementary inputs."""
    if a is FALSE or b is FALSE:
        return FALSE
    if a is TRUE:
        return b
    if b is TRUE:
        return a
    if a == b:
        return a
    if a == -b:
        return FALSE
    v = bld.fresh()
    bld.add_clause([-v, a])
    bld.add_clause([-v, b])
    bld.add_clause([-a, -b, v])
    return v


def _or_many(lits: Sequence[Lit], bld: CnfBuilder) -> Lit:
    """Fresh literal equivalent to the disjunction, folding as above."""
    kept: list[int] = []
    seen: set[int] = set()
    for lit in lits:
        if lit is TRUE:
            return TRUE
        if lit is FALSE:
            continue
        if -lit in seen:
            return TRUE
        if lit not in seen:
            seen.add(lit)
            kept.append(lit)
    if not kept:
        return FALSE
    if len(kept) == 1:
        return kept[0]
    v = bld.fresh()
    bld.add_clause([-v] + kept)
    for lit in kept:
        bld.add_clause([-lit, v])
    return v


_OPTIMAL_NETWORKS: dict[int, tuple[tuple[int, int], ...]] = {
    2: ((0, 1),),
    3: ((0, 1), (0, 2), (1, 2)),
    4: ((0, 1), (2, 3), (0, 2), (1, 3), (1, 2)),
    5: ((0, 1), (3, 4), (2, 4), (2, 3), (1, 4), (0, 3), (0, 2), (1, 3),
        (1, 2)),
    6: ((1, 2), (4, 5), (0, 2), (3, 5), (0, 1), (3, 4), (2, 5), (0, 3),
        (1, 4), (2, 4), (1, 3), (2, 3)),
    7: ((1, 2), (3, 4), (5, 6), (0, 2), (3, 5), (4, 6), (0, 1), (4, 5),
        (2, 6), (0, 4), (1, 5), (0, 3), (2, 5), (1, 3), (2, 4), (2, 3)),
    8: ((0, 1), (2, 3), (4, 5), (6, 7), (0, 2), (1, 3), (4, 6), (5, 7),
        (1, 2), (5, 6), (0, 4), (3, 7), (1, 5), (2, 6), (1, 4), (3, 6),
        (2, 4), (3, 5), (3, 4)),
}


@lru_cache(maxsize=None)
def _batcher_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Odd-even mergesort exchange list for a power-of-two n."""
    pairs: list[tuple[int, int]] = []

    def sort(lo: int, m: int) -> None:
        if m > 1:
            half = m // 2
            sort(lo, half)
            sort(lo + half, half)
            merge(lo, m, 1)

    def merge(lo: int, m: int, r: int) -> None:
        step = r * 2
        if step < m:
            merge(lo, m, step)
            merge(lo + r, m, step)
            for i in range(lo + r, lo + m - r, step):
                pairs.append((i, i + r))
        else:
            pairs.append((lo, lo + r))

    sort(0, n)
    return tuple(pairs)


def sorting_network(inputs: Sequence[Lit], bld: CnfBuilder) -> UnaryBus:
    """Sort a bus of literals descending (true values first).

    Known optimal networks up to 8 inputs; larger buses are padded with
    FALSE to the next power of two and run through odd-even mergesort,
    the padding folding away.  Output length equals input length.
    """
    n = len(inputs)
    bld.network_sizes.append(n)
    if n <= 1:
        return tuple(inputs)
    wires = list(inputs)
    if n <= 8:
        pairs = _OPTIMAL_NETWORKS[n]
    else:
        padded = 1 << (n - 1).bit_length()
        wires += [FALSE] * (padded - n)
        pairs = _batcher_pairs(padded)
    for i, j in pairs:
        wires[i], wires[j] = comparator(wires[i], wires[j], bld)
    return tuple(wires[:n])


def decompose(c: PbConstraint, base: Sequence[int]) -> list[UnaryBus]:
    """Per-position input buses: each term's literal repeats as many times
    as its coefficient digit at that position."""
    buses: list[list[Lit]] = [[] for _ in range(len(base) + 1)]
    for coef, lit in c.terms:
        for j, d in enumerate(digits_of(coef, base)):
            if d:
                buses[j].extend([lit] * d)
    return [tuple(b) for b in buses]


def normalizer(sorted_bus: UnaryBus, radix: int, bld: CnfBuilder
               ) -> tuple[UnaryBus, tuple[Lit, ...]]:
    """Split a sorted bus into its value modulo ``radix`` and the carries.

    Every radix-th output is a carry.  The remainder bus R has radix - 1
    literals with R_i true exactly when the bus value modulo radix is at
    least i, realized as the disjunction over t of
    (value >= t*radix + i) and not (value >= (t+1)*radix).
    """
    m = len(sorted_bus)
    r = radix
    carries = tuple(sorted_bus[t * r - 1] for t in range(1, m // r + 1))
    remainder: list[Lit] = []
    for i in range(1, r):
        windows: list[Lit] = []
        t = 0
        while t * r + i <= m:
            reach = sorted_bus[t * r + i - 1]
            stop = sorted_bus[(t + 1) * r - 1] if (t + 1) * r <= m else FALSE
            windows.append(_and2(reach, neg(stop), bld))
            t += 1
        remainder.append(_or_many(windows, bld))
    return tuple(remainder), carries


def _bus_at_least(bus: UnaryBus, count: int) -> Lit:
    """Literal for 'unary value of bus >= count'."""
    if count <= 0:
        return TRUE
    if count > len(bus):
        return FALSE
    return bus[count - 1]


def encode_geq(digit_buses: Sequence[UnaryBus], threshold_digits: Sequence[int],
               bld: CnfBuilder) -> None:
    """Assert that the mixed radix number on the buses is at least the
    number with the given digits, comparing most significant first:
    geq_j = (D_j > c_j) or (D_j >= c_j and geq_below_j)."""
    geq: Lit = TRUE
    for bus, c in zip(digit_buses, threshold_digits):
        ge = _bus_at_least(bus, c)
        if geq is TRUE:
            geq = ge
        else:
            gt = _bus_at_least(bus, c + 1)
            geq = _or_many([gt, _and2(ge, geq, bld)], bld)
    bld.assert_true(geq)


def encode_constraint(c: PbConstraint, base: Sequence[int], bld: CnfBuilder) -> None:
    """Full pipeline for one constraint: decompose, sort each position
    (carries from the previous position join its inputs), normalize all
    but the most significant position, then compare against the
    threshold.  A constraint whose coefficients cannot reach the
    threshold emits a single empty clause."""
    base = tuple(base)
    if c.coefficient_sum < c.threshold:
        bld.add_clause([])
        return
    buses = decompose(c, base)
    carries: tuple[Lit, ...] = ()
    digit_out: list[UnaryBus] = []
    for j in range(len(base) + 1):
        sorted_bus = sorting_network(buses[j] + carries, bld)
        if j < len(base):
            rem, carries = normalizer(sorted_bus, base[j], bld)
            digit_out.append(rem)
        else:
            digit_out.append(sorted_bus)
    encode_geq(digit_out, digits_of(c.threshold, base), bld)


@dataclass
class ConstraintStats:
    index: int
    base: tuple[int, ...]
    cost_kind: str
    cost_value: int | None
    clauses: int
    fresh_vars: int
    comparators: int
    network_sizes: tuple[int, ...]
    statically_unsat: bool
    fallback_binary: bool

    def as_dict(self) -> dict:
        return {
            "index": self.index,
            "base": list(self.base),
            "cost_kind": self.cost_kind,
            "cost_value": self.cost_value,
            "clauses": self.clauses,
            "vars": self.fresh_vars,
            "comparators": self.comparators,
            "network_sizes": list(self.network_sizes),
            "statically_unsat": self.statically_unsat,
            "fallback_binary": self.fallback_binary,
        }


@dataclass
class Cnf:
    num_vars: int
    clauses: list[list[int]]
    comments: list[str] = field(default_factory=list)

    @property
    def has_empty_clause(self) -> bool:
        return any(not cl for cl in self.clauses)


def to_dimacs(cnf: Cnf) -> str:
    lines = [f"c {c}" if c else "c" for c in cnf.comments]
    lines.append(f"p cnf {cnf.num_vars} {len(cnf.clauses)}")
    for cl in cnf.clauses:
        lines.append(" ".join(str(lit) for lit in cl + [0]))
    return "\n".join(lines) + "\n"


def encode_instance(
    constraints: Sequence[PbConstraint],
    num_input_vars: int,
    cfg: SearchConfig,
    forced_base: Sequence[int] | None = None,
    shared_base: bool = False,
    fallback_binary: bool = True,
    polarity: str = "full",
) -> tuple[Cnf, list[ConstraintStats]]:
    """Encode a conjunction of constraints into one variable space.

    The base is found per constraint's coefficient multiset by default;
    ``forced_base`` pins one base for everything, ``shared_base`` searches
    once over the union of all coefficients.  A search that times out
    falls back to the binary base (flagged in the stats) when
    ``fallback_binary`` is set, and otherwise keeps the best base found.
    """
    bld = CnfBuilder(num_input_vars, polarity=polarity)
    stats: list[ConstraintStats] = []

    shared: tuple[int, ...] | None = tuple(forced_base) if forced_base is not None else None
    if shared is None and shared_base and constraints:
        coefs = [c for pc in constraints for c, _ in pc.terms]
        if coefs:
            shared = _search_base(Multiset.of(coefs), cfg, fallback_binary)[0]

    for idx, pc in enumerate(constraints):
        c0, v0, n0 = len(bld.clauses), bld.num_vars, bld.comparators
        s0 = len(bld.network_sizes)
        if pc.coefficient_sum < pc.threshold:
            bld.add_clause([])
            stats.append(ConstraintStats(
                idx, (), cfg.kind.value, None, 1, 0, 0, (), True, False))
            continue
        if shared is not None:
            base, fellback = shared, False
        else:
            base, fellback = _search_base(
                Multiset.of(c for c, _ in pc.terms), cfg, fallback_binary)
        encode_constraint(pc, base, bld)
        cost_value = cost_of(cfg.kind, Multiset.of(c for c, _ in pc.terms), base)
        stats.append(ConstraintStats(
            idx, base, cfg.kind.value, cost_value,
            len(bld.clauses) - c0, bld.num_vars - v0, bld.comparators - n0,
            tuple(bld.network_sizes[s0:]), False, fellback))

    cnf = Cnf(bld.num_vars, bld.clauses)
    return cnf, stats


def _search_base(s: Multiset, cfg: SearchConfig,
                 fallback_binary: bool) -> tuple[tuple[int, ...], bool]:
    result: SearchResult = find_base(s, cfg)
    if result.timed_out and fallback_binary:
        return initial_best(s), True
    return result.best_base, False
