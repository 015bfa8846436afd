"""Search for a minimum-cost base: pruned depth-first search, best-first
branch and bound, and branch and bound over a product-hashed frontier.

The search space is the tree of non-redundant bases for a multiset S: the
root is the empty base and a node B has one child B+(p,) for every
extender p with product(B) * p <= max(S), optionally restricted to primes
and to elements no larger than a configured limit.  An exhaustive
traversal of the same tree serves as the ground-truth oracle.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from heapq import heappop, heappush
from math import isqrt

import numpy as np

from .cost import BaseEval, CostKind
from .mixedradix import Base, Multiset, product

BRUTE_FORCE_MAX = 10_000

_EMPTY = np.empty(0, dtype=np.int64)


@dataclass
class SearchConfig:
    kind: CostKind
    max_elem: int = 10_000
    primes_only: bool = True
    algorithm: str = "hashbnb"
    timeout: float | None = None

    def __post_init__(self):
        if self.max_elem < 2:
            raise ValueError("max_elem must be at least 2")
        if self.algorithm not in ("dfs", "bnb", "hashbnb", "brute"):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")


@dataclass
class SearchResult:
    best_base: Base
    best_cost: int
    nodes_expanded: int
    nodes_pruned: int
    elapsed: float
    optimal_guaranteed: bool
    timed_out: bool
    algorithm: str


@lru_cache(maxsize=64)
def primes_up_to(limit: int) -> tuple[int, ...]:
    """Ascending primes <= limit, by sieve."""
    if limit < 2:
        return ()
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i:: i] = False
    return tuple(int(p) for p in np.flatnonzero(flags))


@lru_cache(maxsize=64)
def _prime_array(limit: int) -> np.ndarray:
    return np.array(primes_up_to(limit), dtype=np.int64)


def _extender_array(prod: int, s: Multiset, cfg: SearchConfig) -> np.ndarray:
    cap = min(cfg.max_elem, s.max // prod)
    if cap < 2:
        return _EMPTY
    if cfg.primes_only:
        arr = _prime_array(min(cfg.max_elem, s.max))
        return arr[: int(np.searchsorted(arr, cap, side="right"))]
    return np.arange(2, cap + 1, dtype=np.int64)


def extenders(base, s: Multiset, cfg: SearchConfig) -> list[int]:
    """Ascending integers p by which ``base`` extends to a non-redundant
    base for ``s`` under the configured element limit and primality."""
    return [int(p) for p in _extender_array(product(base), s, cfg)]


def initial_best(s: Multiset) -> Base:
    """The binary base of length floor(log2 max(S)), the starting upper bound."""
    return (2,) * (s.max.bit_length() - 1)


def _eval_base(root: BaseEval, base) -> BaseEval:
    ev = root
    for p in base:
        ev = ev.extend(p)
    return ev


def _initial_candidates(root: BaseEval, kind: CostKind) -> tuple[Base, int]:
    """Upper bound to start from: the binary base, or the root itself when
    the empty base is already cheaper (possible under the carry-aware
    costs, where extending can add more carry bits than it saves)."""
    best = initial_best(root.multiset)
    best_cost = _eval_base(root, best).cost(kind)
    root_cost = root.cost(kind)
    if root_cost < best_cost:
        return (), root_cost
    return best, best_cost


class _Timer:
    def __init__(self, timeout: float | None):
        self.t0 = time.monotonic()
        self.timeout = timeout

    def expired(self) -> bool:
        return self.timeout is not None and time.monotonic() - self.t0 > self.timeout

    def elapsed(self) -> float:
        return time.monotonic() - self.t0


def dfs_hp(s: Multiset, cfg: SearchConfig) -> SearchResult:
    """Depth-first traversal with heuristic pruning: a child is cut when
    its cost underestimate already exceeds the best cost seen."""
    kind = cfg.kind
    timer = _Timer(cfg.timeout)
    root = BaseEval.root(s)
    best_base, best_cost = _initial_candidates(root, kind)
    expanded = 0
    pruned = 0
    timed_out = False

    def visit(state: BaseEval) -> None:
        nonlocal best_base, best_cost, expanded, pruned, timed_out
        if timed_out or timer.expired():
            timed_out = True
            return
        expanded += 1
        ps = _extender_array(state.prod, s, cfg)
        if len(ps) == 0:
            return
        costs, alphas = state.child_metrics(ps, kind)
        # children over the entry bound stay over any tightened bound
        candidates = np.flatnonzero(alphas <= best_cost)
        pruned += len(ps) - len(candidates)
        for i in candidates:
            if timed_out:
                return
            if alphas[i] > best_cost:
                pruned += 1
                continue
            child = state.extend(int(ps[i]))
            if costs[i] < best_cost:
                best_base, best_cost = child.base, int(costs[i])
            visit(child)

    visit(root)
    return SearchResult(best_base, best_cost, expanded, pruned,
                        timer.elapsed(), not timed_out, timed_out, "dfs")


class _PlainQueue:
    """Binary heap of (key, state); key = (alpha, product, length, radices)."""

    def __init__(self):
        self._heap: list = []

    def __len__(self):
        return len(self._heap)

    def push(self, key, state) -> bool:
        heappush(self._heap, (key, state))
        return True

    def peek_alpha(self) -> int:
        return self._heap[0][0][0]

    def pop_min(self):
        return heappop(self._heap)[1]


class HashPriorityQueue:
    """Min priority queue holding at most one resident base per product.

    Pushing a base whose product is already resident keeps whichever of
    the two has the smaller cost underestimate (ties keep the resident);
    the loser is dropped, or tombstoned if it was already on the heap.
    """

    def __init__(self):
        self._heap: list[list] = []
        self._by_product: dict[int, list] = {}
        self._size = 0

    def __len__(self):
        return self._size

    def push(self, key, state) -> bool:
        prod = key[1]
        resident = self._by_product.get(prod)
        if resident is not None:
            if resident[0][0] <= key[0]:
                return False
            resident[2] = False  # lazy deletion
            self._size -= 1
        entry = [key, state, True]
        self._by_product[prod] = entry
        heappush(self._heap, entry)
        self._size += 1
        return True

    def _clean(self):
        while self._heap and not self._heap[0][2]:
            heappop(self._heap)

    def peek_alpha(self) -> int:
        self._clean()
        return self._heap[0][0][0]

    def pop_min(self):
        self._clean()
        entry = heappop(self._heap)
        entry[2] = False
        self._size -= 1
        del self._by_product[entry[0][1]]
        return entry[1]


def _key(state: BaseEval, alpha: int):
    return (alpha, state.prod, len(state.base), state.base)


def _queue_search(s: Multiset, cfg: SearchConfig, hashed: bool) -> SearchResult:
    kind = cfg.kind
    timer = _Timer(cfg.timeout)
    root = BaseEval.root(s)
    best_base, best_cost = _initial_candidates(root, kind)
    queue = HashPriorityQueue() if hashed else _PlainQueue()
    queue.push(_key(root, root.alpha(kind)), root)
    expanded = 0
    pruned = 0
    timed_out = False

    while len(queue) and queue.peek_alpha() < best_cost:
        if timer.expired():
            timed_out = True
            break
        state = queue.pop_min()
        expanded += 1
        ps = _extender_array(state.prod, s, cfg)
        if len(ps) == 0:
            continue
        costs, alphas = state.child_metrics(ps, kind)
        candidates = np.flatnonzero(alphas <= best_cost)
        pruned += len(ps) - len(candidates)
        for i in candidates:
            if alphas[i] > best_cost:
                pruned += 1
                continue
            child = state.extend(int(ps[i]))
            if not queue.push(_key(child, int(alphas[i])), child):
                pruned += 1
            if costs[i] < best_cost:
                best_base, best_cost = child.base, int(costs[i])

    guaranteed = not timed_out and (not hashed or kind is CostKind.SUM_DIGITS)
    return SearchResult(best_base, best_cost, expanded, pruned,
                        timer.elapsed(), guaranteed, timed_out,
                        "hashbnb" if hashed else "bnb")


def branch_and_bound(s: Multiset, cfg: SearchConfig) -> SearchResult:
    """Best-first branch and bound over a plain priority queue."""
    return _queue_search(s, cfg, hashed=False)


def hash_bnb(s: Multiset, cfg: SearchConfig) -> SearchResult:
    """Branch and bound keeping one frontier base per product value.

    Guaranteed optimal for the digit-count cost; for the other costs the
    result is reported with optimal_guaranteed=False.
    """
    return _queue_search(s, cfg, hashed=True)


def _guard_desk_scale(s: Multiset, what: str) -> None:
    if s.max > BRUTE_FORCE_MAX:
        raise ValueError(
            f"{what} is limited to multisets with max <= {BRUTE_FORCE_MAX}, "
            f"got {s.max}"
        )


def brute_force(s: Multiset, cfg: SearchConfig) -> SearchResult:
    """Exhaustive traversal of the configured base tree; no pruning."""
    _guard_desk_scale(s, "brute-force search")
    kind = cfg.kind
    timer = _Timer(cfg.timeout)
    root = BaseEval.root(s)
    best_base, best_cost = (), root.cost(kind)
    expanded = 0
    timed_out = False

    def visit(state: BaseEval) -> None:
        nonlocal best_base, best_cost, expanded, timed_out
        if timed_out or timer.expired():
            timed_out = True
            return
        expanded += 1
        c = state.cost(kind)
        if c < best_cost:
            best_base, best_cost = state.base, c
        for p in _extender_array(state.prod, s, cfg):
            visit(state.extend(int(p)))

    visit(root)
    return SearchResult(best_base, best_cost, expanded, 0,
                        timer.elapsed(), not timed_out, timed_out, "brute")


def count_bases(s: Multiset) -> int:
    """Size of the full non-redundant base tree for S, by enumeration."""
    _guard_desk_scale(s, "base counting")
    top = s.max

    def count(prod: int) -> int:
        total = 1
        for p in range(2, top // prod + 1):
            total += count(prod * p)
        return total

    return count(1)


def find_base(s: Multiset, cfg: SearchConfig) -> SearchResult:
    """Run the configured algorithm."""
    fn = {"dfs": dfs_hp, "bnb": branch_and_bound,
          "hashbnb": hash_bnb, "brute": brute_force}[cfg.algorithm]
    return fn(s, cfg)
