"""Independent oracles the tests check the library against.

Everything here recomputes results from first principles (explicit digit
chains, full matrices, exhaustive enumeration) without touching the
library's incremental or pruned code paths.
"""

from __future__ import annotations

import itertools

F_TABLE = (0, 0, 1, 3, 5, 9, 12, 16, 19)


def digits_oracle(v: int, base) -> list[int]:
    ds = []
    for r in base:
        ds.append(v % r)
        v //= r
    ds.append(v)
    return ds


def breakdown_oracle(elements, base):
    """Column sums and carries, summed over every element individually."""
    k = len(base)
    sums = [0] * (k + 1)
    for v in elements:
        for j, d in enumerate(digits_oracle(v, base)):
            sums[j] += d
    carries = [0] * (k + 1)
    for j in range(k):
        carries[j + 1] = (sums[j] + carries[j]) // base[j]
    return sums, carries


def f_oracle(n: int) -> int:
    if n <= 8:
        return F_TABLE[n]
    levels = (n - 1).bit_length()
    return n * levels * (levels - 1) // 4 + n - 1


def cost_oracle(kind: str, elements, base) -> int:
    sums, carries = breakdown_oracle(elements, base)
    if kind == "digits":
        return sum(sums)
    if kind == "carry":
        return sum(sums) + sum(carries)
    return sum(f_oracle(s + c) for s, c in zip(sums, carries))


def enumerate_bases(max_value: int, limit: int | None = None,
                    primes: set[int] | None = None) -> list[tuple[int, ...]]:
    """Every base with product <= max_value, elements <= limit, optionally
    prime elements only.  Includes the empty base."""
    limit = max_value if limit is None else min(limit, max_value)
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], prod: int) -> None:
        out.append(tuple(prefix))
        for p in range(2, limit + 1):
            if prod * p > max_value:
                break
            if primes is not None and p not in primes:
                continue
            prefix.append(p)
            rec(prefix, prod * p)
            prefix.pop()

    rec([], 1)
    return out


def optimum_oracle(kind: str, elements, limit=None, primes=None) -> int:
    m = max(elements)
    return min(cost_oracle(kind, elements, b)
               for b in enumerate_bases(m, limit, primes))


def sieve_set(n: int) -> set[int]:
    flags = [True] * (n + 1)
    out = set()
    for i in range(2, n + 1):
        if flags[i]:
            out.add(i)
            for j in range(i * i, n + 1, i):
                flags[j] = False
    return out


def constraint_value(terms, assignment: dict[int, bool]) -> int:
    """Left-hand side value of a normal-form constraint: terms are
    (coefficient, signed literal) pairs."""
    total = 0
    for coef, lit in terms:
        v = assignment[abs(lit)]
        if lit < 0:
            v = not v
        if v:
            total += coef
    return total


def all_assignments(var_ids):
    var_ids = list(var_ids)
    for bits in itertools.product([False, True], repeat=len(var_ids)):
        yield dict(zip(var_ids, bits))


def brute_truth_table_sat(clauses, num_vars) -> bool:
    """Exhaustive satisfiability over all assignments (tiny CNFs only)."""
    for bits in itertools.product([False, True], repeat=num_vars):
        ok = True
        for cl in clauses:
            if not any((lit > 0) == bits[abs(lit) - 1] for lit in cl):
                ok = False
                break
        if ok:
            return True
    return False
