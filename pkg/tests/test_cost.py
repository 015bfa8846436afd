import random

import numpy as np
import pytest

from optibase.cost import (BaseEval, CostKind, breakdown, comparator_count,
                           cost_alpha, cost_of, heuristic, num_comp,
                           partial_cost, sum_carry, sum_digits)
from optibase.encoder import _batcher_pairs
from optibase.mixedradix import Multiset, product

from helpers import breakdown_oracle, cost_oracle

S_FIG = Multiset.of([1, 3, 4, 8, 18, 18])
S_INTRO = Multiset.of([16, 30, 54, 60])
S_PSI = Multiset.of([2, 2, 2, 2, 5, 18])


def test_breakdown_golden_tables():
    b = breakdown(S_FIG, (2, 3, 3))
    assert b.column_sums == (2, 4, 1, 2)
    assert b.carries == (0, 1, 1, 0)
    b = breakdown(S_FIG, (2, 2, 2, 2))
    assert b.column_sums == (2, 3, 1, 1, 2)
    assert b.carries == (0, 1, 2, 1, 1)
    b = breakdown(Multiset.of([7]), ())
    assert b.column_sums == (7,) and b.carries == (0,)


def test_breakdown_matches_elementwise_oracle():
    rng = random.Random(10)
    for _ in range(500):
        elems = [rng.randint(1, 500) for _ in range(rng.randint(1, 7))]
        base = tuple(rng.randint(2, 9) for _ in range(rng.randint(0, 5)))
        s = Multiset.of(elems)
        b = breakdown(s, base)
        sums, carries = breakdown_oracle(s.elements, base)
        assert list(b.column_sums) == sums
        assert list(b.carries) == carries


def test_sum_digits_examples():
    assert sum_digits(S_INTRO, (2, 2, 2, 2, 2)) == 13
    assert sum_digits(S_INTRO, (3, 5, 2, 2)) == 9
    assert sum_digits(S_INTRO, ()) == 160


def test_sum_carry_examples():
    assert sum_carry(S_FIG, (2, 3, 3)) == 11
    assert sum_carry(S_FIG, (2, 2, 2, 2)) == 14
    assert breakdown(S_PSI, (2, 9)).column_sums == (1, 6, 1)
    assert breakdown(S_PSI, (2, 9)).carries == (0, 0, 0)
    assert sum_carry(S_PSI, (2, 9)) == 8


def test_comparator_count_table_and_formula():
    assert [comparator_count(n) for n in range(9)] == [0, 0, 1, 3, 5, 9, 12, 16, 19]
    assert comparator_count(5) == 9
    assert comparator_count(16) == 63
    with pytest.raises(ValueError):
        comparator_count(-1)


def test_comparator_count_matches_generated_networks():
    # for powers of two the formula counts the odd-even mergesort exactly
    for k in range(1, 9):
        n = 1 << k
        assert comparator_count(n) == len(_batcher_pairs(n))


def test_comparator_count_monotone_and_superadditive():
    values = [comparator_count(n) for n in range(10_001)]
    assert all(a <= b for a, b in zip(values, values[1:]))
    rng = random.Random(11)
    for _ in range(2000):
        x, y = rng.randint(0, 5000), rng.randint(0, 5000)
        assert comparator_count(x + y) >= comparator_count(x) + y


def test_num_comp_examples():
    assert num_comp(S_FIG, (3, 2, 3)) == 10
    assert num_comp(S_FIG, (2, 3, 3)) == 12
    assert num_comp(S_FIG, (2, 2, 2, 2)) == 13


def test_partial_cost_examples():
    assert partial_cost(CostKind.SUM_DIGITS, S_INTRO, ()) == 0
    assert partial_cost(CostKind.SUM_CARRY, S_FIG, (2, 3, 3)) == 11 - 2
    assert partial_cost(CostKind.NUM_COMP, S_FIG, (2, 3, 3)) == 12 - comparator_count(2)


def test_heuristic_examples():
    assert heuristic(CostKind.SUM_DIGITS, S_INTRO, (3, 5)) == 4
    assert heuristic(CostKind.NUM_COMP, S_FIG, (2, 3)) == 0
    assert heuristic(CostKind.SUM_CARRY, S_PSI, (2, 3, 3)) == 1


def test_cost_alpha_is_partial_plus_heuristic():
    for kind, s, base in (
        (CostKind.SUM_DIGITS, S_INTRO, (3, 5)),
        (CostKind.SUM_CARRY, S_FIG, (2, 3, 3)),
        (CostKind.NUM_COMP, S_FIG, (2, 3, 3)),
    ):
        assert cost_alpha(kind, s, base) == (
            partial_cost(kind, s, base) + heuristic(kind, s, base))


def test_sum_relations():
    rng = random.Random(12)
    for _ in range(400):
        elems = [rng.randint(1, 200) for _ in range(rng.randint(1, 6))]
        base = tuple(rng.randint(2, 9) for _ in range(rng.randint(0, 4)))
        s = Multiset.of(elems)
        b = breakdown(s, base)
        assert sum_carry(s, base) >= sum_digits(s, base)
        assert (sum_carry(s, base) == sum_digits(s, base)) == (
            all(c == 0 for c in b.carries))
        # independent per-element summation agrees with the column view
        assert sum_digits(s, base) == cost_oracle("digits", s.elements, base)


def _random_pair(rng):
    """A non-redundant base and a longer extension of it."""
    elems = [rng.randint(1, 200) for _ in range(rng.randint(1, 6))]
    s = Multiset.of(elems)
    base = []
    prod = 1
    for _ in range(rng.randint(0, 4)):
        p = rng.randint(2, 9)
        if prod * p > s.max:
            break
        base.append(p)
        prod *= p
    ext = list(base)
    for _ in range(rng.randint(1, 3)):
        p = rng.randint(2, 9)
        if prod * p > s.max:
            break
        ext.append(p)
        prod *= p
    return s, tuple(base), tuple(ext)


def test_admissibility_chain():
    # cost(B') >= partial(B') + h(B') >= partial(B) + h(B) for B' extending B
    rng = random.Random(13)
    for _ in range(1500):
        s, base, ext = _random_pair(rng)
        for kind in CostKind:
            assert cost_of(kind, s, ext) >= cost_alpha(kind, s, ext)
            assert cost_alpha(kind, s, ext) >= cost_alpha(kind, s, base)


def test_inputs_invariance():
    # network sizes below the shorter base's msd do not change on extension
    rng = random.Random(14)
    for _ in range(1000):
        s, base, ext = _random_pair(rng)
        b1, b2 = breakdown(s, base), breakdown(s, ext)
        for j in range(len(base)):
            assert b1.inputs(j) == b2.inputs(j)


def test_base_eval_matches_functional_costs():
    rng = random.Random(15)
    for _ in range(1000):
        elems = [rng.randint(1, 10**6) for _ in range(rng.randint(1, 8))]
        s = Multiset.of(elems)
        ev = BaseEval.root(s)
        base = ()
        while True:
            for kind in CostKind:
                assert ev.cost(kind) == cost_of(kind, s, base)
                assert ev.partial(kind) == partial_cost(kind, s, base)
                assert ev.alpha(kind) == cost_alpha(kind, s, base)
            p = rng.randint(2, 9)
            if product(base) * p > s.max:
                break
            base += (p,)
            ev = ev.extend(p)


def test_child_metrics_match_scalar_extend():
    rng = random.Random(16)
    for _ in range(150):
        elems = [rng.randint(1, 10**5) for _ in range(rng.randint(1, 8))]
        s = Multiset.of(elems)
        ev = BaseEval.root(s)
        depth = rng.randint(0, 3)
        for _ in range(depth):
            cap = s.max // ev.prod
            if cap < 2:
                break
            ev = ev.extend(rng.randint(2, min(9, cap)))
        cap = s.max // ev.prod
        if cap < 2:
            continue
        ps = np.arange(2, cap + 1, dtype=np.int64)
        for kind in CostKind:
            costs, alphas = ev.child_metrics(ps, kind)
            for idx in {0, len(ps) - 1, rng.randrange(len(ps))}:
                child = ev.extend(int(ps[idx]))
                assert int(costs[idx]) == child.cost(kind)
                assert int(alphas[idx]) == child.alpha(kind)
