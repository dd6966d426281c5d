import copy
import warnings

import pytest

from enumdelay.core import (ContractViolation, DEFAULT_COST, IterableEnumerator, NotSnapshottable,
                            PreconditionViolation, Poly, detect_gaps, record_trace, snapshot)
from enumdelay.problems.allsat import flashlight_allsat
from enumdelay.problems.cnf import CnfFormula
from enumdelay.problems.scripted import ScriptedEnumerator, burst, dense_with_gaps, doubling_blocks
from enumdelay.regularizers import (NO_MORE, QUEUE_BOOKKEEPING, AnotherSolProcedure, DensityViolation,
                                    GapBudgetExceeded, IncrementalBoundWarning, QueueAmortizer,
                                    ShortcutRegularizer, StockRegularizer, another_sol_from_enumerator,
                                    enumerator_from_another_sol, queue_amortize, queue_delay_bound,
                                    shortcut_delay_bound, shortcut_regularize, stock_delay_bound,
                                    stock_regularize)

from corpus import CNFS, SCRIPTED
from oracles import average_delay_h, density_q, queue_bound, sat_set, stock_bound


def lexicographic_proc(universe):
    def fn(x, S):
        rest = sorted(set(universe) - S)
        return rest[0] if rest else NO_MORE
    return AnotherSolProcedure(fn, lambda x, y: y in universe)


# AnotherSol -----------------------------------------------------------------

def test_another_sol_empty():
    assert list(enumerator_from_another_sol(lexicographic_proc([]), None)) == []


def test_another_sol_lexicographic():
    assert list(enumerator_from_another_sol(lexicographic_proc(["0", "1", "10"]), None)) == ["0", "1", "10"]


def test_another_sol_duplicate_and_non_solution():
    dup = AnotherSolProcedure(lambda x, S: "1")
    e = enumerator_from_another_sol(dup, None)
    assert e.step() == "1"
    with pytest.raises(ContractViolation):
        e.step()
    liar = AnotherSolProcedure(lambda x, S: "11", lambda x, y: False)
    with pytest.raises(ContractViolation):
        enumerator_from_another_sol(liar, None).step()


def test_another_sol_from_enumerator_cases():
    proc = another_sol_from_enumerator(ScriptedEnumerator([1, 2, 3], ["0", "1", "10"]), 1, 1, 1, 10)
    assert proc(None, frozenset({"0", "1", "10"})) is NO_MORE
    assert proc(None, frozenset({"0"})) in {"1", "10"}
    single = another_sol_from_enumerator(ScriptedEnumerator([1], ["0"]), 1, 1, 1, 100)
    assert single(None, frozenset()) == "0"


def test_another_sol_warns_on_violated_bound():
    proc = another_sol_from_enumerator(ScriptedEnumerator([50], ["0"]), 1, 0, 0, 5)
    with pytest.warns(IncrementalBoundWarning):
        assert proc(None, frozenset()) is NO_MORE


def test_another_sol_budget_uses_literal_roles():
    proc = another_sol_from_enumerator(ScriptedEnumerator([1]), n=3, a=2, b=1, c=2)
    assert proc.budget(4) == 2 * 3 ** 2 * 5


def test_another_sol_round_trip_allsat():
    for phi in CNFS.values():
        e = flashlight_allsat(phi)
        t = record_trace(copy.deepcopy(e))
        c = max(t.total_steps, 1)
        proc = another_sol_from_enumerator(e, phi.size, 0, 0, c)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            out = list(enumerator_from_another_sol(proc, phi))
        assert sorted(out) == sat_set(phi.n_vars, phi.clauses)


# queue ----------------------------------------------------------------------

def test_queue_worked_example():
    q = queue_amortize(ScriptedEnumerator([1, 2, 100]), 0, 34)
    t = record_trace(q)
    assert q.release_counters == [34, 68, 101]
    assert t.solutions == record_trace(ScriptedEnumerator([1, 2, 100])).solutions
    book = QUEUE_BOOKKEEPING + 1  # copy of a one-word solution plus threshold bookkeeping
    assert t.output_times == [34 + book, 68 + 2 * book, 101 + 3 * book]
    assert t.max_delay() <= 34 + book


def test_queue_delay_one_inner_keeps_set_and_schedule():
    inner = ScriptedEnumerator(range(1, 21))
    q = queue_amortize(inner, 0, 3)
    t = record_trace(q)
    assert sorted(t.solutions) == sorted(record_trace(ScriptedEnumerator(range(1, 21))).solutions)
    assert q.release_counters[:5] == [3, 6, 9, 12, 15]


def test_queue_quadratic_schedule():
    inner = ScriptedEnumerator([k * k for k in range(1, 9)])
    q = queue_amortize(inner, 1, 1)
    t = record_trace(q)
    assert q.release_counters[:7] == [k * k for k in range(1, 8)]
    for k, d in enumerate(t.delays()):
        assert d <= queue_bound(k, 1, 1, 1, QUEUE_BOOKKEEPING)


def test_queue_burst_constant_delay():
    n = 256
    q = queue_amortize(burst(n), 0, n)
    t = record_trace(q)
    assert len(t) == n
    s_words = DEFAULT_COST.copy(len(t.solutions[0]))
    assert t.max_delay() <= n + s_words + QUEUE_BOOKKEEPING
    # the bound does not depend on k: constant delay
    assert all(d <= n + s_words + QUEUE_BOOKKEEPING for d in t.delays())


def test_queue_detects_violated_bound():
    with pytest.raises(PreconditionViolation):
        record_trace(queue_amortize(burst(16), 0, 1))


def test_queue_delay_bound_formula():
    assert queue_delay_bound(0, 0, 34, 1) == 34 + 1 + QUEUE_BOOKKEEPING
    assert queue_delay_bound(2, 1, 5, 1) == 5 * (9 - 4) + 1 + QUEUE_BOOKKEEPING


def test_queue_rejects_bad_parameters():
    with pytest.raises(ValueError):
        QueueAmortizer(burst(2), -1, 1)
    with pytest.raises(ValueError):
        QueueAmortizer(burst(2), 0, 0)


# shortcut -------------------------------------------------------------------

def test_shortcut_identity_without_gaps():
    inner = ScriptedEnumerator(range(1, 30))
    r = shortcut_regularize(inner, 1, 2, 0)
    t = record_trace(r)
    assert t.solutions == record_trace(ScriptedEnumerator(range(1, 30))).solutions
    assert r.stored_total == 0 and r.jumps == 0


def test_shortcut_single_large_gap():
    p = 3
    make = lambda: dense_with_gaps(40, {5: 10 * p})
    t_in = record_trace(make())
    h = average_delay_h(t_in.output_times)
    r = ShortcutRegularizer(make(), h, p, 1)
    t = record_trace(r)
    assert t.solutions == t_in.solutions
    assert r.stored_total == 1 and r.jumps == 1
    assert detect_gaps(t, shortcut_delay_bound(h, p, r.max_jump_charge)) == []


def test_shortcut_after_queue_stores_nothing():
    p = 34
    bound = queue_delay_bound(0, 0, p, 1)
    make = lambda: queue_amortize(ScriptedEnumerator([1, 2, 100]), 0, p)
    r = ShortcutRegularizer(make(), 1 + bound, bound, 0)
    t = record_trace(r)
    assert r.stored_total == 0
    assert t.solutions == record_trace(make()).solutions


def test_shortcut_gap_budget():
    with pytest.raises(GapBudgetExceeded):
        record_trace(ShortcutRegularizer(dense_with_gaps(40, {3: 20, 9: 20}), 5, 2, 1))


def test_shortcut_needs_snapshots():
    with pytest.raises(NotSnapshottable):
        ShortcutRegularizer(IterableEnumerator(iter(["0"])), 1, 1, 1)
    with pytest.raises(ValueError):
        ShortcutRegularizer(burst(2), 0, 1, 1)


def test_shortcut_polynomial_parameters():
    r = shortcut_regularize(burst(4), Poly([1, 1]), [2], 1, n=3)
    assert (r.h, r.p, r.q) == (4, 2, 1)


# stock ----------------------------------------------------------------------

def test_stock_identity_without_gaps():
    inner = ScriptedEnumerator(range(1, 50))
    r = stock_regularize(inner, 1, 2, 2)
    t = record_trace(r)
    assert t.solutions == record_trace(ScriptedEnumerator(range(1, 50))).solutions
    assert r.fills == 0


def test_stock_singleton():
    r = StockRegularizer(ScriptedEnumerator([5]), 5, 2, 2)
    t = record_trace(r)
    assert len(t) == 1 and t.max_delay() <= 5 + stock_delay_bound(5, 2, 2)


@pytest.mark.parametrize("rounds, gap, first", [(5, 100, 2), (7, 30, 2), (10, 8, 2), (9, 20, 1)])
def test_stock_doubling_blocks(rounds, gap, first):
    p = 2
    t_in = record_trace(doubling_blocks(rounds, gap, first=first))
    h = average_delay_h(t_in.output_times)
    q = density_q(t_in.output_times, p)
    r = StockRegularizer(doubling_blocks(rounds, gap, first=first), h, p, q)
    t = record_trace(r)
    assert sorted(t.solutions) == sorted(t_in.solutions)
    assert len(set(t.solutions)) == len(t.solutions)
    assert t.max_delay() <= stock_bound(h, p, q) == stock_delay_bound(h, p, q)


def test_stock_switches_between_simulations():
    t_in = record_trace(doubling_blocks(10, 8))
    r = StockRegularizer(doubling_blocks(10, 8), average_delay_h(t_in.output_times), 2, 2)
    record_trace(r)
    assert r.fills >= 1 and r.switches >= 1


def test_stock_density_violation():
    with pytest.raises(DensityViolation):
        record_trace(StockRegularizer(ScriptedEnumerator(range(5, 500, 5)), 5, 2, 2))


def test_stock_needs_snapshots():
    with pytest.raises(NotSnapshottable):
        StockRegularizer(IterableEnumerator(iter(["0"])), 1, 1, 1)


def test_snapshot_sizes_are_small_for_scripted():
    e = SCRIPTED["random-3"]()
    assert snapshot(e).size_bits <= 64
