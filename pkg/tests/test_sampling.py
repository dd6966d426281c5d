from fractions import Fraction

import pytest

from enumdelay.core import ContractViolation, record_trace
from enumdelay.problems.explicit import ExplicitSet, bit_strings, explicit_generator
from enumdelay.sampling import (BitTrie, SampleEnumerator, SamplingConfig, SolutionGenerator,
                                sample_enumerate, sample_enumerate_biased, sample_enumerate_sketch,
                                stopping_multiplier)
from enumdelay.sketch import DistinctSketch

from oracles import coupon_mean, k_sampling, k_sketch


def test_stopping_multiplier_worked_values():
    assert stopping_multiplier(8, 0.5) == 20
    assert stopping_multiplier(8, 0.5, bias=3) == 60
    assert stopping_multiplier(8, 0.5, sketch=True) == 44
    assert stopping_multiplier(8, 0.5, bias=1) == stopping_multiplier(8, 0.5)


@pytest.mark.parametrize("p", [1, 3, 8, 17])
@pytest.mark.parametrize("eps", [0.5, 0.1, 0.03, 1e-4])
def test_stopping_multiplier_matches_oracle(p, eps):
    assert stopping_multiplier(p, eps) == k_sampling(p, eps)
    assert stopping_multiplier(p, eps, bias=2) == k_sampling(p, eps, 2)
    assert stopping_multiplier(p, eps, sketch=True) == k_sketch(p, eps)


def test_config_validation():
    with pytest.raises(ValueError):
        SamplingConfig(0, 4)
    with pytest.raises(ValueError):
        SamplingConfig(1, 4)
    with pytest.raises(ValueError):
        SamplingConfig(0.5, 0)


def test_trie():
    t = BitTrie()
    assert t.insert("0101") and not t.insert("0101")
    assert t.insert("01#") and "01#" in t and "01" not in t
    assert len(t) == 2
    assert t.space_bits() > 0


def test_singleton_stops_after_k_draws():
    g = explicit_generator(ExplicitSet(("1",)), seed=3)
    e = sample_enumerate(g, SamplingConfig(0.5, 1), log=True)
    t = record_trace(e)
    assert t.solutions == ["1"]
    assert e.r == e.K + 1
    r, size, go = e.log[-1]
    assert not go and r > e.K * size


def test_stopping_rule_replays_from_log():
    g = explicit_generator(bit_strings(16), seed=11)
    e = sample_enumerate(g, SamplingConfig(0.2, 4), log=True)
    record_trace(e)
    assert all(go == (r <= e.K * size) for r, size, go in e.log)
    assert e.log[-1][2] is False


def test_no_duplicates_and_coverage_small():
    for seed in range(50):
        g = explicit_generator(bit_strings(8), seed=seed)
        sols = record_trace(sample_enumerate(g, SamplingConfig(0.1, 3))).solutions
        assert len(sols) == len(set(sols))


def test_coupon_collector_mean_quick():
    total, trials = 0, 2000
    for seed in range(trials):
        g = explicit_generator(bit_strings(4), seed=seed)
        e = sample_enumerate(g, SamplingConfig(0.01, 2))
        record_trace(e)
        total += e.last_new_draw
    assert abs(total / trials - float(coupon_mean(4))) / float(coupon_mean(4)) < 0.08


def test_generator_rejects_non_member():
    class Bad(SolutionGenerator):
        def __init__(self):
            import random
            self.rng = random.Random(0)
            self.p_bits = 2

        def draw(self):
            return "11"

        def contains(self, y):
            return False

    with pytest.raises(ContractViolation):
        record_trace(sample_enumerate(Bad(), SamplingConfig(0.5, 2)))


def test_solution_longer_than_p_bits():
    g = explicit_generator(ExplicitSet(("0101",)), seed=0)
    with pytest.raises(ContractViolation):
        record_trace(sample_enumerate(g, SamplingConfig(0.5, 2)))


def test_biased_generator():
    s = ExplicitSet(("0", "1"), (3, 1))
    with pytest.raises(ValueError):
        sample_enumerate(explicit_generator(s, seed=0), SamplingConfig(0.1, 1))
    hits = 0
    for seed in range(300):
        e = sample_enumerate_biased(explicit_generator(s, seed=seed, bias=2), SamplingConfig(0.1, 1))
        assert e.K == stopping_multiplier(1, 0.1, bias=2)
        sols = record_trace(e).solutions
        hits += set(sols) == {"0", "1"}
    assert hits / 300 >= 0.9
    with pytest.raises(ValueError):
        sample_enumerate_biased(explicit_generator(s, seed=0), SamplingConfig(0.1, 1), bias=Fraction(1, 2))


def test_sketch_loop_emits_every_draw():
    g = explicit_generator(ExplicitSet(("1",)), seed=1)
    e = sample_enumerate_sketch(g, SamplingConfig(0.5, 1), log=True)
    t = record_trace(e)
    assert set(t.solutions) == {"1"}
    assert len(t) == e.r == e.K + 1
    assert all(go == (r <= e.K * est) for r, est, go in e.log)


def test_sketch_loop_uses_given_sketch_and_coverage():
    covered = 0
    for seed in range(100):
        g = explicit_generator(bit_strings(32), seed=seed)
        sk = DistinctSketch.for_delta(0.05, seed=seed)
        e = sample_enumerate_sketch(g, SamplingConfig(0.1, 5), sk)
        assert e.sketch is sk
        covered += len(set(record_trace(e).solutions)) == 32
    assert covered >= 85


def test_seeded_runs_reproducible():
    def run(seed):
        g = explicit_generator(bit_strings(20), seed=seed)
        return record_trace(sample_enumerate(g, SamplingConfig(0.1, 5))).solutions
    assert run(5) == run(5)
    cfg_seeded = SamplingConfig(0.1, 5, seed=9)
    a = record_trace(SampleEnumerator(explicit_generator(bit_strings(20)), cfg_seeded)).solutions
    b = record_trace(SampleEnumerator(explicit_generator(bit_strings(20)), cfg_seeded)).solutions
    assert a == b
