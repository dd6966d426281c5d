"""Shared instance corpus: scripted enumerators, CNF formulas, explicit sets."""

import random

from enumdelay.problems.cnf import CnfFormula
from enumdelay.problems.scripted import ScriptedEnumerator, burst, dense_with_gaps, doubling_blocks


def _random_times(seed, k):
    rng = random.Random(seed)
    times, t = [], 0
    for _ in range(k):
        t += rng.randint(1, 6) + (rng.randint(10, 80) if rng.random() < 0.05 else 0)
        times.append(t)
    return times


# name -> zero-argument factory, so each use gets a fresh enumerator
SCRIPTED = {
    "empty": lambda: ScriptedEnumerator([]),
    "singleton": lambda: ScriptedEnumerator([1]),
    "late-singleton": lambda: ScriptedEnumerator([40]),
    "steps-3-5-9": lambda: ScriptedEnumerator([3, 5, 9]),
    "1-2-100": lambda: ScriptedEnumerator([1, 2, 100]),
    "delay-1": lambda: ScriptedEnumerator(range(1, 41)),
    "delay-3": lambda: ScriptedEnumerator(range(3, 121, 3)),
    "burst-16": lambda: burst(16),
    "burst-100": lambda: burst(100),
    "one-gap": lambda: dense_with_gaps(60, {5: 40}),
    "gap-first": lambda: dense_with_gaps(50, {0: 60}),
    "three-gaps": lambda: dense_with_gaps(200, {10: 30, 80: 30, 150: 30}),
    "blocks-5-100": lambda: doubling_blocks(5, 100),
    "blocks-7-30": lambda: doubling_blocks(7, 30),
    "blocks-10-8": lambda: doubling_blocks(10, 8),
    "blocks-6-20-d2": lambda: doubling_blocks(6, 20, delay=2, first=3),
    **{f"random-{s}": (lambda s=s: ScriptedEnumerator(_random_times(s, 80 + 20 * s))) for s in range(6)},
    "long-tail": lambda: ScriptedEnumerator([1, 2, 3], end=500),
}


def random_cnf(seed, n, m, width=3):
    rng = random.Random(seed)
    clauses = []
    for _ in range(m):
        w = min(n, rng.randint(2, width))
        clauses.append([v * rng.choice((1, -1)) for v in rng.sample(range(1, n + 1), w)])
    return CnfFormula(n, clauses)


CNFS = {
    "x1-and-x2": CnfFormula(2, [[1], [2]]),
    "or-2": CnfFormula(2, [[1, 2]]),
    "tautology-3": CnfFormula(3, []),
    "unsat-empty-clause": CnfFormula(2, [[]]),
    "unsat-x-notx": CnfFormula(1, [[1], [-1]]),
    "all-ones-8": CnfFormula(8, [[i] for i in range(1, 9)]),
    "parity-ish-5": CnfFormula(5, [[1, 2], [-1, -2], [3, 4, 5], [-3, -4]]),
    **{f"random-{n}-{s}": random_cnf(100 * n + s, n, n + 2 * s) for n in (4, 6, 9, 12) for s in range(3)},
}

# brute-forceable Pad_t formulas with n <= 8
PAD_CNFS = {name: phi for name, phi in CNFS.items() if phi.n_vars <= 8}
# satisfiable instances whose only solutions come last in the brute-force order
LATE_SAT = {
    "all-ones-8": CnfFormula(8, [[i] for i in range(1, 9)]),
    "last-two-8": CnfFormula(8, [[i] for i in range(1, 8)]),
    "all-ones-7": CnfFormula(7, [[i] for i in range(1, 8)]),
}
