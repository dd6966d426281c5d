"""Explicit solution sets and the generators drawn from them."""

from __future__ import annotations

import bisect
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..core import check_solution
from ..sampling import SolutionGenerator


class EmptyInstance(ValueError):
    """No generator exists for an empty solution set."""


@dataclass(frozen=True)
class ExplicitSet:
    solutions: tuple
    weights: Optional[tuple] = None

    def __post_init__(self):
        sols = tuple(check_solution(s) for s in self.solutions)
        object.__setattr__(self, "solutions", sols)
        if len(set(sols)) != len(sols):
            raise ValueError("explicit set contains duplicates")
        if self.weights is not None:
            w = tuple(self.weights)
            if len(w) != len(sols) or any(x <= 0 for x in w):
                raise ValueError("weights must be positive, one per solution")
            object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.solutions)

    @property
    def p_bits(self) -> int:
        return max((len(s) for s in self.solutions), default=1) or 1

    def min_probability(self) -> Fraction:
        if self.weights is None:
            return Fraction(1, len(self))
        return Fraction(min(self.weights)) / Fraction(sum(self.weights))

    def max_bias(self) -> Fraction:
        """Smallest b with every draw probability >= 1 / (s b)."""
        return 1 / (self.min_probability() * len(self))


def bit_strings(s: int, width: Optional[int] = None) -> ExplicitSet:
    """The first ``s`` integers as fixed-width binary strings."""
    width = width or max(1, (s - 1).bit_length())
    return ExplicitSet(tuple(format(i, f"0{width}b") for i in range(s)))


def parse_explicit_set(text: str) -> ExplicitSet:
    """One hex payload per line, optionally followed by a positive weight."""
    sols, weights = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c "):
            continue
        fields = line.split()
        try:
            data = bytes.fromhex(fields[0])
        except ValueError:
            raise ValueError(f"line {lineno}: bad hex payload {fields[0]!r}") from None
        sols.append("".join(format(b, "08b") for b in data))
        if len(fields) > 1:
            weights.append(Fraction(fields[1]))
        elif weights:
            raise ValueError(f"line {lineno}: missing weight")
    if weights and len(weights) != len(sols):
        raise ValueError("either every line or no line carries a weight")
    return ExplicitSet(tuple(sols), tuple(weights) if weights else None)


def read_explicit_set(path) -> ExplicitSet:
    with open(path) as fh:
        return parse_explicit_set(fh.read())


class ExplicitGenerator(SolutionGenerator):
    _shared = ("set", "_members", "_cum")

    def __init__(self, sset: ExplicitSet, seed=None, bias=None):
        if len(sset) == 0:
            raise EmptyInstance("cannot build a generator over an empty set")
        self.set = sset
        self.rng = random.Random(seed)
        self._members = frozenset(sset.solutions)
        self.p_bits = sset.p_bits
        self.draw_cost = 1 + self.p_bits
        if sset.weights is None:
            self._cum = None
            self.bias = bias
        else:
            self._cum = list(itertools.accumulate(float(w) for w in sset.weights))
            needed = sset.max_bias()
            if bias is None:
                bias = needed
            elif Fraction(bias) < needed:
                raise ValueError(f"weights need bias >= {needed}, declared {bias}")
            self.bias = bias

    def draw(self) -> str:
        sols = self.set.solutions
        if self._cum is None:
            return sols[self.rng.randrange(len(sols))]
        x = self.rng.random() * self._cum[-1]
        return sols[min(bisect.bisect_right(self._cum, x), len(sols) - 1)]

    def contains(self, y: str) -> bool:
        return y in self._members


def explicit_generator(sset: ExplicitSet, seed=None, bias=None) -> ExplicitGenerator:
    return ExplicitGenerator(sset, seed, bias)


def sat_generator(solutions: Sequence[str], seed=None) -> ExplicitGenerator:
    return ExplicitGenerator(ExplicitSet(tuple(solutions)), seed)
