"""Randomized enumeration from uniform or biased solution generators.

``SampleEnumerator`` keeps every emitted solution in a trie and stops once the
number of draws exceeds ``K`` times the number of distinct solutions found.
``SketchSampleEnumerator`` replaces the trie by a distinct-count sketch, emits
every draw (repetitions allowed) and uses the sketch estimate in the stopping
rule.
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import DEFAULT_COST, DONE, ContractViolation, CostModel, Enumerator
from .sketch import DistinctSketch


class SolutionGenerator:
    """Draws one solution per call.  ``bias`` is None for a uniform generator."""

    _shared: tuple = ()
    bias = None
    draw_cost = 1
    p_bits = 1

    def draw(self) -> str:
        raise NotImplementedError

    def contains(self, y: str) -> bool:
        return True

    @property
    def uniform(self) -> bool:
        return self.bias is None

    def __deepcopy__(self, memo):
        cls = type(self)
        clone = cls.__new__(cls)
        memo[id(self)] = clone
        for k, v in vars(self).items():
            setattr(clone, k, v if k in self._shared else copy.deepcopy(v, memo))
        return clone


@dataclass(frozen=True)
class SamplingConfig:
    epsilon: float
    p_bits: int
    seed: Optional[int] = None

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.p_bits < 1:
            raise ValueError("p_bits must be at least 1")


def _ceil(x: float) -> int:
    r = round(x)
    return r if abs(x - r) < 1e-9 else math.ceil(x)


def stopping_multiplier(p_bits: int, epsilon: float, bias=1, sketch: bool = False) -> int:
    """K for the exact-set loop (``2 b (p - log2(eps/2))``) or the sketch loop (``4 (p - log2(eps/4))``)."""
    if sketch:
        return _ceil(4 * (p_bits - math.log2(epsilon / 4)))
    return _ceil(2 * float(Fraction(bias)) * (p_bits - math.log2(epsilon / 2)))


class BitTrie:
    """Set of strings over {0,1,#}; insert and lookup walk one node per symbol."""

    def __init__(self):
        self.root = {}
        self.nodes = 1
        self.size = 0

    def insert(self, s: str) -> bool:
        """Add ``s``; return True when it was not present."""
        node = self.root
        for ch in s:
            nxt = node.get(ch)
            if nxt is None:
                nxt = node[ch] = {}
                self.nodes += 1
            node = nxt
        if "$" in node:
            return False
        node["$"] = None
        self.size += 1
        return True

    def __contains__(self, s: str) -> bool:
        node = self.root
        for ch in s:
            node = node.get(ch)
            if node is None:
                return False
        return "$" in node

    def __len__(self):
        return self.size

    def space_bits(self) -> int:
        ptr = max(1, self.nodes.bit_length())
        # three child slots plus an end marker per node
        return self.nodes * (3 * ptr + 1)


class SampleEnumerator(Enumerator):
    """Exact-set sampling loop; emitted solutions are pairwise distinct."""

    def __init__(self, gen: SolutionGenerator, cfg: SamplingConfig, bias=None,
                 log: bool = False, cost: CostModel = DEFAULT_COST):
        super().__init__(cost)
        if bias is None:
            bias = 1 if gen.bias is None else gen.bias
        self.gen = gen
        if cfg.seed is not None:
            gen.rng.seed(cfg.seed)
        self.cfg = cfg
        self.bias = bias
        self.K = stopping_multiplier(cfg.p_bits, cfg.epsilon, bias)
        self.r = 0
        self.seen = BitTrie()
        self.last_new_draw = 0
        self.log = [] if log else None

    def _advance(self):
        bound = self.K * len(self.seen)
        charge = self.cost.arith(self.r, bound)
        go = self.r <= bound
        if self.log is not None:
            self.log.append((self.r, len(self.seen), go))
        if not go:
            return DONE, charge
        e = self.gen.draw()
        self.r += 1
        if not self.gen.contains(e):
            raise ContractViolation(f"generator returned non-member {e!r}")
        if len(e) > self.cfg.p_bits:
            raise ContractViolation(f"solution of {len(e)} bits exceeds p_bits={self.cfg.p_bits}")
        charge += self.gen.draw_cost + len(e) + 1
        if self.seen.insert(e):
            self.last_new_draw = self.r
            return e, charge
        return None, charge

    def space_bits(self):
        return (self.seen.space_bits() + max(1, self.r.bit_length())
                + max(1, self.K.bit_length()) + max(1, self.last_new_draw.bit_length()))


class SketchSampleEnumerator(Enumerator):
    """Sampling loop with repetitions and sketch-bounded memory."""

    def __init__(self, gen: SolutionGenerator, cfg: SamplingConfig,
                 sk: Optional[DistinctSketch] = None, log: bool = False,
                 cost: CostModel = DEFAULT_COST):
        super().__init__(cost)
        self.gen = gen
        if cfg.seed is not None:
            gen.rng.seed(cfg.seed)
        self.cfg = cfg
        self.sketch = sk if sk is not None else DistinctSketch.for_delta(cfg.epsilon / 2, seed=cfg.seed)
        self.K = stopping_multiplier(cfg.p_bits, cfg.epsilon, sketch=True)
        self.r = 0
        self.log = [] if log else None

    def _advance(self):
        est = self.sketch.estimate()
        go = self.r <= self.K * est
        charge = self.cost.arith(self.r, self.K) + 1
        if self.log is not None:
            self.log.append((self.r, est, go))
        if not go:
            return DONE, charge
        e = self.gen.draw()
        self.r += 1
        if not self.gen.contains(e):
            raise ContractViolation(f"generator returned non-member {e!r}")
        self.sketch.update(e)
        return e, charge + self.gen.draw_cost + self.sketch.last_cost

    def space_bits(self):
        return self.sketch.space_bits() + max(1, self.r.bit_length()) + max(1, self.K.bit_length())


def sample_enumerate(g: SolutionGenerator, cfg: SamplingConfig, **kw) -> SampleEnumerator:
    if not g.uniform:
        raise ValueError("generator is biased; use sample_enumerate_biased")
    return SampleEnumerator(g, cfg, bias=1, **kw)


def sample_enumerate_biased(g: SolutionGenerator, cfg: SamplingConfig, bias=None, **kw) -> SampleEnumerator:
    b = bias if bias is not None else (g.bias or 1)
    if Fraction(b) < 1:
        raise ValueError("bias must be at least 1")
    return SampleEnumerator(g, cfg, bias=b, **kw)


def sample_enumerate_sketch(g: SolutionGenerator, cfg: SamplingConfig,
                            sk: Optional[DistinctSketch] = None, **kw) -> SketchSampleEnumerator:
    return SketchSampleEnumerator(g, cfg, sk, **kw)
