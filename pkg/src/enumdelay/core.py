"""Stepwise enumerators, the cost model, snapshots and trace recording.

An enumerator is an explicit state machine.  Each call to :meth:`Enumerator.step`
performs one charged step and returns ``None`` (no output), a solution string,
or the :data:`DONE` sentinel.  Solutions are strings over the alphabet
``{0, 1, #}``; their size is their length in symbols.
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence, Union

ALPHABET = frozenset("01#")


class EnumerationError(Exception):
    """Base class for errors raised by enumerators and combinators."""


class EnumeratorFinished(EnumerationError):
    """Raised when a terminated enumerator is stepped again."""


class NotSnapshottable(EnumerationError):
    """The enumerator does not support state capture."""


class ContractViolation(EnumerationError):
    """A plugged-in procedure broke its declared contract."""


class PreconditionViolation(EnumerationError):
    """A caller-asserted bound or structural assumption turned out false."""


class _Done:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "DONE"

    def __reduce__(self):
        return (_Done, ())


DONE = _Done()

Outcome = Union[None, str, _Done]


def check_solution(payload: str) -> str:
    if not isinstance(payload, str) or not set(payload) <= ALPHABET:
        raise ContractViolation(f"not a solution over {{0,1,#}}: {payload!r}")
    return payload


@dataclass(frozen=True)
class CostModel:
    """Charges for bookkeeping performed by enumerators and combinators.

    Arithmetic on a value costs one unit per machine word of its binary
    representation, so cost stays linear in operand bit length while counters
    that fit in a word are charged O(1).
    """

    word_bits: int = 64

    def words(self, nbits: int) -> int:
        return max(1, -(-int(nbits) // self.word_bits))

    def arith(self, *values: int) -> int:
        return sum(self.words(abs(int(v)).bit_length()) for v in values) or 1

    def copy(self, nbits: int) -> int:
        """Cost of copying ``nbits`` bits (a solution or a snapshot)."""
        return self.words(nbits)


DEFAULT_COST = CostModel()


def state_bits(obj: Any, _seen: Optional[set] = None) -> int:
    """Measure the encoding size of a plain-data structure in bits.

    Integers count their bit length, strings two bits per symbol, containers
    the sum of their items plus one word of structure each.
    """
    if _seen is None:
        _seen = set()
    if obj is None or isinstance(obj, bool):
        return 1
    if isinstance(obj, int):
        return max(1, obj.bit_length())
    if isinstance(obj, float):
        return 64
    if isinstance(obj, Fraction):
        return state_bits(obj.numerator) + state_bits(obj.denominator)
    if isinstance(obj, (str, bytes)):
        return 2 * len(obj) if isinstance(obj, str) else 8 * len(obj)
    if id(obj) in _seen:
        return 0
    _seen.add(id(obj))
    if isinstance(obj, dict):
        return 64 + sum(state_bits(k, _seen) + state_bits(v, _seen) for k, v in obj.items())
    if isinstance(obj, (list, tuple, set, frozenset)):
        return 64 + sum(state_bits(v, _seen) for v in obj)
    if isinstance(obj, Enumerator):
        return obj.space_bits()
    if hasattr(obj, "__dict__"):
        return state_bits(vars(obj), _seen)
    return 64


class Enumerator:
    """Base class for stepwise enumerators.

    Subclasses implement :meth:`_advance`, returning ``(outcome, charge)``.
    Attributes named in ``_shared`` hold immutable instance data (a formula, a
    solution list) and are neither deep-copied by snapshots nor counted as
    working memory.
    """

    snapshottable = True
    _shared: tuple = ()
    solution_bound: Optional[int] = None

    def __init__(self, cost: CostModel = DEFAULT_COST):
        self.cost = cost
        self.clock = 0
        self.outputs = 0
        self.done = False
        self.fence_at: Optional[int] = None

    def step(self) -> Outcome:
        if self.done:
            raise EnumeratorFinished(f"{type(self).__name__} already terminated")
        outcome, charge = self._advance()
        if charge < 1:
            raise ValueError("every step must be charged at least one unit")
        self.clock += charge
        if outcome is DONE:
            self.done = True
        elif outcome is not None:
            self.outputs += 1
        return outcome

    def _advance(self) -> tuple:
        raise NotImplementedError

    def fence(self) -> None:
        """Mark the end of precomputation; allowed once."""
        if self.fence_at is not None:
            raise EnumerationError("precomputation fence already declared")
        self.fence_at = self.clock

    def space_bits(self) -> int:
        """Current working memory in bits (instance data excluded)."""
        skip = set(self._shared) | {"cost"}
        return state_bits({k: v for k, v in vars(self).items() if k not in skip})

    def __deepcopy__(self, memo):
        cls = type(self)
        clone = cls.__new__(cls)
        memo[id(self)] = clone
        for k, v in vars(self).items():
            if k in self._shared or k == "cost":
                setattr(clone, k, v)
            else:
                setattr(clone, k, copy.deepcopy(v, memo))
        return clone

    def __iter__(self):
        while not self.done:
            out = self.step()
            if out is not None and out is not DONE:
                yield out


@dataclass
class Snapshot:
    index: int
    state_copy: Enumerator
    size_bits: int


def snapshot(e: Enumerator) -> Snapshot:
    if not e.snapshottable:
        raise NotSnapshottable(f"{type(e).__name__} cannot be snapshotted")
    return Snapshot(e.outputs, copy.deepcopy(e), e.space_bits())


def resume(s: Snapshot) -> Enumerator:
    return copy.deepcopy(s.state_copy)


@dataclass
class EnumerationTrace:
    """Cumulative step counts at each output, in output order."""

    output_times: list = field(default_factory=list)
    solutions: list = field(default_factory=list)
    total_steps: int = 0
    peak_space_bits: int = 0
    truncated: bool = False
    start: int = 0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.output_times) != len(self.solutions):
            raise ValueError("output_times and solutions differ in length")
        if any(b <= a for a, b in zip(self.output_times, self.output_times[1:])):
            raise ValueError("output_times must be strictly increasing")

    def __len__(self):
        return len(self.solutions)

    def delays(self) -> list:
        """Inter-output delays; entry 0 is measured from the fence (or step 0)."""
        prev = [self.start] + self.output_times[:-1]
        return [t - s for s, t in zip(prev, self.output_times)]

    def max_delay(self, include_first: bool = True) -> int:
        d = self.delays()
        if not include_first:
            d = d[1:]
        return max(d, default=0)

    def average_delay(self) -> float:
        return self.total_steps / max(1, len(self.output_times))


def record_trace(e: Enumerator, step_budget: Optional[int] = None, *, space_every: int = 1) -> EnumerationTrace:
    """Run ``e`` until it terminates or its clock reaches ``step_budget``.

    Peak space is sampled every ``space_every`` steps and at every output.
    """
    if step_budget is not None and step_budget < 0:
        raise ValueError("step_budget must be nonnegative")
    times, sols = [], []
    peak = e.space_bits()
    n = 0
    truncated = False
    while not e.done:
        if step_budget is not None and e.clock >= step_budget:
            truncated = True
            break
        out = e.step()
        n += 1
        if out is not None and out is not DONE:
            times.append(e.clock)
            sols.append(out)
            peak = max(peak, e.space_bits())
        elif space_every and n % space_every == 0:
            peak = max(peak, e.space_bits())
    peak = max(peak, e.space_bits())
    start = e.fence_at or 0
    return EnumerationTrace(times, sols, e.clock, peak, truncated, start)


def detect_gaps(t: EnumerationTrace, p: int) -> list:
    """Indices ``i`` with ``T(i+1) - T(i) > p``; ``T(0)`` is the fence."""
    if p <= 0:
        raise ValueError("p must be positive")
    return [i for i, d in enumerate(t.delays()) if d > p]


@dataclass
class IncrementalFit:
    a: float
    b: float
    n: int
    c: float
    ok: bool
    violation: Optional[int] = None


def check_incremental(
    t: EnumerationTrace,
    a: float,
    n: int,
    b: float = 0,
    c: Optional[float] = None,
    *,
    include_termination: bool = False,
    b_cap: float = 8,
) -> IncrementalFit:
    """Fit ``T(m) <= c * m**a * n**b`` over the trace.

    Without ``c`` the tightest constant is returned.  With ``c`` the first
    violating ``m`` (1-based) is reported.  ``include_termination`` treats the
    final step count as ``T(k+1)``.
    """
    if t.truncated:
        raise ValueError("check_incremental needs a complete trace")
    if b > b_cap:
        raise ValueError(f"input exponent {b} exceeds cap {b_cap}")
    times = list(t.output_times)
    if include_termination:
        times.append(t.total_steps)
    scale = float(max(n, 1)) ** b
    ratios = [ti / ((m ** a) * scale) for m, ti in enumerate(times, start=1)]
    tight = max(ratios, default=0.0)
    if c is None:
        return IncrementalFit(a, b, n, tight, True)
    for m, r in enumerate(ratios, start=1):
        if r > c:
            return IncrementalFit(a, b, n, tight, False, m)
    return IncrementalFit(a, b, n, tight, True)


class Poly:
    """Polynomial with nonnegative coefficients, lowest degree first."""

    def __init__(self, coeffs: Union[int, Sequence[int], "Poly"]):
        if isinstance(coeffs, Poly):
            coeffs = coeffs.coeffs
        if isinstance(coeffs, (int, Fraction)):
            coeffs = [coeffs]
        self.coeffs = tuple(coeffs)
        if not self.coeffs or any(c < 0 for c in self.coeffs):
            raise ValueError(f"coefficients must be nonnegative: {self.coeffs}")

    @classmethod
    def parse(cls, text: str) -> "Poly":
        return cls([Fraction(x) for x in text.replace(" ", "").split(",") if x])

    def __call__(self, n: int) -> int:
        v = sum(Fraction(c) * n ** i for i, c in enumerate(self.coeffs))
        return math.ceil(v)

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"


def as_int(x: Union[int, Poly, Sequence[int]], n: int) -> int:
    """Evaluate a polynomial (or pass an int through) at ``n``, rounding up."""
    if isinstance(x, int):
        return x
    return Poly(x)(n)


class IterableEnumerator(Enumerator):
    """Wraps a Python iterable; one unit step per item.  Not snapshottable."""

    snapshottable = False

    def __init__(self, items: Iterable[str], cost: CostModel = DEFAULT_COST):
        super().__init__(cost)
        self._it = iter(items)

    def _advance(self):
        try:
            return check_solution(next(self._it)), 1
        except StopIteration:
            return DONE, 1

    def space_bits(self):
        return 64

    def __deepcopy__(self, memo):
        raise NotSnapshottable("iterator-backed enumerators hold generator state")
