"""The padded SAT family: ceil(2^(n t)) - 1 cheap solutions, then SAT(phi) x [2^n].

Padding solutions are ``#`` followed by a binary integer; assignment copies
are the assignment bits, ``#``, then the copy index on ``n`` bits.  The two
encodings never collide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from ..core import DEFAULT_COST, DONE, CostModel, Enumerator
from .allsat import FlashlightAllSat
from .cnf import CnfFormula, InstanceTooLarge, bits_to_str, brute_force_sat, max_vars


def ceil_root(x: int, q: int) -> int:
    """Smallest integer r with r**q >= x."""
    if x <= 1:
        return x
    lo, hi = 1, 1 << (-(-x.bit_length() // q) + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** q >= x:
            hi = mid
        else:
            lo = mid + 1
    return lo


def padding_count(n: int, t: Fraction) -> int:
    """ceil(2^(n t)) - 1 in exact integer arithmetic."""
    t = Fraction(t)
    return ceil_root(2 ** (n * t.numerator), t.denominator) - 1


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclass(frozen=True)
class PaddedInstance:
    phi: CnfFormula
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))
        if not 0 < self.t <= 1:
            raise ValueError(f"t must lie in (0, 1], got {self.t}")
        if self.n > max_vars():
            raise InstanceTooLarge(f"{self.n} variables exceeds cap {max_vars()}")

    @property
    def n(self) -> int:
        return self.phi.n_vars

    @property
    def k_pad(self) -> int:
        return padding_count(self.n, self.t)

    def expected_count(self) -> int:
        return self.k_pad + len(brute_force_sat(self.phi)) * 2 ** self.n


SatSolver = Callable[[CnfFormula], tuple]


def flashlight_solver(phi: CnfFormula) -> tuple:
    """First satisfying assignment via flashlight search, with its charged cost."""
    e = FlashlightAllSat(phi)
    while not e.done:
        out = e.step()
        if out is not None and out is not DONE:
            return tuple(int(c) for c in out), e.clock
    return None, e.clock


class PadEnumerator(Enumerator):
    """Padding first, then one solver call, then every solution's 2^n copies.

    Without ``sat_solver`` the solver is an in-place brute force charged
    ``|phi|`` per assignment tried, so its cost shows up step by step.
    """

    _shared = ("inst", "sat_solver")

    def __init__(self, inst: PaddedInstance, sat_solver: Optional[SatSolver] = None,
                 cost: CostModel = DEFAULT_COST):
        super().__init__(cost)
        self.inst = inst
        self.sat_solver = sat_solver
        self.k_pad = inst.k_pad
        self.phase = "pad"
        self.i = 0
        self.j = 0
        self.found = None
        self.current = None
        self.copy_idx = 0
        self.solution_bound = max(self.k_pad.bit_length() + 1, 2 * inst.n + 1)

    def _assignment(self, j: int) -> tuple:
        n = self.inst.n
        return tuple((j >> (n - 1 - k)) & 1 for k in range(n))

    def _advance(self):
        phi, n = self.inst.phi, self.inst.n
        if self.phase == "pad":
            if self.i < self.k_pad:
                self.i += 1
                return "#" + format(self.i, "b"), self.cost.arith(self.i)
            self.phase = "solve"
            self.j = 0
        if self.phase == "solve":
            if self.sat_solver is not None:
                bits, spent = self.sat_solver(phi)
                self.found = None if bits is None else tuple(bits)
                self.j = 0
                if self.found is None:
                    self.phase = "end"
                    return None, max(1, spent)
                self.current, self.copy_idx, self.phase = self.found, 0, "copies"
                return None, max(1, spent)
            if self.j >= 2 ** n:
                self.phase = "end"
                return None, 1
            a = self._assignment(self.j)
            self.j += 1
            if phi.evaluate(a):
                self.found = a
                self.current, self.copy_idx, self.phase = a, 0, "copies"
            return None, phi.size
        if self.phase == "copies":
            sol = bits_to_str(self.current) + "#" + (format(self.copy_idx, f"0{n}b") if n else "")
            self.copy_idx += 1
            if self.copy_idx == 2 ** n:
                self.phase = "rest"
            return sol, self.cost.copy(len(sol)) + self.cost.arith(self.copy_idx)
        if self.phase == "rest":
            while self.j < 2 ** n:
                a = self._assignment(self.j)
                self.j += 1
                if a == self.found:
                    continue
                if phi.evaluate(a):
                    self.current, self.copy_idx, self.phase = a, 0, "copies"
                return None, phi.size
            self.phase = "end"
            return None, 1
        return DONE, 1

    def space_bits(self):
        n = self.inst.n
        return 3 * n + max(1, self.i.bit_length()) + max(1, self.j.bit_length()) + n + 8


def pad_enumerator(inst: PaddedInstance, sat_solver: Optional[SatSolver] = None) -> PadEnumerator:
    return PadEnumerator(inst, sat_solver)


def make_instance(phi: CnfFormula, t: Union[str, Fraction, int]) -> PaddedInstance:
    return PaddedInstance(phi, Fraction(t))
