"""Flashlight (backtrack) enumeration of satisfying assignments."""

from __future__ import annotations

from ..core import DEFAULT_COST, DONE, ContractViolation, CostModel, Enumerator
from .cnf import CnfFormula, InstanceTooLarge, assignments, bits_to_str, max_vars


class BruteForceOracle:
    """Decides extendability of a prefix assignment by trying all completions.

    ``last_cost`` is the number of clause-set evaluations performed times the
    formula size.  Answers are memoized per (formula, prefix) to save wall
    time on repeated runs; the charged cost is the same on a cache hit.
    """

    def __init__(self):
        self.last_cost = 1
        self._memo = {}

    def __call__(self, phi: CnfFormula, prefix) -> bool:
        key = (id(phi), tuple(prefix))
        hit = self._memo.get(key)
        if hit is not None and hit[0] is phi:
            self.last_cost = hit[2]
            return hit[1]
        found, cost = self._decide(phi, prefix)
        self._memo[key] = (phi, found, cost)
        self.last_cost = cost
        return found

    @staticmethod
    def _decide(phi: CnfFormula, prefix) -> tuple:
        quick = phi.eval_partial(prefix)
        if quick is not None:
            return quick, phi.size
        free = phi.n_vars - len(prefix)
        tried = 0
        for rest in assignments(free):
            tried += 1
            if phi.evaluate(tuple(prefix) + rest):
                return True, tried * phi.size
        return False, max(1, tried) * phi.size


class UnitCostOracle(BruteForceOracle):
    """Same answers as brute force, charged one unit per call."""

    def __call__(self, phi, prefix):
        ok = BruteForceOracle.__call__(self, phi, prefix)
        self.last_cost = 1
        return ok


class FlashlightAllSat(Enumerator):
    """Emits SAT(phi) in lexicographic order, pruning with an extension oracle.

    An oracle call's charge is paid over several steps of at most ``|phi|``
    units each (one formula evaluation), so no single step hides a long
    computation.
    """

    _shared = ("phi", "oracle")

    def __init__(self, phi: CnfFormula, oracle=None, cost: CostModel = DEFAULT_COST):
        super().__init__(cost)
        if phi.n_vars > max_vars():
            raise InstanceTooLarge(f"{phi.n_vars} variables exceeds cap {max_vars()}")
        self.phi = phi
        self.oracle = oracle if oracle is not None else BruteForceOracle()
        self.bits = []
        self.zero_failed = []
        self.tested = False
        self.finished = False
        self.debt = 0
        self.chunk = max(1, phi.size)
        self.solution_bound = phi.n_vars

    def _next_branch(self):
        while self.bits and self.bits[-1] == 1:
            self.bits.pop()
            self.zero_failed.pop()
        if not self.bits:
            self.finished = True
        else:
            self.bits[-1] = 1
            self.tested = False

    def _pay(self, charge: int) -> int:
        now = min(charge, self.chunk)
        self.debt = charge - now
        return now

    def _advance(self):
        if self.debt:
            return None, self._pay(self.debt)
        if self.finished:
            return DONE, 1
        if not self.tested:
            ok = self.oracle(self.phi, self.bits)
            charge = self._pay(max(1, int(getattr(self.oracle, "last_cost", 1))))
            if ok:
                self.tested = True
            elif not self.bits:
                self.finished = True
            elif self.bits[-1] == 0:
                self.zero_failed[-1] = True
                self.bits[-1] = 1
            elif self.zero_failed[-1]:
                raise ContractViolation(
                    f"oracle declared prefix {bits_to_str(self.bits[:-1])!r} extendable "
                    "but both branches are empty")
            else:
                self._next_branch()
            return None, charge
        if len(self.bits) == self.phi.n_vars:
            if not self.phi.evaluate(self.bits):
                raise ContractViolation(f"oracle accepted non-solution {bits_to_str(self.bits)!r}")
            sol = bits_to_str(self.bits)
            self._next_branch()
            return sol, self.cost.copy(len(sol))
        self.bits.append(0)
        self.zero_failed.append(False)
        self.tested = False
        return None, 1

    def space_bits(self):
        return 2 * len(self.bits) + 3 + max(1, self.debt.bit_length())


def flashlight_allsat(phi: CnfFormula, ext_oracle=None) -> FlashlightAllSat:
    return FlashlightAllSat(phi, ext_oracle)
