"""Bridges between "find another solution" procedures and incremental enumerators."""

from __future__ import annotations

import warnings
from typing import Callable, Optional

from ..core import (DEFAULT_COST, DONE, ContractViolation, CostModel, Enumerator,
                    check_solution, resume, snapshot)


class _NoMore:
    def __repr__(self):
        return "NO_MORE"


NO_MORE = _NoMore()


class IncrementalBoundWarning(UserWarning):
    """The simulated enumerator ran past its declared budget without a new solution."""


class AnotherSolProcedure:
    """Callable ``(x, S) -> solution | NO_MORE``.

    ``last_cost`` holds the charged cost of the latest call.  ``is_solution``
    (optional) lets callers verify answers.
    """

    def __init__(self, fn: Callable, is_solution: Optional[Callable] = None):
        self.fn = fn
        self.is_solution = is_solution
        self.last_cost = 1

    def __call__(self, x, S):
        out = self.fn(x, S)
        if isinstance(out, tuple):
            out, self.last_cost = out
        return out


class AnotherSolEnumerator(Enumerator):
    """Grows S one call at a time until the procedure answers NO_MORE."""

    _shared = ("proc", "x")
    snapshottable = True

    def __init__(self, proc, x, cost: CostModel = DEFAULT_COST):
        super().__init__(cost)
        self.proc = proc
        self.x = x
        self.S = set()

    def _advance(self):
        y = self.proc(self.x, frozenset(self.S))
        charge = max(1, int(getattr(self.proc, "last_cost", 1)))
        if y is NO_MORE:
            return DONE, charge
        check_solution(y)
        if y in self.S:
            raise ContractViolation(f"procedure returned {y!r}, already in S")
        is_sol = getattr(self.proc, "is_solution", None)
        if is_sol is not None and not is_sol(self.x, y):
            raise ContractViolation(f"procedure returned non-solution {y!r}")
        self.S.add(y)
        return y, charge + self.cost.copy(len(y))


def enumerator_from_another_sol(proc, x) -> AnotherSolEnumerator:
    return AnotherSolEnumerator(proc, x)


class EnumeratorAnotherSol(AnotherSolProcedure):
    """Answers AnotherSol by re-running an enumerator from its initial state.

    The simulation budget is ``c * n**a * (1 + |S|)**b`` charged steps: ``a``
    is the input-size exponent and ``b`` the solution-count exponent.
    """

    def __init__(self, e: Enumerator, n: int, a: float, b: float, c: float):
        self.initial = snapshot(e)
        self.n, self.a, self.b, self.c = n, a, b, c
        self.last_cost = 1
        self.is_solution = None

    def budget(self, size_s: int) -> int:
        return int(self.c * max(self.n, 1) ** self.a * (1 + size_s) ** self.b)

    def __call__(self, x, S):
        run = resume(self.initial)
        limit = self.budget(len(S))
        found = 0
        fresh = None
        while not run.done and run.clock < limit:
            out = run.step()
            if out is None or out is DONE:
                continue
            found += 1
            if out not in S:
                fresh = out
                break
        self.last_cost = max(1, run.clock + len(S))
        if fresh is not None:
            return fresh
        if not run.done:
            warnings.warn(
                f"enumerator produced {found} solutions within {limit} steps, fewer than "
                f"|S|+1={len(S) + 1}; declared incremental bound is violated",
                IncrementalBoundWarning, stacklevel=2)
        return NO_MORE


def another_sol_from_enumerator(e: Enumerator, n: int, a: float, b: float, c: float) -> EnumeratorAnotherSol:
    return EnumeratorAnotherSol(e, n, a, b, c)
