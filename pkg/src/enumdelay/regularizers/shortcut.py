"""Shortcut regularization for enumerators with few large gaps.

A lead simulation runs ``2h`` charged steps ahead for every step of the
emitting simulation.  Whenever the lead sees a p-gap after output ``i`` it
stores output ``i+1`` together with a snapshot taken right after it.  When
the emitting simulation sits between outputs ``i`` and ``i+1`` and a shortcut
for ``i`` exists, it jumps to the snapshot and emits the stored solution.
"""

from __future__ import annotations

import copy

from ..core import (DEFAULT_COST, DONE, CostModel, Enumerator, NotSnapshottable,
                    PreconditionViolation, as_int, snapshot, resume)


class GapBudgetExceeded(PreconditionViolation):
    pass


class ShortcutRegularizer(Enumerator):
    def __init__(self, inner: Enumerator, h: int, p: int, q: int, cost: CostModel = DEFAULT_COST):
        super().__init__(cost)
        if not inner.snapshottable:
            raise NotSnapshottable(f"{type(inner).__name__} cannot be shortcut")
        if min(h, p) < 1 or q < 0:
            raise ValueError("need h, p >= 1 and q >= 0")
        self.h, self.p, self.q = h, p, q
        self.main = inner
        self.lead = copy.deepcopy(inner)
        self.credit = 0
        self.lead_last = self.lead.clock
        # output index -> (solution i+1, snapshot after it)
        self.shortcuts = {}
        self.jumps = 0
        self.max_jump_charge = 0
        self.gaps_seen = 0
        self.stored_total = 0

    def _run_lead(self, budget: int) -> int:
        """Advance the lead by ``budget`` charged steps (with carry); return steps spent."""
        self.credit += budget
        lead = self.lead
        start = lead.clock
        while self.credit > 0 and not lead.done:
            before = lead.clock
            out = lead.step()
            self.credit -= lead.clock - before
            if out is None or out is DONE:
                continue
            if lead.clock - self.lead_last > self.p:
                i = lead.outputs - 1
                self.gaps_seen += 1
                if self.gaps_seen > self.q:
                    raise GapBudgetExceeded(
                        f"more than q={self.q} p-gaps (p={self.p}); the last follows output {i}")
                if i >= self.main.outputs:
                    self.stored_total += 1
                    self.shortcuts[i] = (out, snapshot(lead))
            self.lead_last = lead.clock
        if lead.done:
            self.credit = 0
        return lead.clock - start

    def _advance(self):
        i = self.main.outputs
        if i in self.shortcuts:
            sol, snap = self.shortcuts.pop(i)
            self.main = resume(snap)
            self.jumps += 1
            charge = self.cost.copy(snap.size_bits) + self.cost.copy(len(sol))
            self.max_jump_charge = max(self.max_jump_charge, charge)
            return sol, charge
        before = self.main.clock
        out = self.main.step()
        spent = self.main.clock - before
        return out, spent + self._run_lead(2 * self.h * spent)

    def space_bits(self):
        stored = sum(s.size_bits + 2 * len(sol) + 64 for sol, s in self.shortcuts.values())
        return self.main.space_bits() + self.lead.space_bits() + stored + 4 * 64


def shortcut_regularize(e: Enumerator, h, p, q, n: int = 1) -> ShortcutRegularizer:
    return ShortcutRegularizer(e, as_int(h, n), as_int(p, n), as_int(q, n))


def shortcut_delay_bound(h: int, p: int, jump_charge: int, max_inner_charge: int = 1) -> int:
    """No gaps larger than this: p emitting steps, each paying 2h lead steps, or one jump.

    The lead may overshoot its credit by one inner step, hence ``max_inner_charge - 1``.
    """
    return max(p * (1 + 2 * h) + max_inner_charge - 1, jump_charge)
