"""Explorer/enumerator regularization for enumerators with dense gap-free stretches.

Two processes share one thread of control.  The explorer runs the inner
enumerator ``2hq - 2`` charged steps per enumerator step and remembers the
longest gap-free run of fresh solutions seen so far (the *stock*) as a pair of
snapshots: right after output ``a`` and right after output ``b``.

The enumerator emits from its main simulation (simple mode).  After ``p``
silent steps it switches to filling mode: a filling simulation resumes from
the stock's start and emits ``a+1, a+2, ...`` one per round while the main
simulation gets ``hq`` steps per round and still emits everything up to ``a``.
When the main simulation has emitted ``a`` it is dropped and the filling
simulation becomes the main one.  Once the explorer terminates a third
simulation resumes from the stock's end so that the main, filling and third
simulations together cover every remaining solution.

Solutions are tracked by index in the inner enumerator's order only, so each
is emitted exactly once without storing solution sets.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from typing import Optional

from ..core import (DEFAULT_COST, DONE, CostModel, Enumerator, NotSnapshottable,
                    PreconditionViolation, Snapshot, as_int, resume, snapshot)


class DensityViolation(PreconditionViolation):
    """No fresh stock when the enumerator needed one."""


@dataclass
class Stock:
    a: int
    start: Snapshot
    b: int
    end: Snapshot

    @property
    def length(self) -> int:
        return self.b - self.a


def _is_output(out) -> bool:
    return out is not None and out is not DONE


class StockRegularizer(Enumerator):
    def __init__(self, inner: Enumerator, h: int, p: int, q: int, cost: CostModel = DEFAULT_COST):
        super().__init__(cost)
        if not inner.snapshottable:
            raise NotSnapshottable(f"{type(inner).__name__} cannot be regularized with stocks")
        if min(h, p, q) < 1:
            raise ValueError("need h, p, q >= 1")
        self.h, self.p, self.q = h, p, q
        self.hq = h * q
        # one unit per enumerator step is left as slack for the explorer's snapshot
        # copies and its overshoot past the credit, so windows stay within 2hq per step
        self.ex_speed = max(1, 2 * self.hq - 2)

        self.ex = copy.deepcopy(inner)
        self.ex_credit = 0
        self.ex_last = self.ex.clock
        self.run_a = 0
        self.run_start = snapshot(self.ex)
        self.last_out = self.run_start
        self.stock: Optional[Stock] = None
        self.claimed_b = 0

        self.mode = "simple"
        self.main: Optional[Enumerator] = inner
        self.main_last = inner.clock
        self.stop_a: Optional[int] = None
        self.fill: Optional[Enumerator] = None
        self.fill_end = 0
        self.third: Optional[Enumerator] = None
        self.in_use: Optional[Stock] = None
        self.phase = "fill"
        self.rear_left = 0

        self.fills = 0
        self.switches = 0

    # explorer -----------------------------------------------------------

    def _frontier(self) -> int:
        f = self.main.outputs if self.main is not None else 0
        if self.fill is not None:
            f = max(f, self.fill.outputs)
        return max(f, self.claimed_b)

    def _consider(self, cand: Stock) -> None:
        if cand.length <= 0 or cand.a < self._frontier():
            return
        cur = self.stock
        if cur is None or cur.a < self._frontier() or cand.length > cur.length:
            self.stock = cand

    def _run_explorer(self, budget: int) -> int:
        ex = self.ex
        if ex.done:
            return 0
        self.ex_credit += budget
        spent = 0
        while self.ex_credit > 0 and not ex.done:
            before = ex.clock
            out = ex.step()
            used = ex.clock - before
            if _is_output(out):
                j = ex.outputs
                prev = self.last_out
                gap = ex.clock - self.ex_last > self.p
                self.ex_last = ex.clock
                self.last_out = snapshot(ex)
                used += self.cost.copy(self.last_out.size_bits)
                if gap:
                    self._consider(Stock(self.run_a, self.run_start, j - 1, prev))
                    self.run_a, self.run_start = j, self.last_out
            self.ex_credit -= used
            spent += used
        if ex.done:
            self.ex_credit = 0
            self._consider(self._current_run())
        return spent

    def _current_run(self) -> Stock:
        return Stock(self.run_a, self.run_start, self.last_out.index, self.last_out)

    def _take_stock(self) -> Optional[Stock]:
        front = self._frontier()
        best = None
        for cand in (self.stock, self._current_run()):
            if cand is None or cand.length <= 0 or cand.a < front:
                continue
            if best is None or cand.length > best.length:
                best = cand
        if best is not None:
            if best is self.stock:
                self.stock = None
            self.claimed_b = best.b
        return best

    # enumerator ---------------------------------------------------------

    def _enter_filling(self) -> int:
        st = self._take_stock()
        if st is None:
            raise DensityViolation(
                f"p-gap after output {self.main.outputs} (p={self.p}) with no fresh stock; "
                "the dense-interval precondition does not hold")
        self.in_use = st
        self.stop_a = st.a
        self.fill = resume(st.start)
        self.fill_end = st.b
        self.mode = "filling"
        self.phase = "fill"
        self.fills += 1
        charge = self.cost.copy(st.start.size_bits)
        if self.main.outputs >= self.stop_a:
            self._switch()
        return charge

    def _switch(self) -> None:
        self.main = self.fill
        self.main_last = self.fill.clock
        self.fill = None
        self.stop_a = None
        self.in_use = None
        self.mode = "simple"
        self.switches += 1

    def _enter_final(self) -> int:
        charge = 0
        if self.mode == "simple":
            st = self._take_stock()
            if st is not None and st.a > self.main.outputs:
                self.in_use = st
                self.stop_a = st.a
                self.fill = resume(st.start)
                self.fill_end = st.b
                self.phase = "fill"
                charge += self.cost.copy(st.start.size_bits)
        if self.in_use is not None:
            self.third = resume(self.in_use.end)
            charge += self.cost.copy(self.in_use.end.size_bits)
        self.mode = "final"
        return charge

    def _step_sim(self, sim: Enumerator):
        before = sim.clock
        out = sim.step()
        return out, sim.clock - before

    def _simple(self):
        out, spent = self._step_sim(self.main)
        if _is_output(out):
            self.main_last = self.main.clock
        elif (out is None and self.main.outputs > 0
              and self.main.clock - self.main_last >= self.p):
            spent += self._enter_filling()
        return out, spent

    def _filling(self):
        if self.phase == "fill":
            if self.fill.outputs >= self.fill_end:
                raise DensityViolation(
                    f"filling simulation exhausted the stock ({self.in_use.a}, {self.fill_end}] "
                    f"before the main simulation reached output {self.stop_a}")
            out, spent = self._step_sim(self.fill)
            if _is_output(out):
                self.phase, self.rear_left = "rear", self.hq
            return out, spent
        out, spent = self._step_sim(self.main)
        self.rear_left -= spent
        if self.main.outputs >= self.stop_a:
            self._switch()
        elif self.rear_left <= 0:
            self.phase = "fill"
        return out, spent

    def _final(self):
        if self.main is not None and (self.main.done or
                                      (self.stop_a is not None and self.main.outputs >= self.stop_a)):
            self.main = None
        if self.fill is not None and self.fill.outputs >= self.fill_end:
            self.fill = None
        if self.third is not None and self.third.done:
            self.third = None
        rear = self.main if self.main is not None else self.third
        if self.fill is None and rear is None:
            return DONE, 1
        if self.fill is not None and (self.phase == "fill" or rear is None):
            out, spent = self._step_sim(self.fill)
            if _is_output(out):
                self.phase, self.rear_left = "rear", self.hq
            return out, spent
        out, spent = self._step_sim(rear)
        if out is DONE:
            out = None
        self.rear_left -= spent
        if self.rear_left <= 0:
            self.phase = "fill"
        return out, spent

    def _advance(self):
        extra = 0
        if self.mode != "final" and self.ex.done:
            extra = self._enter_final()
        if self.mode == "simple":
            out, spent = self._simple()
        elif self.mode == "filling":
            out, spent = self._filling()
        else:
            out, spent = self._final()
            if out is DONE:
                return DONE, max(1, extra + spent)
        spent += extra
        return out, spent + self._run_explorer(self.ex_speed * spent)

    def space_bits(self):
        sims = sum(s.space_bits() for s in (self.main, self.fill, self.third, self.ex) if s is not None)
        snaps = {id(s): s.size_bits for s in (self.run_start, self.last_out)}
        for st in (self.stock, self.in_use):
            if st is not None:
                snaps[id(st.start)] = st.start.size_bits
                snaps[id(st.end)] = st.end.size_bits
        return sims + sum(snaps.values()) + 8 * 64


def stock_regularize(e: Enumerator, h, p, q, n: int = 1) -> StockRegularizer:
    return StockRegularizer(e, as_int(h, n), as_int(p, n), as_int(q, n))


def stock_delay_bound(h: int, p: int, q: int) -> int:
    """Worst-case delay in charged steps: ``2 q h (q h + p)``."""
    return 2 * q * h * (q * h + p)
