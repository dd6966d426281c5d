"""Queue amortization: release buffered solutions on a fixed k^(a+1) p(n) schedule."""

from __future__ import annotations

from collections import deque

from ..core import DEFAULT_COST, DONE, CostModel, Enumerator, PreconditionViolation, as_int, state_bits

# Charge of a release step beyond copying the solution: compute the next
# threshold and compare it with the counter.
QUEUE_BOOKKEEPING = 2


class QueueAmortizer(Enumerator):
    """Simulates ``inner`` one step at a time, queueing its outputs.

    When the inner step counter reaches ``p * k**(a+1)`` the head of the queue
    is released and ``k`` grows.  Once the inner enumerator stops the rest of
    the queue is flushed one solution per step.  Counter increments are folded
    into the simulated step.
    """

    def __init__(self, inner: Enumerator, a: int, p: int, cost: CostModel = DEFAULT_COST):
        super().__init__(cost)
        if a < 0 or p < 1:
            raise ValueError("need a >= 0 and p >= 1")
        self.inner = inner
        self.a = a
        self.p = p
        self.counter = 0
        self.k = 1
        self.queue = deque()
        self.release_counters = []

    @property
    def threshold(self) -> int:
        return self.p * self.k ** (self.a + 1)

    def _release(self):
        sol = self.queue.popleft()
        self.release_counters.append(self.counter)
        charge = self.cost.copy(len(sol)) + QUEUE_BOOKKEEPING * self.cost.words(self.threshold.bit_length())
        self.k += 1
        return sol, charge

    def _advance(self):
        if self.inner.done:
            if self.queue:
                return self._release()
            return DONE, 1
        if self.counter >= self.threshold:
            if self.queue:
                return self._release()
            raise PreconditionViolation(
                f"inner enumerator produced fewer than {self.k} solutions within "
                f"{self.threshold} steps (a={self.a}, p={self.p})")
        before = self.inner.clock
        out = self.inner.step()
        spent = self.inner.clock - before
        self.counter += spent
        if out is not None and out is not DONE:
            self.queue.append(out)
        return None, spent

    def space_bits(self):
        return (self.inner.space_bits() + state_bits(list(self.queue))
                + max(1, self.counter.bit_length()) + max(1, self.k.bit_length()))


def queue_amortize(e: Enumerator, a: int, p, n: int = 1) -> QueueAmortizer:
    """``p`` may be an int or a polynomial evaluated at ``n``."""
    return QueueAmortizer(e, a, as_int(p, n))


def queue_delay_bound(k: int, a: int, p: int, s_words: int, max_inner_charge: int = 1) -> int:
    """Delay bound between outputs k and k+1 (k=0 is the first output)."""
    return p * ((k + 1) ** (a + 1) - k ** (a + 1)) + max_inner_charge - 1 + s_words + QUEUE_BOOKKEEPING
