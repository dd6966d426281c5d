"""Scripted enumerators: outputs at prescribed cumulative step counts."""

from __future__ import annotations

from typing import Optional, Sequence

from ..core import DEFAULT_COST, DONE, CostModel, Enumerator


def index_solution(i: int, width: int = 16) -> str:
    return format(i, f"0{width}b")


class ScriptedEnumerator(Enumerator):
    """Emits ``solutions[k]`` at unit step ``output_times[k]``.

    Terminates one step after the last output (or at ``end`` if given).
    The script itself is instance data; the working state is a step counter
    and a cursor.
    """

    _shared = ("times", "sols")

    def __init__(self, output_times: Sequence[int], solutions: Optional[Sequence[str]] = None,
                 end: Optional[int] = None, cost: CostModel = DEFAULT_COST):
        super().__init__(cost)
        times = list(output_times)
        if any(b <= a for a, b in zip(times, times[1:])) or (times and times[0] < 1):
            raise ValueError("output times must be positive and strictly increasing")
        if solutions is None:
            width = max(1, len(times).bit_length())
            solutions = [index_solution(i, width) for i in range(len(times))]
        if len(solutions) != len(times):
            raise ValueError("one solution per output time")
        self.times = tuple(times)
        self.sols = tuple(solutions)
        self.end = end if end is not None else (times[-1] + 1 if times else 1)
        if times and self.end <= times[-1]:
            raise ValueError("end must come after the last output")
        self.t = 0
        self.cursor = 0
        self.solution_bound = max((len(s) for s in self.sols), default=0)

    def _advance(self):
        self.t += 1
        if self.cursor < len(self.times) and self.times[self.cursor] == self.t:
            self.cursor += 1
            return self.sols[self.cursor - 1], 1
        if self.t >= self.end:
            return DONE, 1
        return None, 1

    def space_bits(self):
        return max(1, self.t.bit_length()) + max(1, self.cursor.bit_length())


def burst(n_solutions: int) -> ScriptedEnumerator:
    """All solutions at the very end: outputs at steps N, N+1, ..., 2N-1."""
    return ScriptedEnumerator(range(n_solutions, 2 * n_solutions))


def dense_with_gaps(k: int, gaps: dict, delay: int = 1) -> ScriptedEnumerator:
    """``k`` outputs every ``delay`` steps, with ``gaps[i]`` extra steps after output ``i``.

    Gap index 0 is before the first output.
    """
    times, t = [], 0
    for i in range(k):
        t += delay + gaps.get(i, 0)
        times.append(t)
    return ScriptedEnumerator(times)


def doubling_blocks(rounds: int, gap: int, delay: int = 1, first: int = 2) -> ScriptedEnumerator:
    """Blocks of ``first * 2**j`` dense outputs, each followed by one large gap."""
    times, t = [], 0
    for j in range(rounds):
        for _ in range(first * 2 ** j):
            t += delay
            times.append(t)
        t += gap
    return ScriptedEnumerator(times)
