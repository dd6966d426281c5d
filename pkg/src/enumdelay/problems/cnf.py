"""CNF formulas: DIMACS parsing/emission, evaluation and brute-force SAT."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

DEFAULT_MAX_VARS = 24


def max_vars() -> int:
    """Hard cap on brute-forced instance size (``ENUMDELAY_MAX_VARS``)."""
    return int(os.environ.get("ENUMDELAY_MAX_VARS", DEFAULT_MAX_VARS))


class DimacsError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    n_vars: int
    clauses: tuple

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            for lit in c:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise ValueError(f"literal {lit} out of range for {self.n_vars} variables")

    @property
    def size(self) -> int:
        """Encoding size: variables plus literal occurrences (at least 1)."""
        return max(1, self.n_vars + sum(len(c) for c in self.clauses))

    def evaluate(self, bits: Sequence[int]) -> bool:
        return all(any((bits[abs(l) - 1] == 1) == (l > 0) for l in c) for c in self.clauses)

    def eval_partial(self, bits: Sequence[int]) -> Optional[bool]:
        """Three-valued evaluation under a prefix assignment of variables 1..len(bits)."""
        k = len(bits)
        undecided = False
        for c in self.clauses:
            sat = False
            open_ = False
            for l in c:
                v = abs(l)
                if v > k:
                    open_ = True
                elif (bits[v - 1] == 1) == (l > 0):
                    sat = True
                    break
            if not sat:
                if not open_:
                    return False
                undecided = True
        return None if undecided else True


def parse_dimacs(text: str, strict: bool = True) -> CnfFormula:
    """Parse DIMACS CNF text.

    Clauses may span lines; each must end with ``0``.  A ``%`` line ends the
    clause section (SATLIB convention).  With ``strict`` the clause count must
    match the header.
    """
    n_vars = n_clauses = None
    clauses, current = [], []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        last_line = lineno
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            fields = line.split()
            if n_vars is not None:
                raise DimacsError("duplicate header", lineno)
            if len(fields) != 4 or fields[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", lineno)
            try:
                n_vars, n_clauses = int(fields[2]), int(fields[3])
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", lineno) from None
            if n_vars < 0 or n_clauses < 0:
                raise DimacsError("negative counts in header", lineno)
            continue
        if n_vars is None:
            raise DimacsError("clause before 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"non-integer token {tok!r}", lineno) from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > n_vars:
                raise DimacsError(f"literal {lit} exceeds {n_vars} variables", lineno)
            else:
                current.append(lit)
    if n_vars is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("last clause is missing its terminating 0", last_line)
    if strict and len(clauses) != n_clauses:
        raise DimacsError(f"header declares {n_clauses} clauses, found {len(clauses)}")
    return CnfFormula(n_vars, tuple(clauses))


def emit_dimacs(phi: CnfFormula, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {phi.n_vars} {len(phi.clauses)}")
    lines.extend(" ".join([*map(str, c), "0"]) for c in phi.clauses)
    return "\n".join(lines) + "\n"


def read_dimacs(path) -> CnfFormula:
    with open(path) as fh:
        return parse_dimacs(fh.read())


def assignments(n: int) -> Iterator[tuple]:
    """All assignments of ``n`` variables in lexicographic order (0 before 1)."""
    return itertools.product((0, 1), repeat=n)


def brute_force_sat(phi: CnfFormula) -> list:
    """Every satisfying assignment, lexicographically ordered."""
    if phi.n_vars > max_vars():
        raise InstanceTooLarge(f"{phi.n_vars} variables exceeds cap {max_vars()}")
    return [a for a in assignments(phi.n_vars) if phi.evaluate(a)]


def bits_to_str(bits: Sequence[int]) -> str:
    return "".join("1" if b else "0" for b in bits)


def str_to_bits(s: str) -> tuple:
    return tuple(int(ch) for ch in s)
