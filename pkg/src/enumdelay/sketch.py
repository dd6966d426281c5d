"""K-minimum-values distinct-count sketch with median-of-repetitions.

Each repetition hashes elements with a seeded 2-universal map
``x -> (a x + b) mod P`` over the prime ``P = 2**64 - 59`` and keeps the
``k_min`` smallest distinct hash values.  Below ``k_min`` distinct values the
count is exact.
"""

from __future__ import annotations

import bisect
import hashlib
import math
import random
import statistics
import struct
from typing import Callable, Optional, Sequence, Union

from .core import DEFAULT_COST, CostModel

PRIME = 2 ** 64 - 59
HASH_BITS = 64
BLOB_MAGIC = b"KMVS"
BLOB_VERSION = 1

# (k_min, repetitions) per failure budget; produced by scripts/calibrate_sketch.py
# for the all-times factor-2 guarantee on streams of up to 2**16 updates
# (failure rate at most delta/2 over 1000 calibration streams).
CALIBRATION_VERSION = 1
CALIBRATION = {
    0.25: (16, 1),
    0.10: (24, 1),
    0.05: (24, 1),
}


def calibrated_params(delta: float) -> tuple:
    """Smallest calibrated (k_min, repetitions) whose budget is at most ``delta``.

    Budgets below the table are met by multiplying the repetitions for the
    tightest row by the number of halvings needed.
    """
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    rows = sorted(CALIBRATION.items(), reverse=True)
    for d, params in rows:
        if d <= delta:
            return params
    d_min, (k, r) = rows[-1]
    extra = math.ceil(math.log2(d_min / delta))
    return k, r * (1 + 2 * extra)


def element_key(e: Union[str, int, bytes]) -> int:
    if isinstance(e, int):
        return e % PRIME
    if isinstance(e, str):
        e = e.encode("ascii")
    return int.from_bytes(hashlib.blake2b(e, digest_size=8).digest(), "big") % PRIME


class DistinctSketch:
    """Bounded-space 2-approximation of the number of distinct elements.

    ``hashes`` replaces the seeded hash family (one callable per repetition);
    it exists so tests can feed known hash values.
    """

    def __init__(self, k_min: int = 16, repetitions: int = 1, seed=None,
                 hashes: Optional[Sequence[Callable[[int], int]]] = None,
                 cost: CostModel = DEFAULT_COST):
        if k_min < 2 or repetitions < 1:
            raise ValueError("need k_min >= 2 and at least one repetition")
        self.k_min = k_min
        self.repetitions = repetitions
        self.cost = cost
        rng = random.Random(seed)
        self.params = [(rng.randrange(1, PRIME), rng.randrange(PRIME)) for _ in range(repetitions)]
        self._custom = list(hashes) if hashes is not None else None
        if self._custom is not None and len(self._custom) != repetitions:
            raise ValueError("one hash function per repetition")
        self.registers = [[] for _ in range(repetitions)]
        self._estimate = 0.0
        self.last_cost = 0

    @classmethod
    def for_delta(cls, delta: float, seed=None) -> "DistinctSketch":
        k, r = calibrated_params(delta)
        return cls(k, r, seed)

    def _hash(self, rep: int, key: int) -> int:
        if self._custom is not None:
            return self._custom[rep](key)
        a, b = self.params[rep]
        return (a * key + b) % PRIME

    def update(self, e) -> None:
        key = element_key(e)
        changed = False
        k = self.k_min
        for rep, regs in enumerate(self.registers):
            h = self._hash(rep, key)
            if len(regs) == k and h >= regs[-1]:
                continue
            i = bisect.bisect_left(regs, h)
            if i < len(regs) and regs[i] == h:
                continue
            regs.insert(i, h)
            if len(regs) > k:
                regs.pop()
            changed = True
        # hash (multiply, add, reduce) plus one comparison per repetition
        self.last_cost = 4 * self.repetitions
        if changed:
            self._estimate = self._compute()
            self.last_cost += self.repetitions

    def _compute(self) -> float:
        k = self.k_min
        if len(self.registers[0]) < k:
            return float(len(self.registers[0]))
        ests = [(k - 1) * PRIME / (regs[-1] + 1) for regs in self.registers]
        return statistics.median(ests)

    def estimate(self) -> float:
        return self._estimate

    def register_bits(self) -> int:
        return sum(len(r) for r in self.registers) * HASH_BITS

    def space_bits(self) -> int:
        return self.register_bits() + 2 * HASH_BITS * self.repetitions

    def to_bytes(self) -> bytes:
        out = [BLOB_MAGIC, struct.pack(">HII", BLOB_VERSION, self.k_min, self.repetitions)]
        for (a, b), regs in zip(self.params, self.registers):
            out.append(struct.pack(">QQI", a, b, len(regs)))
            out.append(struct.pack(f">{len(regs)}Q", *regs))
        return b"".join(out)

    @classmethod
    def from_bytes(cls, blob: bytes) -> "DistinctSketch":
        if blob[:4] != BLOB_MAGIC:
            raise ValueError("not a sketch blob")
        version, k, r = struct.unpack_from(">HII", blob, 4)
        if version != BLOB_VERSION:
            raise ValueError(f"unsupported sketch blob version {version}")
        sk = cls(k, r)
        off = 4 + struct.calcsize(">HII")
        params, regs_all = [], []
        for _ in range(r):
            a, b, m = struct.unpack_from(">QQI", blob, off)
            off += struct.calcsize(">QQI")
            regs = list(struct.unpack_from(f">{m}Q", blob, off))
            off += 8 * m
            params.append((a, b))
            regs_all.append(regs)
        sk.params, sk.registers = params, regs_all
        sk._estimate = sk._compute()
        return sk

    def __eq__(self, other):
        return (isinstance(other, DistinctSketch) and self.k_min == other.k_min
                and self.params == other.params and self.registers == other.registers)


def all_times_ok(sk: DistinctSketch, stream, factor: float = 2.0) -> bool:
    """Feed ``stream`` and check ``d/factor <= estimate <= factor*d`` after every update."""
    seen = set()
    for e in stream:
        sk.update(e)
        seen.add(e)
        d = len(seen)
        est = sk.estimate()
        if not d / factor <= est <= factor * d:
            return False
    return True


def random_stream(seed, max_updates: int = 2 ** 16) -> list:
    """A seeded test stream with repetitions: log-uniform length up to ``max_updates``."""
    rng = random.Random(seed)
    length = int(2 ** rng.uniform(4, math.log2(max_updates)))
    universe = max(1, int(length * rng.uniform(0.1, 2.0)))
    base = rng.getrandbits(48) << 16
    return [base + rng.randrange(universe) for _ in range(length)]
