"""Trace serialization: a ``# {json}`` header line followed by CSV rows."""

from __future__ import annotations

import csv
import io
import json

from .core import EnumerationTrace

COLUMNS = ("index", "cumulative_steps", "solution_hex")


def dumps_trace(t: EnumerationTrace, instance_id: str = "", n: int = 0, cost_model: str = "word64") -> str:
    header = {
        "instance_id": instance_id,
        "n": n,
        "cost_model": cost_model,
        "peak_space_bits": t.peak_space_bits,
        "total_steps": t.total_steps,
        "start": t.start,
        "truncated": t.truncated,
    }
    header.update(t.meta)
    buf = io.StringIO()
    buf.write("# " + json.dumps(header, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for i, (ts, sol) in enumerate(zip(t.output_times, t.solutions), start=1):
        w.writerow((i, ts, sol.encode("ascii").hex()))
    return buf.getvalue()


def loads_trace(text: str) -> tuple:
    """Return ``(trace, header)``."""
    first, _, rest = text.partition("\n")
    if not first.startswith("# "):
        raise ValueError("missing JSON header line")
    header = json.loads(first[2:])
    rows = list(csv.reader(io.StringIO(rest)))
    if not rows or tuple(rows[0]) != COLUMNS:
        raise ValueError(f"expected columns {COLUMNS}")
    times, sols = [], []
    for k, (idx, ts, hx) in enumerate(rows[1:], start=1):
        if int(idx) != k:
            raise ValueError(f"row {k}: index {idx} out of sequence")
        times.append(int(ts))
        sols.append(bytes.fromhex(hx).decode("ascii"))
    meta = {k: v for k, v in header.items()
            if k not in ("instance_id", "n", "cost_model", "peak_space_bits", "total_steps", "start", "truncated")}
    t = EnumerationTrace(times, sols, header["total_steps"], header["peak_space_bits"],
                         header["truncated"], header.get("start", 0), meta)
    return t, header


def write_trace(path, t: EnumerationTrace, **header) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(dumps_trace(t, **header))


def read_trace(path) -> tuple:
    with open(path) as fh:
        return loads_trace(fh.read())
