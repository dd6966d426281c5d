"""Command-line experiments: profile, regularize, sample and pad-bench.

Every subcommand writes CSV (traces or per-trial rows) and a JSON summary.
With ``--out DIR`` the files land in ``DIR``; otherwise the summary goes to
stdout.  The exit status is 0 exactly when every bound check in the summary
passed.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from .core import DEFAULT_COST, EnumerationError, Poly, check_incremental, detect_gaps, record_trace
from .problems.allsat import flashlight_allsat
from .problems.cnf import DimacsError, InstanceTooLarge, read_dimacs
from .problems.explicit import explicit_generator, read_explicit_set
from .problems.pad import PaddedInstance, pad_enumerator, parse_fraction
from .problems.scripted import ScriptedEnumerator, burst, doubling_blocks
from .regularizers.queue import QUEUE_BOOKKEEPING, queue_amortize, queue_delay_bound
from .regularizers.shortcut import shortcut_delay_bound, shortcut_regularize
from .regularizers.stock import stock_delay_bound, stock_regularize
from .sampling import SamplingConfig, SampleEnumerator, SketchSampleEnumerator
from .traceio import dumps_trace


class UsageError(Exception):
    pass


# inner enumerators ------------------------------------------------------

def read_times(path) -> list:
    """Scripted output times, one integer per line; '#' starts a comment."""
    times = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                times.extend(int(x) for x in line.replace(",", " ").split())
    return times


def build_inner(args):
    """Return ``(enumerator, n, instance_id)`` for the selected inner kind."""
    kind = args.inner
    if kind in ("flashlight", "pad"):
        if not args.input:
            raise UsageError(f"--inner {kind} needs --input CNF")
        phi = read_dimacs(args.input)
        n = args.n or phi.size
        if kind == "flashlight":
            return flashlight_allsat(phi), n, os.path.basename(args.input)
        inst = PaddedInstance(phi, args.t)
        return pad_enumerator(inst), n, f"{os.path.basename(args.input)}@t={args.t}"
    if kind == "scripted":
        if not args.input:
            raise UsageError("--inner scripted needs --input with output times")
        return ScriptedEnumerator(read_times(args.input)), args.n or 1, os.path.basename(args.input)
    if kind == "burst":
        return burst(args.size), args.n or 1, f"burst-{args.size}"
    if kind == "blocks":
        return doubling_blocks(args.rounds, args.gap), args.n or 1, f"blocks-{args.rounds}-{args.gap}"
    raise UsageError(f"unknown inner kind {kind!r}")


def max_step_charge(e) -> int:
    """Largest single-step charge of ``e``, measured on a copy."""
    e = copy.deepcopy(e)
    worst = 0
    while not e.done:
        before = e.clock
        e.step()
        worst = max(worst, e.clock - before)
    return worst


def _poly(text, default=None):
    if text is None:
        if default is None:
            return None
        return Poly(default)
    try:
        return Poly.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad coefficient list {text!r}: {exc}") from None


def trace_summary(t, p=None):
    out = {
        "outputs": len(t),
        "total_steps": t.total_steps,
        "max_delay": t.max_delay(),
        "average_delay": t.average_delay(),
        "peak_space_bits": t.peak_space_bits,
    }
    if p is not None:
        out["p"] = p
        out["gaps"] = detect_gaps(t, p)
    return out


# output -----------------------------------------------------------------

def emit(args, files: dict, summary: dict) -> int:
    checks = summary.get("checks", {})
    ok = all(checks.values())
    summary["verdict"] = "PASS" if ok else "FAIL"
    text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for name, body in files.items():
            with open(os.path.join(args.out, name), "w", newline="") as fh:
                fh.write(body)
        with open(os.path.join(args.out, "summary.json"), "w") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return 0 if ok else 1


# subcommands ------------------------------------------------------------

def cmd_profile(args) -> int:
    e, n, iid = build_inner(args)
    t = record_trace(e, args.step_budget)
    p = _poly(args.p_coeffs)
    summary = {"subcommand": "profile", "instance": iid, "n": n,
               **trace_summary(t, p(n) if p else None)}
    checks = {}
    if not t.truncated:
        fit = check_incremental(t, args.a, n, args.b, args.c, include_termination=True)
        summary["incremental_fit"] = {"a": fit.a, "b": fit.b, "c": fit.c, "violation": fit.violation}
        if args.c is not None:
            checks["incremental"] = fit.ok
    else:
        checks["complete"] = False
    summary["checks"] = checks
    return emit(args, {"trace.csv": dumps_trace(t, instance_id=iid, n=n)}, summary)


def cmd_regularize(args) -> int:
    inner, n, iid = build_inner(args)
    charge = max_step_charge(inner)
    t_in = record_trace(copy.deepcopy(inner))
    sol_words = max((DEFAULT_COST.copy(len(s)) for s in t_in.solutions), default=1)
    summary = {"subcommand": "regularize", "scheme": args.scheme, "instance": iid, "n": n,
               "max_inner_charge": charge}
    checks = {}
    h, q = _poly(args.h_coeffs, 1)(n), _poly(args.q_coeffs, 1)(n)
    p_poly = _poly(args.p_coeffs)

    if args.scheme == "queue":
        a = args.a_int
        if p_poly is None:
            # tightest p with k solutions (or termination) within p k^(a+1) steps
            times = t_in.output_times + [t_in.total_steps]
            p = max(math.ceil(ti / k ** (a + 1)) for k, ti in enumerate(times, 1))
        else:
            p = p_poly(n)
        outer = queue_amortize(inner, a, p)
        t_out = record_trace(outer)
        bounds = [queue_delay_bound(k, a, p, sol_words, charge) for k in range(len(t_out))]
        checks["delay_bound"] = all(d <= b for d, b in zip(t_out.delays(), bounds))
        summary.update(a=a, p=p, bookkeeping=QUEUE_BOOKKEEPING, s_words=sol_words,
                       release_counters=outer.release_counters)
    elif args.scheme == "shortcut":
        p = (p_poly or Poly(max(1, t_in.max_delay())))(n)
        outer = shortcut_regularize(inner, h, p, q)
        t_out = record_trace(outer)
        bound = shortcut_delay_bound(h, p, outer.max_jump_charge, charge)
        g = len(detect_gaps(t_in, p))
        checks["no_gaps_at_bound"] = not detect_gaps(t_out, bound)
        checks["same_order"] = t_out.solutions == t_in.solutions
        checks["stored_pairs"] = outer.stored_total == g
        summary.update(h=h, p=p, q=q, p_prime=bound, inner_gaps=g,
                       stored_pairs=outer.stored_total, jumps=outer.jumps)
    else:
        p = (p_poly or Poly(1))(n)
        outer = stock_regularize(inner, h, p, q)
        t_out = record_trace(outer)
        bound = stock_delay_bound(h, p, q)
        checks["delay_bound"] = t_out.max_delay() <= bound
        summary.update(h=h, p=p, q=q, bound=bound, fills=outer.fills, switches=outer.switches)

    checks["set_equal"] = set(t_out.solutions) == set(t_in.solutions)
    checks["no_duplicates"] = len(set(t_out.solutions)) == len(t_out.solutions)
    summary["inner"] = trace_summary(t_in)
    summary["outer"] = trace_summary(t_out)
    summary["checks"] = checks
    files = {"inner.csv": dumps_trace(t_in, instance_id=iid, n=n),
             "outer.csv": dumps_trace(t_out, instance_id=f"{args.scheme}({iid})", n=n)}
    return emit(args, files, summary)


def trial_seeds(seed: int, trials: int) -> list:
    """Independent per-trial seeds from a splittable seed sequence."""
    return [int(s.generate_state(1, np.uint64)[0]) for s in np.random.SeedSequence(seed).spawn(trials)]


def run_trial(sset, args, seed: int) -> dict:
    gen = explicit_generator(sset, seed=seed, bias=args.bias)
    cfg = SamplingConfig(args.epsilon, sset.p_bits)
    if args.sketch:
        e = SketchSampleEnumerator(gen, cfg)
    else:
        e = SampleEnumerator(gen, cfg)
    t = record_trace(e)
    full = set(sset.solutions)
    distinct = set(t.solutions)
    if args.sketch:
        first = {}
        for i, s in enumerate(t.solutions, start=1):
            first.setdefault(s, i)
        complete_at = max(first.values()) if distinct == full else 0
    else:
        complete_at = e.last_new_draw if distinct == full else 0
    return {
        "seed": seed,
        "draws": e.r,
        "emitted": len(t),
        "distinct": len(distinct),
        "covered": int(distinct == full),
        "duplicates": len(t) - len(distinct),
        "draws_to_complete": complete_at,
        "peak_space_bits": t.peak_space_bits,
    }


def cmd_sample(args) -> int:
    if not args.input:
        raise UsageError("sample needs --input with an explicit-set file")
    sset = read_explicit_set(args.input)
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    seeds = trial_seeds(args.seed, args.trials)
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        rows = list(pool.map(lambda s: run_trial(sset, args, s), seeds))
    buf = io.StringIO()
    cols = ["trial", "seed", "draws", "emitted", "distinct", "covered", "duplicates",
            "draws_to_complete", "peak_space_bits"]
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for i, row in enumerate(rows):
        w.writerow({"trial": i, **row})
    n_tr = len(rows)
    eps = args.epsilon
    coverage = sum(r["covered"] for r in rows) / n_tr
    bar = 1 - eps - 3 * math.sqrt(eps * (1 - eps) / n_tr)
    done = [r["draws_to_complete"] for r in rows if r["covered"]]
    summary = {
        "subcommand": "sample", "instance": os.path.basename(args.input), "s": len(sset),
        "epsilon": eps, "seed": args.seed, "trials": n_tr, "sketch": bool(args.sketch),
        "coverage_fraction": coverage, "coverage_bar": bar,
        "mean_draws_to_complete": sum(done) / len(done) if done else None,
        "max_peak_space_bits": max(r["peak_space_bits"] for r in rows),
        "checks": {"coverage": coverage >= bar},
    }
    if not args.sketch:
        summary["checks"]["no_duplicates"] = all(r["duplicates"] == 0 for r in rows)
    return emit(args, {"trials.csv": buf.getvalue()}, summary)


def cmd_pad_bench(args) -> int:
    args.inner = "pad"
    e, n, iid = build_inner(args)
    inst = e.inst
    t = record_trace(e)
    a = float(1 / parse_fraction(args.t))
    fit = check_incremental(t, a, n, args.b, args.c, include_termination=True)
    summary = {"subcommand": "pad-bench", "instance": iid, "n": n, "n_vars": inst.n,
               "t": args.t, "k_pad": inst.k_pad, "expected_outputs": inst.expected_count(),
               **trace_summary(t),
               "incremental_fit": {"a": a, "b": fit.b, "c": fit.c, "violation": fit.violation}}
    checks = {"cardinality": len(t) == inst.expected_count()}
    if args.c is not None:
        checks["incremental"] = fit.ok
    summary["checks"] = checks
    return emit(args, {"trace.csv": dumps_trace(t, instance_id=iid, n=n)}, summary)


# parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="enumdelay", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, inner=True):
        sp.add_argument("--input", help="input file (DIMACS CNF, output-times list or explicit set)")
        sp.add_argument("--out", help="output directory for CSV and summary.json")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--n", type=int, default=None, help="input size used to evaluate polynomials")
        if inner:
            sp.add_argument("--inner", default="flashlight",
                            choices=["flashlight", "pad", "scripted", "burst", "blocks"])
            sp.add_argument("--t", default="1", help="padding exponent p/q in (0,1]")
            sp.add_argument("--size", type=int, default=64, help="burst size")
            sp.add_argument("--rounds", type=int, default=5, help="doubling-block rounds")
            sp.add_argument("--gap", type=int, default=100, help="doubling-block gap length")
            sp.add_argument("--p-coeffs", help="p(n) coefficients, lowest degree first")

    sp = sub.add_parser("profile", help="trace an enumerator and summarize delays")
    common(sp)
    sp.add_argument("--a", type=float, default=1.0, help="solution-count exponent for the fit")
    sp.add_argument("--b", type=float, default=0.0, help="input-size exponent for the fit")
    sp.add_argument("--c", type=float, default=None, help="constant to check the fit against")
    sp.add_argument("--step-budget", type=int, default=None)
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("regularize", help="run a regularizer and check its delay bound")
    common(sp)
    sp.add_argument("--scheme", choices=["queue", "shortcut", "stock"], default="queue")
    sp.add_argument("--h-coeffs", help="average delay h(n)")
    sp.add_argument("--q-coeffs", help="gap count or density bound q(n)")
    sp.add_argument("--a", dest="a_int", type=int, default=0, help="queue exponent a")
    sp.set_defaults(func=cmd_regularize)

    sp = sub.add_parser("sample", help="seeded trials of the sampling enumerators")
    common(sp, inner=False)
    sp.add_argument("--epsilon", type=float, default=0.1)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--sketch", action="store_true", help="use the sketch loop (repetitions allowed)")
    sp.add_argument("--bias", type=Fraction, default=None, help="declared bias for weighted sets")
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("pad-bench", help="padded-instance cardinality and incremental fit")
    common(sp, inner=False)
    sp.add_argument("--t", default="1/2", help="padding exponent p/q in (0,1]")
    sp.add_argument("--b", type=float, default=1.0, help="input-size exponent for the fit")
    sp.add_argument("--c", type=float, default=None, help="constant to check the fit against")
    sp.set_defaults(func=cmd_pad_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DimacsError, InstanceTooLarge, EnumerationError, OSError, ValueError) as exc:
        print(f"enumdelay: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
