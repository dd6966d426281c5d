"""Write the DIMACS round-trip corpus used by the acceptance suite.

Hand-written edge cases plus seeded random formulas in assorted layouts
(comments between clauses, clauses split over lines, tabs, a '%' trailer).
"""

import argparse
import os
import random

EDGE_CASES = {
    "empty-formula": "p cnf 0 0\n",
    "no-clauses": "c tautology over three variables\np cnf 3 0\n",
    "empty-clause": "p cnf 2 1\n0\n",
    "empty-and-unit": "p cnf 2 3\n1 0\n0\n-2 0\n",
    "units-only": "p cnf 4 4\n1 0\n-2 0\n3 0\n-4 0\n",
    "single-unit": "p cnf 1 1\n1 0\n",
    "comments-everywhere": "c head\nc\np cnf 3 2\nc between\n1 -2 0\nc again\n3 0\nc tail\n",
    "multiline-clause": "p cnf 5 2\n1\n2\n3 0\n-4\n  -5 0\n",
    "several-per-line": "p cnf 3 3\n1 0 2 0 -3 0\n",
    "percent-trailer": "p cnf 3 2\n1 2 0\n-3 0\n%\n0\n\n",
    "tabs-and-spaces": "p cnf 3 2\n\t1\t-3  0\n   2 0   \n",
    "blank-lines": "\n\np cnf 2 1\n\n1 2 0\n\n",
    "repeated-literal": "p cnf 2 1\n1 1 -2 0\n",
    "tautological-clause": "p cnf 2 1\n1 -1 0\n",
    "wide-clause": "p cnf 12 1\n" + " ".join(str(i) for i in range(1, 13)) + " 0\n",
    "unused-variables": "p cnf 9 1\n3 0\n",
    "crlf-line-endings": "p cnf 2 2\r\n1 0\r\n-2 0\r\n",
    "pigeonhole-2-1": "c two pigeons one hole\np cnf 2 3\n1 0\n2 0\n-1 -2 0\n",
}


def random_text(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 20)
    m = rng.randint(0, 30)
    lines = [f"c random formula seed {seed}"] if rng.random() < 0.5 else []
    lines.append(f"p cnf {n} {m}")
    for _ in range(m):
        width = rng.randint(0 if rng.random() < 0.05 else 1, min(n, 5))
        lits = [v * rng.choice((1, -1)) for v in rng.sample(range(1, n + 1), width)]
        if rng.random() < 0.2 and len(lits) > 1:
            cut = rng.randint(1, len(lits) - 1)
            lines.append(" ".join(map(str, lits[:cut])))
            lines.append(" ".join(map(str, lits[cut:] + [0])))
        else:
            lines.append(" ".join(map(str, lits + [0])))
        if rng.random() < 0.1:
            lines.append("c note")
    return "\n".join(lines) + "\n"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir")
    ap.add_argument("--count", type=int, default=50)
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    files = dict(EDGE_CASES)
    seed = 0
    while len(files) < args.count:
        files[f"random-{seed:02d}"] = random_text(seed)
        seed += 1
    for name, text in files.items():
        with open(os.path.join(args.outdir, name + ".cnf"), "w", newline="") as fh:
            fh.write(text)


if __name__ == "__main__":
    main()
