"""Command-line driver: canned verifications, coset searches, q-scans,
point-count reports, and witness re-validation.

Exit codes: 0 = determination made (a witness OR a verified absence -
absence is data), 1 = a verification/validation failed, 2 = usage or
runtime error.  All output is UTF-8 with newline-terminated rows; JSON
for witnesses (audit-bearing), CSV for tables.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, fields
from typing import Optional

from .ffield import make_field, prime_power
from .mat2 import PSL, PGL, canon, mat_from_text
from .search import (ScanRow, Witness, coset_all_divisible, make_witness,
                     none_doc, run_task, scan_q, task_admissible,
                     verify_char2, verify_paige, verify_thompson27,
                     TASKS, _task_subgroup)
from .variety import lang_weil_report, X_DIM, Y_DIM

SCAN_HEADER = ["q", "p", "task", "found", "witness", "count", "ms"]
COUNT_HEADER = ["which", "q", "p", "dim", "count", "deviation", "note"]
DEFAULT_BUDGET = 10 ** 8


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("PSL2COSET_WORKERS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class RunConfig:
    """One fully-specified invocation; round-trips through its argv form."""
    command: str
    target: Optional[str] = None       # verify: which check; validate: path
    q: Optional[int] = None
    qmin: Optional[int] = None
    qmax: Optional[int] = None
    p: Optional[int] = None
    task: Optional[str] = None
    ambient: str = PSL
    mode: str = "first"
    which: Optional[str] = None        # count: X | Y
    out: Optional[str] = None
    fmt: Optional[str] = None          # json | csv; None = command default
    workers: int = 1
    budget: int = DEFAULT_BUDGET
    resume_from: Optional[int] = None
    timings: bool = False

    def to_args(self) -> list[str]:
        """Canonical argv whose parse reproduces this config exactly."""
        argv = [self.command]
        if self.target is not None:
            argv.append(self.target)
        flagged = [("--q", self.q), ("--qmin", self.qmin),
                   ("--qmax", self.qmax), ("--p", self.p),
                   ("--task", self.task), ("--ambient", self.ambient),
                   ("--mode", self.mode), ("--which", self.which),
                   ("--out", self.out), ("--format", self.fmt),
                   ("--workers", self.workers), ("--budget", self.budget),
                   ("--resume-from", self.resume_from)]
        for flag, val in flagged:
            if val is None:
                continue
            if flag == "--ambient" and val == PSL:
                continue
            if flag == "--mode" and val == "first":
                continue
            if flag == "--workers" and val == default_workers():
                continue
            if flag == "--budget" and val == DEFAULT_BUDGET:
                continue
            argv += [flag, str(val)]
        if self.timings:
            argv.append("--timings")
        return argv


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="psl2coset",
        description="cosets of small subgroups of PSL2(q)/PGL2(q) whose "
                    "elements all have order divisible by p")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, q=False, qrange=False, p=False, task=False):
        if q:
            sp.add_argument("--q", type=int, help="field size (prime power)")
        if qrange:
            sp.add_argument("--qmin", type=int, default=None)
            sp.add_argument("--qmax", type=int, default=None)
        if p:
            sp.add_argument("--p", type=int, help="the prime p")
        if task:
            sp.add_argument("--task", choices=TASKS)
        sp.add_argument("--ambient", choices=(PSL, PGL), default=PSL)
        sp.add_argument("--mode", choices=("first", "all"), default="first")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--format", dest="fmt", choices=("json", "csv"),
                        default=None)
        sp.add_argument("--workers", type=int, default=default_workers())
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    v = sub.add_parser("verify", help="run a canned reproduction")
    v.add_argument("target", choices=("paige", "char2", "thompson27"))
    common(v)

    s = sub.add_parser("search", help="search one q for a witness coset")
    common(s, q=True, p=True, task=True)

    sc = sub.add_parser("scan", help="scan a q-range for witness cosets")
    common(sc, q=True, qrange=True, p=True, task=True)
    sc.add_argument("--resume-from", dest="resume_from", type=int,
                    default=None, help="skip q below this value")
    sc.add_argument("--timings", action="store_true",
                    help="fill the ms column (non-deterministic)")

    c = sub.add_parser("count", help="rational point counts with deviations")
    common(c, q=True, qrange=True, p=True)
    c.add_argument("--which", choices=("X", "Y"), default="X")

    val = sub.add_parser("validate", help="re-validate a witness JSON file")
    val.add_argument("target", help="path to a witness JSON document")
    common(val)
    return ap


def parse_config(argv) -> RunConfig:
    ap = build_parser()
    ns = ap.parse_args(argv)
    kw = {}
    names = {f.name for f in fields(RunConfig)}
    for k, v in vars(ns).items():
        if k in names:
            kw[k] = v
    cfg = RunConfig(**kw)
    problem = config_problem(cfg)
    if problem:
        ap.error(problem)          # exits 2
    return cfg


def config_problem(cfg: RunConfig) -> Optional[str]:
    """The diagnostic for an invalid combination, or None.

    Every rejection names the violated hypothesis so a failed parse reads
    as a statement about the mathematics, not just about the flags.
    """
    if cfg.workers < 1:
        return "--workers must be at least 1"
    if cfg.budget < 1:
        return "--budget must be positive"
    if cfg.command in ("search", "scan"):
        if cfg.p is None or cfg.task is None:
            return "--p and --task are required"
        if cfg.task in ("klein", "a4"):
            if cfg.p != 2:
                return (f"task={cfg.task} studies the Klein four subgroup: "
                        "p must be 2 (parity of element orders)")
            if cfg.ambient != PSL:
                return (f"task={cfg.task} is defined inside psl "
                        "(the Sylow/normalizer structure used)")
        if cfg.task == "dihedral" and cfg.p < 3:
            return ("task=dihedral needs an odd prime p "
                    "(the rotation subgroup has order p)")
    if cfg.command == "search":
        if cfg.q is None:
            return "search needs --q"
        if not task_admissible(cfg.task, cfg.p, cfg.q):
            return (f"(p={cfg.p}, q={cfg.q}) violates the task hypotheses: "
                    + _admissibility_reason(cfg.task, cfg.p, cfg.q))
    if cfg.command == "scan":
        if cfg.q is None and cfg.qmax is None:
            return "scan needs --qmax (with optional --qmin) or --q"
        if cfg.fmt == "json":
            return "scan emits CSV tables; --format json is not available"
    if cfg.command == "count":
        if cfg.p is None:
            return "--p is required"
        if cfg.p < 3:
            return "point counts need an odd prime p (trace-set hypotheses)"
        if cfg.q is None and cfg.qmax is None:
            return "count needs --qmax (with optional --qmin) or --q"
        if cfg.fmt == "json":
            return "count emits CSV tables; --format json is not available"
    if cfg.command in ("verify", "search", "validate") and cfg.fmt == "csv":
        return f"{cfg.command} emits witness JSON; --format csv is not available"
    return None


def _admissibility_reason(task: str, p: int, q: int) -> str:
    pp = prime_power(q)
    if pp is None:
        return f"q={q} is not a prime power"
    r = pp[0]
    if r == 2:
        return "the field has characteristic 2 (odd characteristic required)"
    if task in ("klein", "a4"):
        return (f"q={q} is {q % 8} mod 8; the Klein four subgroup is Sylow "
                "only for q = 3 or 5 mod 8")
    if p == r:
        return f"p equals the field characteristic {r}"
    if (q - 1) % p != 0:
        return f"{p} does not divide q-1 = {q - 1}"
    if (q - 1) % (p * p) == 0:
        return f"{p}^2 divides q-1 = {q - 1} (exact divisibility required)"
    return "hypotheses hold"     # unreachable when called on a rejection


# ---------------------------------------------------------------------------
# output plumbing

def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _q_values(cfg: RunConfig) -> list[int]:
    if cfg.q is not None:
        return [cfg.q]
    lo = cfg.qmin if cfg.qmin is not None else 2
    return list(range(lo, cfg.qmax + 1))


# ---------------------------------------------------------------------------
# subcommands

VERIFY_TASKS = {"paige": "klein", "thompson27": "klein", "char2": "a4"}


def cmd_verify(cfg: RunConfig) -> int:
    runner = {"paige": verify_paige, "char2": verify_char2,
              "thompson27": verify_thompson27}[cfg.target]
    try:
        w = runner()
    except (AssertionError, ValueError) as exc:
        print(f"verification {cfg.target} FAILED: {exc}", file=sys.stderr)
        return 1
    doc = w.to_doc(task=VERIFY_TASKS[cfg.target])
    doc["check"] = cfg.target
    _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", cfg.out)
    return 0


def cmd_search(cfg: RunConfig) -> int:
    ctx = make_field(*prime_power(cfg.q))
    witness, count = run_task(ctx, cfg.task, cfg.p, mode="auto",
                              which=cfg.mode, workers=cfg.workers,
                              budget=cfg.budget, ambient=cfg.ambient)
    if witness is None:
        method = "variety" if (cfg.task == "dihedral"
                               and cfg.mode == "first") else "brute"
        doc = none_doc(cfg.q, cfg.p, cfg.ambient, method, cfg.task)
        if count is not None:
            doc["count"] = count
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", cfg.out)
        return 0
    doc = witness.to_doc(task=cfg.task)
    if count is not None:
        doc["count"] = count
    _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", cfg.out)
    return 0


def cmd_scan(cfg: RunConfig) -> int:
    qs = [q for q in _q_values(cfg)
          if cfg.resume_from is None or q >= cfg.resume_from]
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    wr.writerow(SCAN_HEADER)

    def sink(row: ScanRow) -> None:
        wr.writerow(row.csv_fields())
        if row.error:
            print(f"q={row.q}: {row.error}", file=sys.stderr)

    scan_q(cfg.task, cfg.p, qs, mode="auto", which=cfg.mode,
           workers=cfg.workers, budget=cfg.budget, timings=cfg.timings,
           sink=sink, ambient=cfg.ambient)
    _emit(buf.getvalue(), cfg.out)
    return 0


def cmd_count(cfg: RunConfig) -> int:
    qs = _q_values(cfg)
    if cfg.q is None:       # sweeping a range: composites name no field
        qs = [q for q in qs
              if (pp := prime_power(q)) is not None and pp[0] != 2]
    notes: list = []
    rows = lang_weil_report(cfg.p, qs, which=cfg.which, notes=notes)
    by_q = {pc.q: pc for pc in rows}
    note_by_q = dict(notes)
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    wr.writerow(COUNT_HEADER)
    dim = X_DIM if cfg.which == "X" else Y_DIM
    for q in qs:
        if q in by_q:
            wr.writerow(by_q[q].csv_fields())
        else:
            wr.writerow([cfg.which, str(q), str(cfg.p), str(dim), "", "",
                         note_by_q.get(q, "skipped")])
    _emit(buf.getvalue(), cfg.out)
    return 0


def cmd_validate(cfg: RunConfig) -> int:
    try:
        with open(cfg.target, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read witness document: {exc}", file=sys.stderr)
        return 2
    try:
        if not doc.get("found", False):
            raise ValueError("document records an absence; no witness to "
                             "validate")
        q, p = int(doc["q"]), int(doc["p"])
        task, ambient = doc["task"], doc["ambient"]
        pp = prime_power(q)
        if pp is None:
            raise ValueError(f"q={q} is not a prime power")
        ctx = make_field(*pp)
        H, d = _task_subgroup(ctx, task, p, ambient)
        g = canon(mat_from_text(ctx, doc["g"]), ambient)
    except (KeyError, ValueError, AssertionError) as exc:
        print(f"malformed witness document: {exc}", file=sys.stderr)
        return 2
    try:
        w = make_witness(g, H, d, doc.get("method", "brute"))
    except ValueError as exc:
        print(f"INVALID: {exc}", file=sys.stderr)
        _emit(json.dumps({"valid": False, "q": q, "task": task},
                         sort_keys=True, indent=2) + "\n", cfg.out)
        return 1
    recomputed = {(pt.text, o) for pt, o in w.audit}
    claimed = {(a["element"], int(a["order"])) for a in doc.get("audit", [])}
    if doc.get("audit") and recomputed != claimed:
        print("INVALID: audit table does not match recomputation",
              file=sys.stderr)
        _emit(json.dumps({"valid": False, "q": q, "task": task},
                         sort_keys=True, indent=2) + "\n", cfg.out)
        return 1
    _emit(json.dumps({"valid": True, "q": q, "task": task, "p": p,
                      "ambient": ambient, "g": doc["g"]},
                     sort_keys=True, indent=2) + "\n", cfg.out)
    return 0


def main(argv=None) -> int:
    cfg = parse_config(sys.argv[1:] if argv is None else argv)
    handler = {"verify": cmd_verify, "search": cmd_search,
               "scan": cmd_scan, "count": cmd_count,
               "validate": cmd_validate}[cfg.command]
    try:
        return handler(cfg)
    except (ValueError, AssertionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
