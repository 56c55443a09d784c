"""Command-line entry point: ``foldideals code|betti|sweep``.

Reports are JSON on standard output (or ``--out``); a short human summary
goes to standard error.  Exit status: 0 success, 1 a check failed, 2 usage
or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .arrangement import max_multiplicity, singular_locus
from .betti import POLICIES, betti_k2, betti_k3
from .codes import hamming_hierarchy, min_weight_points
from .errors import FoldIdealsError, InputError, NeedsFiniteFieldError, RankError
from .exactalg import FieldSpec
from .forms import Arrangement, FormCollection, LinForm, parse_form, rank_of
from .ideals import FoldIdeal
from .oracle import is_linear, koszul_betti
from .sweeps import sweep

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


def load_document(data: dict) -> tuple[FormCollection, list[str] | None]:
    """Build a collection from an input document ``{"field", "k", "forms", "labels"?}``."""
    if not isinstance(data, dict):
        raise InputError("the input document must be a JSON object")
    for key in ("field", "k", "forms"):
        if key not in data:
            raise InputError(f"input document is missing {key!r}")
    field = FieldSpec.parse(data["field"])
    k = data["k"]
    if not isinstance(k, int) or k < 1:
        raise InputError("k must be a positive integer")
    forms = []
    for entry in data["forms"]:
        if isinstance(entry, str):
            forms.append(parse_form(entry, field, "xyzw"[:k] if k <= 4 else [f"x{i + 1}" for i in range(k)]))
        else:
            if len(entry) != k:
                raise InputError(f"form {entry!r} does not have {k} coefficients")
            forms.append(LinForm(field, tuple(entry)))
    labels = data.get("labels")
    if labels is not None and len(labels) != len(forms):
        raise InputError("labels and forms differ in length")
    return FormCollection(field, k, tuple(forms)), labels


def read_input(path: str) -> tuple[FormCollection, list[str] | None]:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return load_document(data)


def _summary(sigma: FormCollection) -> dict:
    out = {
        "field": sigma.field.to_json(),
        "k": sigma.k,
        "n": sigma.n,
        "rank": rank_of(sigma),
        "forms": sigma.to_json(),
    }
    if sigma.k == 3 and len(set(sigma.canonical_forms())) == sigma.n and sigma.n >= 2:
        locus = singular_locus(sigma)
        out["m"] = max_multiplicity(sigma)
        out["singular_locus"] = [
            {"point": p.to_json(sigma.field), "multiplicity": mult} for p, mult in locus.points
        ]
    return out


def cmd_code(sigma: FormCollection) -> dict:
    """Parameters, weight hierarchy and minimum-weight points of the dual code."""
    if rank_of(sigma) < sigma.k:
        raise RankError(f"the hierarchy needs rank k={sigma.k}; got rank {rank_of(sigma)}")
    profile = hamming_hierarchy(sigma)
    results = {"n": profile.n, "dim": profile.k_dim, "d": list(profile.d[1:])}
    try:
        results["min_weight_points"] = [q.to_json(sigma.field) for q in min_weight_points(sigma)]
    except NeedsFiniteFieldError as exc:
        results["min_weight_points"] = None
        results["note"] = str(exc)
    return {"input": _summary(sigma), "results": results, "verdicts": {}}


def cmd_betti(sigma: FormCollection, a: int, policy: str = "maxpoint", verify: bool = False,
              jmax: int | None = None) -> dict:
    """Betti triple (with recursion trace for three variables), optionally checked by the oracle."""
    if sigma.k == 2:
        triple = betti_k2(sigma, a)
        trace = None
    elif sigma.k == 3:
        triple, rec = betti_k3(Arrangement.of(sigma), a, policy=policy)
        trace = rec.to_json(sigma.field)
    else:
        raise InputError("betti supports k = 2 or k = 3")
    results = {"triple": triple.to_json(), "trace": trace}
    verdicts = {}
    if verify:
        table = koszul_betti(FoldIdeal(sigma, a), jmax)
        strand = table.linear_strand(a) + (0,) * (3 - sigma.k)
        agree = strand[:3] == triple.values and is_linear(table, a)
        results["oracle"] = table.to_json()
        verdicts["oracle"] = "agree" if agree else "disagree"
    return {"input": _summary(sigma), "results": results, "verdicts": verdicts}


def cmd_sweep(p: int, k: int, n: int, trials: int, seed: int, amode: str = "arrangement",
              only: int | None = None, jmax: int | None = None) -> dict:
    """Seeded randomized property sweep; timings are kept apart from the results."""
    body = sweep(p, k, n, trials, seed, amode, only, jmax)
    timings = body.pop("timings")
    return {"results": body, "verdicts": {"sweep": "pass" if body["passed"] else "fail"},
            "timings": timings}


def build_parser() -> argparse.ArgumentParser:
    def global_options(default):
        opts = argparse.ArgumentParser(add_help=False)
        opts.add_argument("--jmax", type=int, default=default, help="override the oracle's top degree")
        opts.add_argument("--out", default=default, help="write the JSON report to this file")
        return opts

    # accepted before or after the subcommand; SUPPRESS keeps the earlier value
    common = global_options(argparse.SUPPRESS)
    parser = argparse.ArgumentParser(prog="foldideals", description=__doc__.splitlines()[0],
                                     parents=[global_options(None)])
    sub = parser.add_subparsers(dest="command", required=True)

    p_code = sub.add_parser("code", parents=[common], help="code parameters and weight hierarchy")
    p_code.add_argument("input", help="input JSON document, or - for stdin")

    p_betti = sub.add_parser("betti", parents=[common], help="graded Betti numbers of I_a")
    p_betti.add_argument("input")
    p_betti.add_argument("--a", type=int, required=True)
    p_betti.add_argument("--policy", choices=POLICIES, default="maxpoint")
    p_betti.add_argument("--seed", type=int, default=0, help="seed for --policy random")
    p_betti.add_argument("--verify", action="store_true", help="compare with Koszul homology")

    p_sweep = sub.add_parser("sweep", parents=[common], help="randomized property sweep over GF(p)")
    p_sweep.add_argument("--p", type=int, required=True)
    p_sweep.add_argument("--k", type=int, default=3)
    p_sweep.add_argument("--n", type=int, required=True)
    p_sweep.add_argument("--trials", type=int, required=True)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--amode", choices=("multiset", "arrangement"), default="arrangement")
    p_sweep.add_argument("--only", type=int, default=None, help="run a single trial index (reproducers)")
    return parser


def _emit(report: dict, out: str | None):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(argv: list[str] | None = None) -> tuple[int, dict | None]:
    """Execute a command; returns (exit status, report)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    echo = {"command": args.command, "argv": list(argv) if argv is not None else sys.argv[1:]}
    t0 = time.perf_counter()
    try:
        if args.command == "code":
            sigma, _ = read_input(args.input)
            report = cmd_code(sigma)
        elif args.command == "betti":
            sigma, _ = read_input(args.input)
            policy = f"random:{args.seed}" if args.policy == "random" else args.policy
            report = cmd_betti(sigma, args.a, policy, args.verify, args.jmax)
        else:
            if args.trials < 1:
                parser.error("--trials must be >= 1")
            report = cmd_sweep(args.p, args.k, args.n, args.trials, args.seed, args.amode,
                               args.only, args.jmax)
    except FoldIdealsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    report = {"echo": echo, **report}
    report.setdefault("timings", {})["seconds"] = round(time.perf_counter() - t0, 3)
    _emit(report, args.out)
    failed = any(v in ("disagree", "fail") for v in report.get("verdicts", {}).values())
    _human(report, sys.stderr)
    return (EXIT_CHECK_FAILED if failed else EXIT_OK), report


def _human(report: dict, stream):
    cmd = report["echo"]["command"]
    res = report["results"]
    if cmd == "code":
        print(f"n={res['n']} dim={res['dim']} d={res['d']}", file=stream)
    elif cmd == "betti":
        t = res["triple"]
        print(f"a={t['a']}: ({t['b1']}, {t['b2']}, {t['b3']}) {report['verdicts'] or ''}", file=stream)
    else:
        fails = sum(row["fail"] for row in res["tally"].values())
        print(f"sweep: {len(res['tally'])} checks, {fails} failures", file=stream)


def main(argv: list[str] | None = None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
