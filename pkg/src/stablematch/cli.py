"""Command-line entry point: ``stablematch <subcommand> ...``.

Exit status is 0 on success, 1 when a verification finds a mismatch and 2 on
usage, parse or guard errors.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import census, classify, formulas, matching, sequences
from .profile import ProfileError, parse_profile, random_profile

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load_profile(args):
    if args.profile and args.random:
        raise UsageError("give either --profile or --random, not both")
    if args.profile:
        path = Path(args.profile)
        data = sys.stdin.buffer.read() if args.profile == "-" else path.read_bytes()
        return parse_profile(data)
    if args.random:
        return random_profile(args.random, np.random.default_rng(args.seed))
    raise UsageError("a profile is required: --profile FILE or --random N")


def _matching_result(profile, m, rounds=None) -> dict:
    costs = matching.pair_costs(profile, m)
    out = {
        "pairs": [[pc.man, pc.woman] for pc in costs],
        "costs": [pc.cost for pc in costs],
        "total": sum(pc.cost for pc in costs),
    }
    if rounds is not None:
        out["rounds"] = rounds
    return out


def _matching_text(res: dict) -> str:
    lines = [f"m{m} w{w} cost {c}" for (m, w), c in zip(res["pairs"], res["costs"])]
    tail = f"total {res['total']}"
    if "rounds" in res:
        tail += f" rounds {res['rounds']}"
    return "\n".join(lines + [tail])


# -- subcommands: each returns (result, text, exit status) --------------------

def cmd_solve(args):
    p = _load_profile(args)
    trace = matching.gale_shapley(p, args.side)
    res = _matching_result(p, trace.matching, trace.rounds)
    res["side"] = trace.side.value
    return res, _matching_text(res), EXIT_OK


def cmd_enumerate(args):
    p = _load_profile(args)
    found = [_matching_result(p, m) for m in matching.enumerate_stable(p)]
    text = "\n\n".join(_matching_text(r) for r in found) + f"\n\n{len(found)} stable matching(s)"
    return {"count": len(found), "matchings": found}, text, EXIT_OK


def cmd_classify(args):
    p = _load_profile(args)
    res = classify.profile_stats(p).to_dict()
    return res, json.dumps(res, indent=2), EXIT_OK


def cmd_formula(args):
    if args.list:
        rows = [{"name": f.name, "oeis": f.oeis, "takes_k": f.takes_k, "description": f.description}
                for f in formulas.FORMULAS.values()]
        text = "\n".join(f"{r['name']:<28} {r['oeis']:<26} {r['description']}" for r in rows)
        return rows, text, EXIT_OK
    if not args.name or args.n is None:
        raise UsageError("formula needs NAME and --n (or --list)")
    value = formulas.evaluate(args.name, args.n, args.k)
    return {"name": args.name, "n": args.n, "k": args.k, "value": value}, str(value), EXIT_OK


def _census_text(table: census.CensusTable, fmt: str) -> str:
    blocks = []
    for stat, rows in table.histograms.items():
        if fmt == "csv":
            blocks.append("value,count\n" + "\n".join(f"{k},{v}" for k, v in rows.items()))
            continue
        width = max([len(str(v)) for v in rows.values()] + [5])
        lines = [f"# {stat} (n={table.spec.n}, family={table.spec.family})"]
        lines += [f"{k:>6}  {v:>{width}}" for k, v in rows.items()]
        lines.append(f"{'total':>6}  {sum(rows.values()):>{width}}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)


def cmd_census(args):
    stats = tuple(s for group in args.stat for s in group.split(","))
    spec = census.CensusSpec(
        n=args.n, family=args.family, statistics=stats or ("stable-count",),
        workers=args.workers, symmetry_reduction=args.symmetry,
        deep_symmetry=args.deep_symmetry, force=args.force)
    progress = None
    if not args.quiet:
        last = [-1]

        def progress(frac):
            pct = int(frac * 100)
            if pct != last[0]:
                last[0] = pct
                print(f"census: {pct}%", file=sys.stderr, flush=True)
    table = census.run_census(spec, progress=progress)
    return table.to_dict(), _census_text(table, args.format), EXIT_OK


def cmd_verify(args):
    rep = census.verify_formulas(args.n, workers=args.workers, force=args.force)
    lines = [f"{'OK ' if r.match else 'BAD'} {r.name:<44} census={r.census} formula={r.formula}"
             for r in rep.rows]
    lines.append(f"{sum(r.match for r in rep.rows)}/{len(rep.rows)} checks match")
    return rep.to_dict(), "\n".join(lines), EXIT_OK if rep.ok else EXIT_MISMATCH


def cmd_seq(args):
    if args.action == "list":
        reg = sequences.load_registry()
        rows = [{"id": e.id, "description": e.description, "gate": e.gate} for e in reg.values()]
        text = "\n".join(f"{r['id']}  {r['description']}" + (f"  [{r['gate']}]" if r["gate"] else "")
                         for r in rows)
        return rows, text, EXIT_OK
    if not args.id:
        raise UsageError(f"seq {args.action} needs a sequence id")
    if args.action == "check":
        rep = sequences.check_sequence(args.id, args.max, allow_gated=args.force)
        text = "\n".join(f"{r.index:>4} {r.status:<11} expected={r.expected} got={r.got}" for r in rep.rows)
        return rep.to_dict(), text, EXIT_OK if rep.ok else EXIT_MISMATCH
    data = sequences.export_bfile(args.id, args.max, allow_gated=args.force)
    return {"id": args.id, "bfile": data}, data.rstrip("\n"), EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=None, help="seed for --random profiles")

    prof = argparse.ArgumentParser(add_help=False)
    prof.add_argument("--profile", help="profile file ('-' for stdin)")
    prof.add_argument("--random", type=int, metavar="N", help="use a random profile of size N")

    ap = argparse.ArgumentParser(prog="stablematch", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common, prof], help="run Gale-Shapley")
    p.add_argument("--side", choices=("men", "women"), default="men")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("enumerate", parents=[common, prof], help="list all stable matchings")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", parents=[common, prof], help="profile statistics as JSON")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("formula", parents=[common], help="evaluate a counting formula")
    p.add_argument("name", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("census", parents=[common], help="brute-force census")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=census.FAMILIES, default="all")
    p.add_argument("--stat", action="append", default=[],
                   help=f"statistic (repeatable or comma separated): {', '.join(census.STATISTICS)}")
    p.add_argument("--symmetry", action="store_true", help="fix woman 1's ranking, weight by n!")
    p.add_argument("--deep-symmetry", action="store_true",
                   help="also sort man 1's ranking of women 2..n, weight by n!(n-1)!")
    p.add_argument("--force", action="store_true", help="run even beyond the size guard")
    p.add_argument("--quiet", action="store_true", help="no progress lines")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", parents=[common], help="cross-check formulas against censuses")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("seq", parents=[common], help="sequence registry")
    p.add_argument("action", choices=("check", "export", "list"))
    p.add_argument("id", nargs="?")
    p.add_argument("--max", type=int, default=3)
    p.add_argument("--force", action="store_true", help="allow gated (n >= 4) censuses")
    p.set_defaults(func=cmd_seq)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    params = {k: v for k, v in vars(args).items() if k != "func"}
    t0 = time.perf_counter()
    try:
        result, text, status = args.func(args)
    except (UsageError, ProfileError, formulas.FormulaDomainError, census.CensusGuardError,
            sequences.SequenceGated, KeyError, ValueError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"stablematch: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        out = {"command": args.command, "params": params, "result": result,
               "elapsed_ms": round((time.perf_counter() - t0) * 1000, 3)}
        print(json.dumps(out, indent=2))
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
