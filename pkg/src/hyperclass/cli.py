"""Command line front end: ``analyze``, ``verify`` and the D16xD8 example.

Exit status is 0 only when every criterion agrees with its oracle, so the
commands double as checks in CI.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog
from .catalog import build, parse_spec, resolve_normal
from .classes import frequency_function
from .criteria import AnalysisReport, analyze
from .errors import HyperclassError, ParseError
from .structure import upper_central_series
from .verify import verify_specs


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def format_report(report: AnalysisReport) -> str:
    r = report
    lines = [
        f"group {r.group_spec} (order {r.group_order}); normal subgroup {r.normal_name} "
        f"(order {r.normal_order}, {'abelian' if r.normal_abelian else 'non-abelian'})",
        f"class sizes in N: {json.dumps(r.frequency.to_json())}  multiset {{{','.join(map(str, r.frequency.sizes))}}}",
        f"|N ∩ Z(G)| = {r.centre_order}; |N ∩ Z_i(G)| = {', '.join(map(str, r.z_orders))}; "
        f"|N ∩ Z_inf(G)| = {r.z_infty_order}",
    ]
    header = ("p", "|S_p|", "|S_p|_p", "|N|_p", "|N∩Zinf|_p", "sylow-hyp", "oracle",
              "p-elts", "oracle", "|S_p'|", "Z|S_p'|", "C|S_p'|", "sylow-ctr", "oracle")
    rows = [header]
    for v in r.verdicts:
        rows.append((str(v.p), str(v.s_p), str(v.s_p_p_part), str(v.n_p_part), str(v.hyp_p_part),
                     _yn(v.sylow_hyp_criterion), _yn(v.sylow_hyp_oracle),
                     _yn(v.cor_b_criterion), _yn(v.cor_b_oracle), str(v.s_p_prime),
                     _yn(v.thm_c_a), _yn(v.thm_c_b), _yn(v.thm_c_c_criterion), _yn(v.thm_c_c_oracle)))
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    for row in rows:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    lines.append(f"hypercentral: criterion {_yn(r.hypercentral_criterion)}, oracle {_yn(r.hypercentral_oracle)}")
    if not r.consistent:
        lines.append("MISMATCH between frequency criteria and structural oracles")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    spec = parse_spec(args.group)
    G = build(spec)
    name, N = resolve_normal(spec, G, args.normal)
    report = analyze(G, N, str(spec), name)
    print(report.to_json() if args.json else format_report(report))
    return 0 if report.consistent else 1


def _corpus_specs(corpus: str) -> list[str]:
    if corpus == "default":
        return list(catalog.DEFAULT_SPECS)
    if not corpus.startswith("file:"):
        raise ParseError(f"--corpus must be 'default' or 'file:<path>', got {corpus!r}")
    path = Path(corpus[5:])
    if path.suffix == ".json":
        return [corpus]
    lines = path.read_text(encoding="utf-8").splitlines()
    return [line.strip() for line in lines if line.strip() and not line.lstrip().startswith("#")]


def cmd_verify(args) -> int:
    specs = _corpus_specs(args.corpus)
    if args.max_order is not None:
        specs = [s for s in specs if build(s).order <= args.max_order]
    outcome = verify_specs(specs, exhaustive_eq1=args.exhaustive_eq1, jobs=args.jobs)
    print("\n".join(outcome.summary_lines()))
    return 0 if outcome.ok else 1


def d16xd8_example() -> tuple[list[str], list[str]]:
    """Build D16xD8 and compare <x> with the D8 factor.  Returns (lines, failed assertions)."""
    spec = parse_spec("D16xD8")
    G = build(spec)
    names = catalog.named_subgroups(spec, G)
    N1, N2 = names["x-cyclic"], names["right"]
    f1, f2 = frequency_function(G, N1), frequency_function(G, N2)
    Z2 = upper_central_series(G).terms[1]
    z1, z2 = len(N1 & Z2), len(N2 & Z2)
    lines = [
        f"G = D16xD8, order {G.order}",
        f"<x>       order {len(N1)}  class sizes {json.dumps(f1.to_json())}  "
        f"abelian {_yn(N1.is_abelian())}  |N ∩ Z_2(G)| = {z1}",
        f"D8 factor order {len(N2)}  class sizes {json.dumps(f2.to_json())}  "
        f"abelian {_yn(N2.is_abelian())}  |N ∩ Z_2(G)| = {z2}",
        f"|Z_2(G)| = {len(Z2)}",
    ]
    failed = []
    if not (f1 == f2 and f1.sizes == [1, 1, 2, 2, 2]):
        failed.append(f"class-size multisets differ or are not {{1,1,2,2,2}}: {f1.sizes} vs {f2.sizes}")
    if not (N1.is_abelian() and not N2.is_abelian()):
        failed.append(f"expected <x> abelian and D8 non-abelian, got {N1.is_abelian()}, {N2.is_abelian()}")
    if z1 != 4:
        failed.append(f"|<x> ∩ Z_2(G)|: expected 4, got {z1}")
    if z2 != 8:
        failed.append(f"|D8 ∩ Z_2(G)|: expected 8, got {z2}")
    return lines, failed


def cmd_example(args) -> int:
    lines, failed = d16xd8_example()
    print("\n".join(lines))
    for msg in failed:
        print(f"FAIL {msg}")
    print("all example assertions hold" if not failed else f"{len(failed)} assertion(s) failed")
    return 0 if not failed else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperclass", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze one (group, normal subgroup) pair")
    a.add_argument("--group", required=True, help='group spec, e.g. "S4", "D16xD8", "file:g.json"')
    a.add_argument("--normal", required=True,
                   help="subgroup name (1, G, left, right, x-cyclic, centre, hypercentre, N<k>, file names) or spec")
    a.add_argument("--json", action="store_true", help="emit the JSON report")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="check every criterion over a corpus")
    v.add_argument("--max-order", type=int, default=None)
    v.add_argument("--corpus", default="default", help="'default' or file:<path> (group JSON or spec list)")
    v.add_argument("--exhaustive-eq1", action="store_true",
                   help="check the central-quotient identity for every central subgroup of order p")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("paper-example", help="reproduce the D16xD8 example")
    e.set_defaults(func=cmd_example)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except HyperclassError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
