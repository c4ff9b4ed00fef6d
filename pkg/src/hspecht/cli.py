"""Command-line front end.

Exit status: 0 on success, 1 when a verification reports a failure,
2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from hspecht.combinatorics import (
    BlockStructure,
    MultiDiagram,
    MultiTableau,
    Tableau,
    canonical_multitableau,
    enumerate_NST,
    enumerate_ST,
    index_tableau,
    word,
)
from hspecht.decomp import decompose
from hspecht.polyalg import parse_poly
from hspecht.specht import classical_specht, higher_specht
from hspecht.verify import SUITES, Bounds, run_suites
from hspecht.weyl import apply_operator, parse_operator


class UsageError(Exception):
    pass


def parse_blocks(text: str) -> BlockStructure:
    try:
        return BlockStructure(tuple(int(tok) for tok in text.split(",")))
    except ValueError:
        raise UsageError(f"--blocks: expected comma-separated positive integers, got {text!r}") from None


def parse_diagram(text: str, block: BlockStructure) -> MultiDiagram:
    parts = []
    for tok in text.split("|"):
        m = re.fullmatch(r"\s*\[([\d,\s]*)\]\s*", tok)
        if not m:
            raise UsageError(f"--diagram: cannot parse component {tok!r}")
        parts.append(tuple(int(v) for v in m.group(1).split(",") if v.strip()))
    try:
        return MultiDiagram(tuple(parts), block)
    except ValueError as exc:
        raise UsageError(f"--diagram: {exc}") from None


def parse_tableau(text: str, block: BlockStructure) -> MultiTableau:
    comps = []
    for tok in text.split("|"):
        try:
            rows = json.loads(tok)
            comps.append(Tableau(tuple(tuple(r) for r in rows)))
        except (json.JSONDecodeError, TypeError, ValueError):
            raise UsageError(f"cannot parse tableau component {tok!r}") from None
    try:
        return MultiTableau(tuple(comps), block)
    except ValueError as exc:
        raise UsageError(f"tableau {text!r}: {exc}") from None


def _infer_nvars(*texts: str) -> int:
    idx = [int(v) for t in texts for v in re.findall(r"[xd](\d+)", t)]
    return max(idx, default=1)


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print("\n".join(text_lines))


def _index_grid(T: MultiTableau) -> str:
    return "|".join("[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in c) + "]" for c in index_tableau(T))


def cmd_tableaux(args) -> int:
    block = parse_blocks(args.blocks)
    if args.tableau:
        tabs = [parse_tableau(args.tableau, block)]
        if not tabs[0].is_standard():
            raise UsageError(f"--tableau {args.tableau!r} is not standard")
    else:
        if not args.diagram:
            raise UsageError("tableaux needs --diagram or --tableau")
        lam = parse_diagram(args.diagram, block)
        tabs = enumerate_ST(lam) if args.all else enumerate_NST(lam)
    payload = {"blocks": list(block.type_vector), "tableaux": []}
    lines = []
    for T in tabs:
        entry = {"tableau": T.to_json()["components"], "word": list(word(T))}
        line = f"{T}  w={''.join(f'{v},' for v in word(T)).rstrip(',')}"
        if args.show_index:
            entry["index"] = [[list(r) for r in c] for c in index_tableau(T)]
            line += f"  i={_index_grid(T)}"
        payload["tableaux"].append(entry)
        lines.append(line)
    _emit(args, payload, lines)
    return 0


def cmd_specht(args) -> int:
    block = parse_blocks(args.blocks)
    if not args.diagram:
        raise UsageError("specht needs --diagram")
    lam = parse_diagram(args.diagram, block)
    S0 = canonical_multitableau(lam)
    if args.tableau:
        Ts = [parse_tableau(args.tableau, block)]
    elif args.canonical:
        Ts = [S0]
    else:
        Ts = enumerate_NST(lam)
    S = parse_tableau(args.index_source, block) if args.index_source else S0
    for T in Ts + [S]:
        if T.diagram != lam:
            raise UsageError(f"tableau {T} does not have shape {lam}")
    if not all(T.is_natural() and T.is_standard() for T in Ts):
        raise UsageError("--tableau must be natural standard (component i filled with block i)")
    if not S.is_standard():
        raise UsageError("--index-source must be standard")
    results = []
    for T in Ts:
        F = classical_specht(T) if args.classical else higher_specht(T, S)
        results.append({"T": str(T), "S": None if args.classical else str(S),
                        "polynomial": str(F), "terms": F.to_json()})
    lines = [r["polynomial"] for r in results] if len(results) == 1 else \
        [f"T={r['T']}: {r['polynomial']}" for r in results]
    _emit(args, {"blocks": list(block.type_vector), "diagram": str(lam), "results": results}, lines)
    return 0


def cmd_decompose(args) -> int:
    block = parse_blocks(args.blocks)
    try:
        f = parse_poly(args.poly, block.n)
    except ValueError as exc:
        raise UsageError(f"--poly: {exc}") from None
    result = decompose(f, block)
    payload = result.to_json()
    lines = [f"({g}) * F[{k.diagram}; T={k.T}; S={k.S}]" for k, g in result.coefficients.items()] or ["0"]
    _emit(args, payload, lines)
    return 0


def cmd_apply_op(args) -> int:
    n = args.nvars or _infer_nvars(args.op, args.poly)
    try:
        D = parse_operator(args.op, n)
    except ValueError as exc:
        raise UsageError(f"--op: {exc}") from None
    try:
        f = parse_poly(args.poly, n)
    except ValueError as exc:
        raise UsageError(f"--poly: {exc}") from None
    out = apply_operator(D, f)
    _emit(args, {"op": str(D), "poly": str(f), "result": str(out), "terms": out.to_json()}, [str(out)])
    return 0


def cmd_verify(args) -> int:
    block = parse_blocks(args.blocks)
    bounds = Bounds(max_n=args.max_n, max_degree=args.max_degree, max_order=args.max_order,
                    samples=args.samples, random_ops=args.random_ops, seed=args.seed)
    names = [s.strip() for s in args.suite.split(",")]
    try:
        report = run_suites(block, names, bounds)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    records = [r.to_json() for r in report.records]
    if args.format == "json":
        print(json.dumps({"blocks": list(block.type_vector), "ok": report.ok, "records": records},
                         indent=2, default=str))
    else:
        for r in report.records:
            if r.status == "fail" or args.verbose:
                inst = " ".join(f"{k}={v}" for k, v in r.instance.items())
                wit = f" :: {r.witness}" if r.witness not in (None, []) else ""
                print(f"{r.status.upper():4} {r.check} {inst}{wit}")
        counts = {s: sum(1 for r in report.records if r.status == s) for s in ("pass", "fail", "skip", "info")}
        print(f"blocks={block} " + " ".join(f"{k}={v}" for k, v in counts.items()))
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hspecht", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("tableaux", help="enumerate tableaux, words and index tableaux")
    p.add_argument("--blocks", required=True)
    p.add_argument("--diagram")
    p.add_argument("--tableau")
    p.add_argument("--all", action="store_true", help="all standard tableaux, not only natural ones")
    p.add_argument("--show-index", action="store_true")
    common(p)
    p.set_defaults(func=cmd_tableaux)

    p = sub.add_parser("specht", help="higher (or classical) Specht polynomials")
    p.add_argument("--blocks", required=True)
    p.add_argument("--diagram")
    p.add_argument("--tableau")
    p.add_argument("--index-source", "--index-tableau", dest="index_source")
    p.add_argument("--canonical", action="store_true", help="use the row-filled tableau for T")
    p.add_argument("--classical", action="store_true", help="print the classical Specht polynomial of T")
    common(p)
    p.set_defaults(func=cmd_specht)

    p = sub.add_parser("decompose", help="write a polynomial over the invariant ring")
    p.add_argument("--blocks", required=True)
    p.add_argument("--poly", required=True)
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("apply-op", help="apply a differential operator to a polynomial")
    p.add_argument("--op", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--nvars", type=int)
    common(p)
    p.set_defaults(func=cmd_apply_op)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--blocks", required=True)
    p.add_argument("--suite", default="all", help="comma-separated: all," + ",".join(SUITES))
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--max-order", type=int, default=720)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--random-ops", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--verbose", action="store_true")
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hspecht {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
