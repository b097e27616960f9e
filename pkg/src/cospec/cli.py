"""Command-line front end.

Exit status: 0 on success, 1 for a negative mathematical result (graphs
not cospectral, no similarity found, a failed reproduction), 2 for usage
errors and malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from typing import Sequence

from .codec import decode_graph6, encode_graph6, iter_graph6_lines
from .errors import ConstraintViolated, CospecError
from .exact import charpoly
from .graphs import CoalescingSpec, Graph, Partition, RootedGraph, coalesced_graph, random_connected_graph
from .matrices import GeneralizedDistance, QLaplacian, build_matrix, parse_kind
from .reproduce import TARGETS, reproduce
from .search import classify_sjjs, mine_cospectral
from .similarity import SimilarityProblem, SimilarityWitness, find_block_similarity
from .verify import butler_condition, cospectral, verify_coalesced_cospectral, verify_extended_witness

SEED_ENV = "COSPEC_SEED"
SCHEMA = 1

log = logging.getLogger("cospec")


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _read_code(text: str) -> str:
    if text == "-":
        line = sys.stdin.readline()
        if not line:
            raise UsageError("expected a graph6 code on stdin")
        return line.strip()
    return text


def _graph(text: str):
    return decode_graph6(_read_code(text))


def _attachments(text: str) -> list[RootedGraph]:
    """``g6:root,g6:root,...`` with 1-based roots (root defaults to 1)."""
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        code, sep, root = item.rpartition(":")
        if not sep:
            code, root = item, "1"
        g = decode_graph6(code)
        out.append(RootedGraph(g, int(root) - 1))
    return out


def _parse_list(text: str) -> list[int]:
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "-" in item:
            lo, hi = item.split("-", 1)
            out.extend(range(int(lo) - 1, int(hi)))
        else:
            out.append(int(item) - 1)
    return out


def _emit(args, report: dict, human: str) -> None:
    if args.json:
        print(json.dumps({"schema": SCHEMA, **report}, indent=2))
    else:
        print(human)


def _fmt_matrix(rows) -> str:
    cells = [[str(x) for x in r] for r in rows]
    width = max((len(c) for r in cells for c in r), default=1)
    return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)


# subcommands ---------------------------------------------------------------


def cmd_decode(args) -> int:
    g = _graph(args.code)
    report = {"n": g.n, "edges": [[u + 1, v + 1] for u, v in g.edges()]}
    edges = " ".join(f"{u + 1}-{v + 1}" for u, v in g.edges())
    _emit(args, report, f"n={g.n} m={g.num_edges}\n{edges}".rstrip())
    return 0


def cmd_encode(args) -> int:
    text = sys.stdin.read() if args.edges == ["-"] else " ".join(args.edges)
    pairs = []
    for tok in text.replace(",", " ").split():
        u, _, v = tok.partition("-")
        pairs.append((int(u) - 1, int(v) - 1))
    n = args.n if args.n is not None else max((max(p) + 1 for p in pairs), default=0)
    code = encode_graph6(Graph.from_edges(n, pairs))
    _emit(args, {"graph6": code}, code)
    return 0


def cmd_matrix(args) -> int:
    g = _graph(args.code)
    kind = parse_kind(args.kind)
    m = build_matrix(g, kind)
    _emit(args, {"kind": kind.label, "matrix": [[str(x) for x in r] for r in m.tolist()]}, _fmt_matrix(m.tolist()))
    return 0


def cmd_charpoly(args) -> int:
    g = _graph(args.code)
    kind = parse_kind(args.kind)
    p = charpoly(build_matrix(g, kind))
    _emit(args, {"kind": kind.label, "charpoly": p.to_json()}, str(p))
    return 0


def cmd_cospectral(args) -> int:
    g1, g2 = _graph(args.g1), _graph(args.g2)
    v = cospectral(g1, g2, parse_kind(args.kind))
    human = f"{'cospectral' if v.equal else 'NOT cospectral'} ({v.kind.label})\n  {v.charpoly_1}\n  {v.charpoly_2}"
    _emit(args, v.to_json(), human)
    return 0 if v.equal else 1


def cmd_coalesce(args) -> int:
    base = _graph(args.base)
    part = Partition.parse(args.partition, base.n)
    atts = _attachments(args.attach)
    spec = CoalescingSpec(base, part, tuple(atts))
    g = coalesced_graph(spec)
    code = encode_graph6(g)
    _emit(args, {"graph6": code, "n": g.n}, code)
    return 0


def _problem(args) -> SimilarityProblem:
    g1, g2 = _graph(args.g1), _graph(args.g2)
    part = Partition.parse(args.partition, g1.n) if args.partition else Partition.whole(g1.n)
    return SimilarityProblem(g1, g2, part, parse_kind(args.kind), args.sjjs, args.simultaneous)


def _similarity_human(result) -> str:
    if isinstance(result, SimilarityWitness):
        lines = [f"witness found, det S = {result.det_s}, checked: {', '.join(result.checked)}"]
        for cls, b in zip(result.s.partition.classes, result.s.blocks):
            lines.append(f"block {','.join(str(v + 1) for v in cls)}:")
            lines.append(_fmt_matrix(b.tolist()))
        return "\n".join(lines)
    text = f"no invertible similarity: {result.verdict} (solution space dim {result.solution_space_dim})"
    if result.verdict != "NoSolutionSpace":
        text += f"\nerror bound <= 10^{result.error_bound_log10:.1f}"
    return text


def cmd_find_sim(args) -> int:
    prob = _problem(args)
    result = find_block_similarity(prob, args.seed, args.trials, args.coeff_bound)
    _emit(args, result.to_json(), _similarity_human(result))
    return 0 if isinstance(result, SimilarityWitness) else 1


def cmd_verify_theorem(args) -> int:
    """Find a witness of the right shape, then test it on random coalescings."""
    kind = parse_kind(args.kind) if args.kind else None
    if args.theorem == 1:
        kind = kind or QLaplacian(0)
        if not isinstance(kind, QLaplacian):
            raise UsageError("criterion 1 needs a q-Laplacian kind")
        sjjs = simultaneous = False
    elif args.theorem == 2:
        kind = parse_kind("dist")
        sjjs, simultaneous = True, False
    else:
        kind = kind or parse_kind("dist")
        if isinstance(kind, QLaplacian):
            raise UsageError("criterion 3 needs a generalized distance kind")
        sjjs, simultaneous = False, True
    g1, g2 = _graph(args.g1), _graph(args.g2)
    part = Partition.parse(args.partition, g1.n) if args.partition else Partition.whole(g1.n)
    prob = SimilarityProblem(g1, g2, part, kind, sjjs, simultaneous)
    result = find_block_similarity(prob, args.seed, args.trials, args.coeff_bound)
    report = {"theorem": args.theorem, "kind": kind.label, "search": result.to_json()}
    if not isinstance(result, SimilarityWitness):
        _emit(args, {**report, "ok": False}, _similarity_human(result))
        return 1
    rng = random.Random(args.seed)
    check_kind = kind
    if args.theorem == 3 and not isinstance(kind, GeneralizedDistance):
        check_kind = parse_kind("gendist:square")
    passed = 0
    for _ in range(args.samples):
        atts = []
        for _ in range(len(part)):
            n = rng.randint(1, 4)
            atts.append(RootedGraph(random_connected_graph(n, rng), rng.randrange(n)))
        if args.theorem != 3:
            try:
                verify_extended_witness(result.s, g1, g2, atts, kind, sjjs)
            except ConstraintViolated as exc:
                log.warning("extended witness failed: %s", exc)
                continue
        passed += verify_coalesced_cospectral(g1, g2, part, atts, check_kind).equal
    ok = passed == args.samples
    report.update({"ok": ok, "samples": args.samples, "passed": passed, "checked_kind": check_kind.label})
    human = _similarity_human(result) + f"\nrandom coalescings cospectral: {passed}/{args.samples}"
    _emit(args, report, human)
    return 0 if ok else 1


def cmd_butler(args) -> int:
    g1, g2 = _graph(args.g1), _graph(args.g2)
    ok = butler_condition(g1, g2, _parse_list(args.v1), _parse_list(args.v2))
    _emit(args, {"condition_holds": ok}, "condition holds" if ok else "condition fails")
    return 0 if ok else 1


def cmd_mine(args) -> int:
    kind = parse_kind(args.kind)

    def graphs():
        if args.file == "-":
            src = sys.stdin
            yield from (g for _, _, g in iter_graph6_lines(src, skip_malformed=args.skip_malformed))
        else:
            with open(args.file, encoding="ascii") as fh:
                yield from (g for _, _, g in iter_graph6_lines(fh, skip_malformed=args.skip_malformed))

    census = mine_cospectral(graphs(), kind, args.workers)
    report = census.to_json()
    if args.classify_sjjs:
        classified = classify_sjjs(census.pairs, args.seed, args.trials, args.coeff_bound, args.workers)
        census.sjjs_negative = classified.sjjs_negative
        report = census.to_json()
    lines = [f"{census.graphs_seen} graphs, {census.pair_count} cospectral pairs ({census.kind})"]
    lines += [f"  {a} {b}" for a, b in census.pairs]
    if args.classify_sjjs:
        lines.append(f"{len(census.sjjs_negative)} pairs without an SJ = JS similarity")
        lines += [f"  {a} {b}" for a, b in census.sjjs_negative]
    _emit(args, report, "\n".join(lines))
    return 0


def cmd_reproduce(args) -> int:
    options = {}
    if args.target in ("census7", "fig7"):
        options["workers"] = args.workers
    report = reproduce(args.target, seed=args.seed, **options)
    lines = [f"{report['target']}: {'ok' if report['ok'] else 'FAILED'} ({report['seconds']} s)"]
    for c in report["checks"]:
        lines.append(f"  [{'pass' if c['ok'] else 'FAIL'}] {c['name']}")
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(lines))
    return 0 if report["ok"] else 1


# parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("-v", "--verbose", action="store_true")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--seed", type=int, default=None, help=f"RNG seed (default ${SEED_ENV} or 0)")
    search.add_argument("--trials", type=int, default=64)
    search.add_argument("--coeff-bound", type=int, default=10**6)

    p = argparse.ArgumentParser(prog="cospec", description="Exact cospectral-graph toolkit.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("decode", parents=[common], help="describe a graph6 code")
    s.add_argument("code", help="graph6 code or - for stdin")
    s.set_defaults(func=cmd_decode)

    s = sub.add_parser("encode", parents=[common], help="graph6 code from a 1-based edge list")
    s.add_argument("edges", nargs="+", help="edges like 1-2 2-3, or - for stdin")
    s.add_argument("-n", type=int, default=None, help="vertex count (default: largest endpoint)")
    s.set_defaults(func=cmd_encode)

    for name, func, helptext in (("matrix", cmd_matrix, "print the exact matrix"),
                                 ("charpoly", cmd_charpoly, "print the characteristic polynomial")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("code")
        s.add_argument("--kind", default="dist")
        s.set_defaults(func=func)

    s = sub.add_parser("cospectral", parents=[common], help="compare two spectra exactly")
    s.add_argument("g1")
    s.add_argument("g2")
    s.add_argument("--kind", default="dist")
    s.set_defaults(func=cmd_cospectral)

    s = sub.add_parser("coalesce", parents=[common], help="coalesce rooted graphs onto a partition")
    s.add_argument("--base", required=True)
    s.add_argument("--partition", required=True, help='classes split by ";", e.g. "1;2;3-7"')
    s.add_argument("--attach", required=True, help="g6:root per class, comma separated (1-based roots)")
    s.set_defaults(func=cmd_coalesce)

    s = sub.add_parser("find-sim", parents=[common, search], help="search for a block similarity")
    s.add_argument("g1")
    s.add_argument("g2")
    s.add_argument("--partition", default=None)
    s.add_argument("--kind", default="dist")
    s.add_argument("--sjjs", action="store_true", help="also require SJ = JS")
    s.add_argument("--simultaneous", action="store_true", help="also every distance-t adjacency matrix")
    s.set_defaults(func=cmd_find_sim)

    s = sub.add_parser("verify-theorem", parents=[common, search],
                       help="witness plus random coalescing check (1: q-Laplacian, 2: distance, 3: generalized)")
    s.add_argument("theorem", type=int, choices=(1, 2, 3))
    s.add_argument("g1")
    s.add_argument("g2")
    s.add_argument("--partition", default=None)
    s.add_argument("--kind", default=None)
    s.add_argument("--samples", type=int, default=10)
    s.set_defaults(func=cmd_verify_theorem)

    s = sub.add_parser("butler", parents=[common], help="subset charpoly-sum condition for V1 | V2")
    s.add_argument("g1")
    s.add_argument("g2")
    s.add_argument("--v1", required=True, help="1-based vertices, e.g. 1,2,3")
    s.add_argument("--v2", required=True)
    s.set_defaults(func=cmd_butler)

    s = sub.add_parser("mine", parents=[common, search], help="cospectral pairs in a graph6 file")
    s.add_argument("--file", required=True, help="graph6 file, one code per line, or -")
    s.add_argument("--kind", default="dist")
    s.add_argument("--classify-sjjs", action="store_true")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--skip-malformed", action="store_true")
    s.set_defaults(func=cmd_mine)

    s = sub.add_parser("reproduce", parents=[common], help="re-derive a worked example")
    s.add_argument("target", choices=sorted(TARGETS))
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_reproduce)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        return args.func(args)
    except (UsageError, CospecError, ValueError, OSError) as exc:
        print(f"cospec: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
