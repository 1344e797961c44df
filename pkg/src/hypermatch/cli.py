"""Command-line interface: ``hypermatch <command> ...``.

Exit codes: 0 success, 1 a verification failed (a witness is printed),
2 bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .core import HypergraphError, delete_vertices, parse_hg
from .deck import Deck, DeckError, make_deck
from .poly import char_polynomial, matching_polynomial
from .walktree import WalkTreeBudgetError, default_budget, parse_arc_list, walk_tree

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad input files or flag values; reported with exit code 2."""


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _read_hg(path: str):
    try:
        return parse_hg(_read_text(path))
    except HypergraphError as exc:
        raise UsageError(f"malformed .hg file {path}: {exc}") from None


def _emit(data) -> None:
    print(json.dumps(data, indent=2))


def cmd_mpoly(args) -> int:
    H = _read_hg(args.hypergraph)
    _emit(matching_polynomial(H, method=args.method).to_json())
    return EXIT_OK


def cmd_charpoly(args) -> int:
    try:
        D = parse_arc_list(_read_text(args.digraph))
    except ValueError as exc:
        raise UsageError(f"malformed arc list {args.digraph}: {exc}") from None
    _emit(char_polynomial(D).to_json())
    return EXIT_OK


def cmd_walktree(args) -> int:
    H = _read_hg(args.hypergraph)
    if not 0 <= args.root < H.n:
        raise UsageError(f"--root {args.root} is not a vertex of a {H.n}-vertex hypergraph")
    budget = args.budget
    if budget is None:
        try:
            budget = default_budget()
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    T = walk_tree(H, args.root, budget)
    if args.out:
        Path(args.out).write_text(T.export(), encoding="utf-8")
    _emit({
        "root": args.root,
        "vertices": T.size,
        "edges": T.hypergraph.m,
        "labels": T.labels() if args.labels else None,
        "polynomial": matching_polynomial(T.hypergraph, method="forest").to_json(),
        "root_deleted_polynomial": matching_polynomial(delete_vertices(T.hypergraph, [0]), method="forest").to_json(),
    })
    return EXIT_OK


def cmd_deck(args) -> int:
    H = _read_hg(args.hypergraph)
    if not 0 <= args.t <= H.n:
        raise UsageError(f"--t must lie in 0..{H.n}, got {args.t}")
    data = make_deck(H, args.t, jobs=args.jobs).to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {len(data['classes'])} classes to {args.out}")
    else:
        _emit(data)
    return EXIT_OK


def _read_deck(path: str) -> Deck:
    try:
        return Deck.from_json(json.loads(_read_text(path)))
    except (json.JSONDecodeError, DeckError, HypergraphError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed deck file {path}: {exc}") from None


def cmd_reconstruct(args) -> int:
    from .reconstruct import ReconstructionError, reconstruct_matching_polynomial

    deck = _read_deck(args.deck)
    try:
        poly, trace = reconstruct_matching_polynomial(deck, args.n, args.k)
    except ReconstructionError as exc:
        _emit({"error": str(exc), "trace": exc.trace.to_json()})
        return EXIT_FAIL
    out = {"polynomial": poly.to_json()}
    if args.trace:
        out["trace"] = trace.to_json()
    _emit(out)
    return EXIT_OK


def _random_instance(rng, suite):
    from .generators import random_connected_hypergraph, random_hypergraph, random_k_tree, random_orderings

    if suite == "tree-char":
        T = random_k_tree(rng, rng.choice((2, 3, 4)), 16)
        return T, random_orderings(rng, T)
    if suite == "godsil":
        n = rng.randint(3, 7)
        return random_connected_hypergraph(rng, n, 3, extra=rng.randint(0, 2 * n)), None
    k = rng.choice((2, 3)) if suite == "derivative" else 3
    return random_hypergraph(rng, rng.randint(1, 6 if suite == "derivative" else 5), k), None


def _run_suite_case(job):
    from .identities import (
        verify_derivative_identity,
        verify_godsil_identity,
        verify_tree_char_identity,
        verify_walk_routes,
    )

    suite, seed, index = job
    rng = random.Random(f"{seed}:{index}")
    H, orderings = _random_instance(rng, suite)
    if suite == "godsil":
        return verify_godsil_identity(H, rng.randrange(H.n)).to_json()
    if suite == "tree-char":
        return verify_tree_char_identity(H, orderings).to_json()
    if suite == "derivative":
        return verify_derivative_identity(H).to_json()
    return verify_walk_routes(H, rng.randrange(H.n), 6).to_json()


def cmd_verify(args) -> int:
    if args.random < 0:
        raise UsageError("--random must be non-negative")
    jobs = [(args.suite, args.seed, i) for i in range(args.random)]
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(_run_suite_case, jobs))
    else:
        reports = [_run_suite_case(job) for job in jobs]
    failures = [r for r in reports if not r["pass"]]
    _emit({
        "suite": args.suite,
        "seed": args.seed,
        "prng": "MT19937 (Python random.Random), per-instance seed '<seed>:<index>'",
        "instances": len(reports),
        "failures": failures,
        "pass": not failures,
    })
    return EXIT_OK if not failures else EXIT_FAIL


def cmd_teeth(args) -> int:
    from .teeth import TeethError, teeth_files, verify_sharpness

    if args.k < 2 or args.ell < 0:
        raise UsageError(f"teeth need --k >= 2 and --ell >= 0, got k={args.k}, ell={args.ell}")
    try:
        files = teeth_files(args.k, args.ell, args.isolated)
    except TeethError as exc:
        raise UsageError(str(exc)) from None
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = {}
    for kind, text in files.items():
        path = outdir / f"{'at' if kind == 'aligned' else 'mt'}_{args.k}_{args.ell}.hg"
        path.write_text(text, encoding="utf-8")
        paths[kind] = str(path)
    out = {"files": paths}
    code = EXIT_OK
    if args.verify:
        report = verify_sharpness(args.k, args.ell, args.isolated)
        out["report"] = report.to_json()
        if not (report.passed and report.eta_ok):
            code = EXIT_FAIL
    _emit(out)
    return code


def cmd_tiling(args) -> int:
    from .reconstruct import ReconstructionError, deck_size_for
    from .tiling import copy_hypergraph, reconstruct_tiling_polynomial

    G, F = _read_hg(args.graph), _read_hg(args.motif)
    if G.k != 2 or F.k != 2:
        raise UsageError("tiling needs graph and motif files with k = 2")
    if F.n < 2:
        raise UsageError("the motif needs at least two vertices")
    copies = copy_hypergraph(G, F)
    poly = matching_polynomial(copies.hypergraph)
    out = {"copies": len(copies.copies), "polynomial": poly.to_json()}
    code = EXIT_OK
    if args.reconstruct:
        deck = make_deck(G, deck_size_for(G.n, F.n), jobs=args.jobs)
        try:
            rebuilt, _ = reconstruct_tiling_polynomial(deck, F, G.n)
        except ReconstructionError as exc:
            out["reconstruction"] = {"error": str(exc), "trace": exc.trace.to_json()}
            rebuilt = None
        else:
            out["reconstruction"] = {"t": deck.t, "polynomial": rebuilt.to_json(), "matches": rebuilt == poly}
        if rebuilt != poly:
            code = EXIT_FAIL
    _emit(out)
    return code


def cmd_selftest(args) -> int:
    from .acceptance import CRITERIA, run_criterion

    results = []
    for num, *_ in CRITERIA:
        if args.only and num not in args.only:
            continue
        result = run_criterion(num, args.seed)
        print(result.line(), flush=True)
        results.append(result)
    print(f"seed {args.seed}: {sum(r.ok for r in results)}/{len(results)} criteria passed")
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    from .acceptance import DEFAULT_SEED

    parser = argparse.ArgumentParser(prog="hypermatch", description="Matching polynomials of uniform hypergraphs and their reconstruction from decks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mpoly", help="matching polynomial of a .hg file")
    p.add_argument("hypergraph")
    p.add_argument("--method", choices=("recursive", "enumerate", "forest"), default="recursive")
    p.set_defaults(func=cmd_mpoly)

    p = sub.add_parser("charpoly", help="characteristic polynomial of a digraph arc list")
    p.add_argument("--digraph", required=True)
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("walktree", help="build the walk-tree rooted at a vertex")
    p.add_argument("hypergraph")
    p.add_argument("--root", type=int, required=True)
    p.add_argument("--budget", type=int, default=None, help="maximum number of walks (default: $HYPERMATCH_BUDGET or 50000)")
    p.add_argument("--out", help="write the tree edges, one per line, with vertices shown as walks")
    p.add_argument("--labels", action="store_true", help="include walk labels in the output")
    p.set_defaults(func=cmd_walktree)

    p = sub.add_parser("deck", help="deck of t-vertex induced subgraphs")
    p.add_argument("hypergraph")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_deck)

    p = sub.add_parser("reconstruct", help="recover the matching polynomial from a deck file")
    p.add_argument("deck")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("verify", help="check an identity on random instances")
    p.add_argument("--suite", choices=("godsil", "tree-char", "derivative", "walks"), required=True)
    p.add_argument("--random", type=int, default=20)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("teeth", help="write the aligned/misaligned teeth pair")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--isolated", action="store_true", help="attach an isolated vertex to both")
    p.add_argument("--outdir", default=".")
    p.set_defaults(func=cmd_teeth)

    p = sub.add_parser("tiling", help="F-tiling polynomial of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--motif", required=True)
    p.add_argument("--reconstruct", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_tiling)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WalkTreeBudgetError as exc:
        print(f"error: walk-tree budget exhausted: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
