"""Command-line interface: sequence, decompositions, analysis, simulation,
replay validation, the self-check suite, the HTTP service, and figure reports.

Exit codes: 0 success, 1 domain or validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analysis, decomposition, engine, sequence, simulation
from .engine import Move, parse_move, serialize_move
from .simulation import DEFAULT_SEED


def _fail(message: str) -> int:
    print(message, file=sys.stderr)
    return 1


def cmd_seq(args) -> int:
    try:
        seq = sequence.generate(args.max_index)
    except ValueError as exc:
        return _fail(str(exc))
    print("i,q_i")
    for i, v in enumerate(seq.terms, start=1):
        print(f"{i},{v}")
    if args.verify:
        report = sequence.verify_identities(max(args.max_index, 10))
        if not report.all_ok:
            return _fail("identity check failed: " + "; ".join(report.failures))
    return 0


def cmd_decompose(args) -> int:
    try:
        decomps = decomposition.enumerate_decompositions(args.n)
        seq = sequence.generate(max(10, *(d.indices[0] for d in decomps)))
    except ValueError as exc:
        return _fail(str(exc))
    if args.counts:
        L, l = decomposition.extremal_counts(args.n)
        print(f"{args.n},{L},{l}")
        return 0
    for d in decomps:
        values = "+".join(str(seq.value(i)) for i in d.indices)
        idx = ",".join(str(i) for i in d.indices)
        print(f"{values} [{idx}]")
    return 0


def cmd_splitcheck(args) -> int:
    try:
        pairs = analysis.two_term_split_check(args.i)
    except ValueError as exc:
        return _fail(str(exc))
    print("a,b")
    for a, b in pairs:
        print(f"{a},{b}")
    return 0


def cmd_analyze(args) -> int:
    requested = [
        name
        for flag, name in (
            (args.min_length, "min-length"),
            (args.parities, "parities"),
            (args.winner, "winner"),
        )
        if flag
    ]
    include = tuple(requested) or ("min-length", "max-length", "parities", "winner")
    try:
        summary = analysis.game_graph_summary(args.n, max_states=args.max_states, include=include)
    except analysis.SearchBudgetExceeded as exc:
        return _fail(str(exc))
    payload = summary.to_dict()
    if args.games:
        try:
            result = analysis.enumerate_games(args.n, cap=args.games_cap)
        except ValueError as exc:
            return _fail(str(exc))
        payload["games"] = {
            "count": len(result.games),
            "truncated": result.truncated,
            "records": [
                {
                    "moves": [serialize_move(m) for m in g.moves],
                    "length": g.length,
                    "final": list(g.final),
                    "winner": g.winner,
                }
                for g in result.games
            ],
        }
    print(json.dumps(payload, sort_keys=True))
    return 0


def cmd_simulate(args) -> int:
    try:
        dist = simulation.run_distribution(args.n, args.trials, args.seed)
    except ValueError as exc:
        return _fail(str(exc))
    if args.hist_csv:
        with open(args.hist_csv, "w") as fh:
            fh.write("length,count\n")
            for length in sorted(dist.histogram):
                fh.write(f"{length},{dist.histogram[length]}\n")
    if args.json:
        print(json.dumps(dist.to_json_dict(), sort_keys=True))
    else:
        print(f"n={dist.n} trials={dist.trials} seed={dist.seed}")
        print(f"mean={dist.mean:.4f} stddev={dist.stddev:.4f}")
        if dist.gaussian_diffs:
            d = dist.gaussian_diffs
            print(f"gaussian diffs: d2={d['d2']:.6f} d4={d['d4']:.6f} d6={d['d6']:.6f}")
    return 0


def cmd_report(args) -> int:
    from . import report

    try:
        written = report.run_report(args.n, args.trials, args.seed, args.out_dir)
    except ValueError as exc:
        return _fail(str(exc))
    for path in written:
        print(path)
    return 0


def read_replay_file(path: str) -> tuple[int, list[Move]]:
    """Replay format: '#' comments, first line n=<N>, one move per line."""
    n = None
    moves: list[Move] = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if n is None:
                if not line.startswith("n="):
                    raise ValueError(f"{path}:{lineno}: expected 'n=<N>' header, got {line!r}")
                n = int(line[2:])
                continue
            try:
                moves.append(parse_move(line))
            except engine.MoveFormatError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
    if n is None:
        raise ValueError(f"{path}: missing 'n=<N>' header")
    return n, moves


def cmd_play_log(args) -> int:
    try:
        n, moves = read_replay_file(args.file)
    except (OSError, ValueError) as exc:
        return _fail(str(exc))
    try:
        record = engine.replay(n, moves, require_terminal=not args.allow_partial)
    except engine.IllegalMoveError as exc:
        return _fail(f"invalid replay: {exc}")
    except ValueError as exc:
        return _fail(f"invalid replay: {exc}")
    final = "{" + ",".join(f"{i}^1" for i in sorted(record.final)) + "}" if record.final else "(in progress)"
    print(f"valid: n={record.n} length={record.length} final={final} winner={record.winner}")
    return 0


def cmd_verify(args) -> int:
    checks = _verification_checks(args.playouts)
    for name, fn in checks:
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - report any failure uniformly
            print(f"FAIL {name}", file=sys.stderr)
            print(f"  {exc}", file=sys.stderr)
            return 1
        print(f"ok {name}")
    return 0


def _verification_checks(playouts: int):
    def identities():
        report = sequence.verify_identities(30)
        assert report.all_ok, report.failures

    def completeness():
        seq = sequence.generate(35)
        for n in range(1, 501):
            decomps = decomposition.enumerate_decompositions(n, seq)
            assert decomps, f"no decomposition for {n}"
            for d in decomps:
                assert decomposition.is_fq_legal(d.indices)
                assert sum(seq.value(i) for i in d.indices) == n

    def shortest_lengths():
        for n in range(1, 31):
            L, _ = decomposition.extremal_counts(n)
            got = analysis.min_game_length(n)
            assert got == n - L, f"n={n}: shortest {got} != {n}-{L}"

    def splits():
        for i in range(7, 21):
            got = analysis.two_term_split_check(i)
            assert got == [(i - 5, i + 2)], f"i={i}: {got}"

    def playout_invariants():
        # random_playout raises on any monovariant/R2a/legality violation
        for t in range(playouts):
            simulation.random_playout(30, simulation.trial_seed(DEFAULT_SEED, t))

    return [
        ("sequence identities to index 30", identities),
        ("every n <= 500 has a legal decomposition", completeness),
        ("shortest game equals n minus max term count, n <= 30", shortest_lengths),
        ("unique two-term split of doubled terms, 7 <= i <= 20", splits),
        (f"invariants over {playouts} seeded playouts at n=30", playout_invariants),
    ]


def cmd_serve(args) -> int:
    from .service import run_server

    run_server(
        host=args.host,
        port=args.port,
        max_n=args.max_n,
        journal_dir=args.journal_dir,
        ui_dir=args.ui_dir,
    )
    return 0


def print_rule_table() -> None:
    print("Move table (one row per rule; i is the index parameter):")
    for row in engine.rule_table():
        param = f"  [{row['parameter']}]" if row["parameter"] else ""
        gate = f"  ({row['gated']})" if row.get("gated") else ""
        print(f"  {row['rule']:4s} {row['pattern']}{param}{gate}")
    print()
    print("Correction note: " + engine.R3F_CORRECTION_NOTE)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibquilt",
        description="Fibonacci Quilt sequence, decompositions, and the quilt game.",
    )
    parser.add_argument(
        "--about-rules",
        action="store_true",
        help="print the full move table (with the R3f correction note) and exit",
    )
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("seq", help="print the sequence as CSV")
    p.add_argument("--max-index", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="also check the three identities")
    p.set_defaults(fn=cmd_seq)

    p = sub.add_parser("decompose", help="list legal decompositions of N")
    p.add_argument("n", type=int)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", help="one decomposition per line (default)")
    group.add_argument("--counts", action="store_true", help="print N,L,l")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("analyze", help="game-graph summary for N as JSON")
    p.add_argument("n", type=int)
    p.add_argument("--winner", action="store_true")
    p.add_argument("--parities", action="store_true")
    p.add_argument("--min-length", action="store_true")
    p.add_argument("--games", action="store_true", help="include full game enumeration (n <= 10)")
    p.add_argument("--games-cap", type=int, default=100_000)
    p.add_argument("--max-states", type=int, default=analysis.DEFAULT_MAX_STATES)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("splitcheck", help="legal two-term splits of 2*q_i")
    p.add_argument("i", type=int)
    p.set_defaults(fn=cmd_splitcheck)

    p = sub.add_parser("simulate", help="random-game length distribution")
    p.add_argument("n", type=int)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--hist-csv", metavar="PATH", help="write length,count CSV")
    p.add_argument("--json", action="store_true", help="print the full distribution as JSON")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("report", help="simulate and render histogram figures + CSV")
    p.add_argument("n", type=int, nargs="+")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out-dir", default="reports")
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("play-log", help="validate a recorded move list")
    p.add_argument("file")
    p.add_argument("--allow-partial", action="store_true",
                   help="accept a legal prefix that does not reach a terminal state")
    p.set_defaults(fn=cmd_play_log)

    p = sub.add_parser("verify", help="run the full invariant suite")
    p.add_argument("--playouts", type=int, default=1000)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP game service")
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--max-n", type=int, default=500)
    p.add_argument("--journal-dir", help="append one replay-format journal per session")
    p.add_argument("--ui-dir", help="serve this directory as the web UI root")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.about_rules:
        print_rule_table()
        return 0
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        return 2
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
