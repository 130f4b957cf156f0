"""Command-line entry point: one binary for every workflow.

Exit codes: 0 on success, 1 when a verification or axiom check fails,
2 for invalid input (bad flags, unreadable files, malformed records).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .algebra import AlgebraError, DOMAIN_Q, DOMAIN_Y, check_ring_axioms, nonclosure_witnesses
from .board import BoardGraph, BoardError, build_xigua_board
from .dataset import (
    DRAWS_AS_LOSS,
    DRAWS_EXCLUDE,
    DatasetError,
    MetricsError,
    compute_metrics,
    generate_dataset,
    write_dataset_csv,
    write_dataset_jsonl,
)
from .records import RecordError, read_records
from .rules import GameState, RuleViolationError, initial_state
from .search import SearchConfig, SearchError, minmax_search, parse_policy, selfplay_serialized
from .verification import verify_records

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2

ARCHIVE_ENV_VAR = "XIGUA_ARCHIVE"


def _fail_input(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_BAD_INPUT


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _cmd_selfplay(args: argparse.Namespace) -> int:
    if args.games < 1:
        return _fail_input("games must be >= 1")
    try:
        # Validate policy specs before spending time on games.
        parse_policy(args.policy_a)
        parse_policy(args.policy_b)
        lines = selfplay_serialized(
            games=args.games,
            policy_a=args.policy_a,
            policy_b=args.policy_b,
            base_seed=args.seed,
            jobs=args.jobs,
        )
    except SearchError as exc:
        return _fail_input(str(exc))
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            for line in lines:
                fh.write(line + "\n")
    except OSError as exc:
        return _fail_input(f"cannot write {args.out}: {exc}")
    print(f"wrote {len(lines)} games to {args.out}")
    return EXIT_OK


def _load_position(path: str | None) -> GameState:
    if path is None:
        return initial_state()
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    board = build_xigua_board()
    if "board" in data and data["board"] != "xigua":
        board = BoardGraph.from_dict(data["board"])
    placement = data.get("placement")
    if placement is None and "cells" in data:
        placement = {
            i: v for i, v in enumerate(data["cells"]) if v != board.alphabet.empty
        }
    if placement is not None and not isinstance(placement, list):
        placement = {int(k): v for k, v in placement.items()}
    return initial_state(board, placement, data.get("to_move", 1))


def _cmd_solve(args: argparse.Namespace) -> int:
    try:
        state = _load_position(args.position)
        config = SearchConfig(
            depth=args.depth,
            use_alpha_beta=not args.no_ab,
            use_transposition=args.tt,
        )
        result = minmax_search(state, config)
    except (OSError, json.JSONDecodeError, RuleViolationError, BoardError, SearchError) as exc:
        return _fail_input(str(exc))
    _print_json(
        {
            "best_move": {"from": result.best_move.from_node, "to": result.best_move.to_node},
            "score": result.score,
            "nodes_visited": result.nodes_visited,
            "depth": result.depth,
            "elapsed_seconds": round(result.elapsed, 6),
        }
    )
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    domain = DOMAIN_Y if args.mode == "y" else DOMAIN_Q
    total = failed = 0
    try:
        report_fh = open(args.report, "w", encoding="utf-8") if args.report else None
        try:
            with open(args.infile, encoding="utf-8") as fh:
                for check in verify_records(read_records(fh), domain=domain):
                    total += 1
                    if not check.passed:
                        failed += 1
                    if report_fh:
                        report_fh.write(
                            json.dumps(check.to_dict(), sort_keys=True, separators=(",", ":"))
                            + "\n"
                        )
        finally:
            if report_fh:
                report_fh.close()
    except OSError as exc:
        return _fail_input(str(exc))
    except RecordError as exc:
        return _fail_input(str(exc))
    print(f"verified {total} moves: {total - failed} passed, {failed} failed")
    return EXIT_OK if failed == 0 else EXIT_FAILED


def _cmd_export_dataset(args: argparse.Namespace) -> int:
    try:
        with open(args.infile, encoding="utf-8") as fh:
            records = list(read_records(fh))
        samples = generate_dataset(records, draws=args.draws)
        with open(args.out, "w", encoding="utf-8", newline="") as out:
            if args.format == "csv":
                count = write_dataset_csv(samples, out)
            else:
                count = write_dataset_jsonl(samples, out)
    except (OSError, RecordError, DatasetError) as exc:
        return _fail_input(str(exc))
    print(f"wrote {count} samples to {args.out}")
    return EXIT_OK


def _cmd_metrics(args: argparse.Namespace) -> int:
    labels: list[int] = []
    scores: list[float] = []
    try:
        with open(args.infile, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    row = json.loads(line)
                    labels.append(int(row["label"]))
                    scores.append(float(row["score"]))
                except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                    return _fail_input(f"{args.infile}:{lineno}: {exc}")
        report = compute_metrics(labels, scores, threshold=args.threshold)
    except OSError as exc:
        return _fail_input(str(exc))
    except MetricsError as exc:
        return _fail_input(str(exc))
    _print_json(report.to_dict())
    return EXIT_OK


def _cmd_board(args: argparse.Namespace) -> int:
    payload = build_xigua_board().to_dict()
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            return _fail_input(f"cannot write {args.out}: {exc}")
        print(f"wrote board to {args.out}")
    else:
        print(text)
    return EXIT_OK


def _cmd_algebra(args: argparse.Namespace) -> int:
    try:
        report = check_ring_axioms(
            dimension=args.dim, modulus=args.modulus, samples=args.samples, seed=args.seed
        )
        nonclosure = nonclosure_witnesses(args.dim)
    except AlgebraError as exc:
        return _fail_input(str(exc))
    _print_json({"ring_axioms": report.to_dict(), "nonclosure": nonclosure.to_dict()})
    return EXIT_OK if report.all_passed and nonclosure.valid else EXIT_FAILED


def _cmd_serve(args: argparse.Namespace) -> int:
    archive = args.archive or os.environ.get(ARCHIVE_ENV_VAR)
    if args.ui and not os.path.isdir(args.ui):
        return _fail_input(f"UI directory {args.ui} does not exist")
    from .server import create_app

    import uvicorn

    app = create_app(archive_path=archive, ui_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xigua", description="Xi Gua Qi engine, solver, and dataset tools"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("selfplay", help="play seeded games and write a JSONL log")
    p.add_argument("--games", type=int, required=True)
    p.add_argument("--policy-a", default="random", help="player 1 policy spec")
    p.add_argument("--policy-b", default="random", help="player 2 policy spec")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_selfplay)

    p = sub.add_parser("solve", help="search one position and print the best move")
    p.add_argument("--position", help="JSON file with cells/placement and to_move")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--no-ab", action="store_true", help="disable alpha-beta pruning")
    p.add_argument("--tt", action="store_true", help="enable the transposition table")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="recheck per-move matrices over a game log")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--mode", choices=["y", "q"], default="y")
    p.add_argument("--report", help="write per-move JSONL results here")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("export-dataset", help="encode a game log as labeled samples")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.add_argument("--draws", choices=[DRAWS_EXCLUDE, DRAWS_AS_LOSS], default=DRAWS_EXCLUDE)
    p.set_defaults(func=_cmd_export_dataset)

    p = sub.add_parser("metrics", help="score a predictions file (JSONL label/score)")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--threshold", type=float, default=0.5)
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("board", help="export the built-in board as JSON")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_board)

    p = sub.add_parser("algebra", help="run ring-axiom and nonclosure checks")
    p.add_argument("--dim", type=int, default=5)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--modulus", type=int, default=3)
    p.set_defaults(func=_cmd_algebra)

    p = sub.add_parser("serve", help="run the JSON-over-HTTP game service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--archive", help=f"JSONL archive path (default ${ARCHIVE_ENV_VAR})")
    p.add_argument("--ui", help="optional static directory to serve alongside the API")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
