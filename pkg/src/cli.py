"""
Command-line entry point: `abc-trees <command> ...`.

Exit status: 0 on success, 1 when a checked claim fails, 2 on usage or
domain errors. Results go to stdout, or to --out written atomically (a bare
file name lands in ABC_EXPORT_DIR); logs go to stderr.
"""
import argparse
import json
import logging
import os
import sys
from typing import List, Literal, Optional

import pandas as pd
from pydantic import BaseModel, Field, ValidationError

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.config import Config
from src.services.analytic import limit_table, monotonicity_grid, threshold_rows
from src.services.branches import classify_branches, decompose_paths, resolve_root
from src.services.budget_manager import BudgetConfig, BudgetExceededError, BudgetManager
from src.services.core import DegreeSequence, DomainError, abc_index, format_tree, load_tree
from src.services.data_processor import DataProcessor
from src.services.enumeration import count_trees, enumerate_trees, enumerate_trees_with_degree_sequence
from src.services.greedy import build_greedy_tree
from src.services.transforms import (
    CASE_IDS,
    agreement_table,
    apply_case_transform,
    bound_grid,
    build_case,
    exception_windows,
    switch,
)
from src.services.verify import UnknownClaimError, run_verification, verify_thm1

logger = logging.getLogger("abc_trees")

EXIT_OK = 0
EXIT_CLAIM_FAILED = 1
EXIT_USAGE = 2


class RunConfig(BaseModel):
    """Validated run options shared by every command."""
    command: str
    workers: int = Field(default=1, ge=1)
    checkpoint_dir: Optional[str] = None
    tolerance: float = Field(default=1e-9, gt=0)
    seed: int = 0
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"
    output: Literal["json", "csv", "text"] = "text"
    out: Optional[str] = None


class UsageError(Exception):
    """Raised when command-line arguments are inconsistent."""
    pass


def _exporter() -> DataProcessor:
    return DataProcessor(export_dir=Config.EXPORT_DIR)


def _emit(config: RunConfig, text: str) -> None:
    if config.out:
        _exporter().write_text(config.out, text)
    else:
        sys.stdout.write(text)


def _emit_json(config: RunConfig, payload) -> None:
    _emit(config, DataProcessor.dumps(payload))


def _emit_frame(config: RunConfig, frame) -> None:
    if config.output == "json":
        _emit_json(config, json.loads(frame.to_json(orient="records")))
    elif config.output == "csv":
        _emit(config, frame.to_csv(index=False))
    else:
        _emit(config, frame.to_string(index=False) + "\n")


def _budget(config: RunConfig) -> BudgetManager:
    return BudgetManager(BudgetConfig(
        n_max=Config.N_MAX,
        hard_cap=Config.N_HARD_CAP,
        thm1_n_max=Config.THM1_N_MAX,
        trees_per_second=Config.TREES_PER_SECOND,
    ))


# -- commands -------------------------------------------------------------------

def cmd_abc(args, config: RunConfig) -> int:
    tree = load_tree(args.tree, args.format)
    value = abc_index(tree)
    if config.output == "json":
        _emit_json(config, {"n": tree.n, "abc": value})
    else:
        _emit(config, f"{value:.10f}\n")
    return EXIT_OK


def cmd_enumerate(args, config: RunConfig) -> int:
    if args.degseq:
        d = DegreeSequence.parse(args.degseq)
        if d.n != args.n:
            raise UsageError(f"--degseq has {d.n} entries but --n is {args.n}.")
        trees = enumerate_trees_with_degree_sequence(d)
    else:
        trees = None

    if args.count_only:
        count = sum(1 for _ in trees) if trees is not None else count_trees(args.n)
        frame = DataProcessor.count_table({args.n: count})
        if config.output == "text":
            _emit(config, f"{count}\n")
        else:
            _emit_frame(config, frame)
        return EXIT_OK

    trees = trees if trees is not None else enumerate_trees(args.n)
    blocks = [format_tree(tree, args.format) for tree in trees]
    _emit(config, "\n".join(blocks))
    return EXIT_OK


def cmd_greedy(args, config: RunConfig) -> int:
    layout = build_greedy_tree(DegreeSequence.parse(args.degseq))
    text = format_tree(layout.tree, args.format)
    if args.abc:
        text += f"abc {abc_index(layout.tree):.10f}\n"
    _emit(config, text)
    return EXIT_OK


def cmd_analyze(args, config: RunConfig) -> int:
    tree = load_tree(args.tree, args.format)
    root = resolve_root(tree, args.root)
    payload = {
        "n": tree.n,
        "abc": abc_index(tree),
        "root": root,
        "branches": classify_branches(tree, root).model_dump(mode="json"),
        "paths": decompose_paths(tree).model_dump(mode="json"),
    }
    _emit_json(config, payload)
    return EXIT_OK


def cmd_transform(args, config: RunConfig) -> int:
    tree = load_tree(args.tree, args.format)
    if args.case == "SWITCH":
        if args.x is None or args.y is None:
            raise UsageError("SWITCH needs --x and --y for the second edge.")
        after, report = switch(tree, (args.u, args.v), (args.x, args.y))
    else:
        case = build_case(tree, args.case, args.u, args.v, root=args.root, u1=args.u1, v1=args.v1)
        after, report = apply_case_transform(tree, case)
    if args.report == "json":
        payload = report.model_dump(mode="json")
        payload["tree"] = format_tree(after, "edges")
        _emit_json(config, payload)
    else:
        _emit(config, format_tree(after, args.format)
              + f"structural {report.structural_delta:.12f}\n"
              + f"formula {report.formula_delta:.12f}\n"
              + f"printed {report.printed_delta:.12f}\n")
    return EXIT_OK if report.agrees(config.tolerance) else EXIT_CLAIM_FAILED


def cmd_agreement(args, config: RunConfig) -> int:
    cases = list(CASE_IDS) if args.case == "all" else [args.case]
    frame = agreement_table(cases, args.instances, config.seed, config.tolerance)
    _emit_frame(config, frame)
    ok = bool(frame["agree"].all() and frame["within_printed"].all())
    return EXIT_OK if ok else EXIT_CLAIM_FAILED


def cmd_bounds(args, config: RunConfig) -> int:
    cases = [c for c in CASE_IDS if c != "T"] if args.case == "all" else [args.case]
    if args.windows:
        rows = []
        for case_id in cases:
            for key, (low, high) in exception_windows(case_id).items():
                rows.append({"case": case_id, "key": str(key), "du_min": low, "du_max": high})
        _emit_frame(config, pd.DataFrame(rows, columns=["case", "key", "du_min", "du_max"]))
        return EXIT_OK
    frame = pd.concat([bound_grid(c, args.span) for c in cases], ignore_index=True)
    if args.table and config.output == "text":
        config = config.model_copy(update={"output": "csv"})
    _emit_frame(config, frame)
    return EXIT_OK


def cmd_analytic(args, config: RunConfig) -> int:
    if args.topic == "thresholds":
        rows = threshold_rows()
        if config.output == "text":
            _emit(config, "".join(f"{r['dv']} {r['du'] if r['du'] is not None else 'none'}\n" for r in rows))
        else:
            _emit_frame(config, pd.DataFrame(rows, columns=["dv", "du"]))
        return EXIT_OK
    if args.topic == "grid":
        frame = monotonicity_grid(args.lemma)
        _emit_frame(config, frame)
        return EXIT_OK if int(frame["violations"].sum()) == 0 else EXIT_CLAIM_FAILED
    _emit_frame(config, limit_table())
    return EXIT_OK


def cmd_verify(args, config: RunConfig) -> int:
    report, records = run_verification(
        args.n_min, args.n_max, claims=args.claims, workers=config.workers,
        checkpoint_dir=config.checkpoint_dir, tolerance=config.tolerance,
        budget=_budget(config), jobs_per_worker=Config.JOBS_PER_WORKER,
    )
    if config.output == "csv":
        _emit_frame(config, DataProcessor.summarise_minimizers(records))
    else:
        _emit_json(config, [
            {
                "n": o.n,
                "min_abc": o.min_abc,
                "minimizer_codes": o.minimizer_codes,
                "claims": [c.model_dump(mode="json", exclude_none=True, exclude={"n"}) for c in o.claims],
            }
            for o in report.orders
        ])
    if args.summary:
        _exporter().write_frame(args.summary, DataProcessor.summarise_minimizers(records))
    return EXIT_OK if report.passed else EXIT_CLAIM_FAILED


def cmd_thm1(args, config: RunConfig) -> int:
    report = verify_thm1(args.n_max, budget=_budget(config), tolerance=config.tolerance, n_min=args.n_min)
    _emit_json(config, report.model_dump(mode="json", exclude_none=True))
    return EXIT_OK if report.passed else EXIT_CLAIM_FAILED


COMMANDS = {
    "abc": cmd_abc,
    "enumerate": cmd_enumerate,
    "greedy": cmd_greedy,
    "analyze": cmd_analyze,
    "transform": cmd_transform,
    "agreement": cmd_agreement,
    "bounds": cmd_bounds,
    "analytic": cmd_analytic,
    "verify": cmd_verify,
    "thm1": cmd_thm1,
}


# -- parser -----------------------------------------------------------------------

def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    """Run options; on subcommands they default to SUPPRESS so values given before the subcommand survive."""
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--workers", type=int, default=default(Config.WORKERS))
    parser.add_argument("--checkpoint-dir", default=default(Config.CHECKPOINT_DIR))
    parser.add_argument("--tolerance", type=float, default=default(Config.TOLERANCE))
    parser.add_argument("--seed", type=int, default=default(Config.SEED))
    parser.add_argument("--log-level", default=default("WARNING"), choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--output", default=default("text"), choices=["json", "csv", "text"])
    parser.add_argument("--out", default=default(None), help="write the result to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="abc-trees", description="Minimal-ABC tree toolkit.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def tree_input(p):
        p.add_argument("--tree", required=True)
        p.add_argument("--format", default="edges", choices=["edges", "parents", "graph6"])

    p = sub.add_parser("abc", parents=[common], help="ABC index of a tree file")
    tree_input(p)

    p = sub.add_parser("enumerate", parents=[common], help="all trees of order n, or those with a degree sequence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degseq")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--format", default="edges", choices=["edges", "parents", "graph6"])

    p = sub.add_parser("greedy", parents=[common], help="greedy tree of a degree sequence")
    p.add_argument("--degseq", required=True)
    p.add_argument("--format", default="edges", choices=["edges", "parents", "graph6"])
    p.add_argument("--abc", action="store_true")

    p = sub.add_parser("analyze", parents=[common], help="branch profile and path decomposition as JSON")
    tree_input(p)
    p.add_argument("--root", default="auto")
    p.add_argument("--json", action="store_true", help="accepted for compatibility; output is always JSON")

    p = sub.add_parser("transform", parents=[common], help="apply one transformation and compare deltas")
    tree_input(p)
    p.add_argument("--case", required=True, choices=list(CASE_IDS) + ["SWITCH"])
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--x", type=int)
    p.add_argument("--y", type=int)
    p.add_argument("--u1", type=int)
    p.add_argument("--v1", type=int)
    p.add_argument("--root", default="auto")
    p.add_argument("--report", default="text", choices=["json", "text"])

    p = sub.add_parser("agreement", parents=[common], help="structural vs closed-form deltas on random instances")
    p.add_argument("--case", default="all", choices=list(CASE_IDS) + ["all"])
    p.add_argument("--instances", type=int, default=100)

    p = sub.add_parser("bounds", parents=[common], help="case majorants over their parameter grids")
    p.add_argument("--case", default="all", choices=[c for c in CASE_IDS if c != "T"] + ["all"])
    p.add_argument("--table", action="store_true")
    p.add_argument("--windows", action="store_true", help="d(u) ranges where the majorant is non-negative")
    p.add_argument("--span", type=int, default=80)

    p = sub.add_parser("analytic", parents=[common], help="thresholds, monotonicity grids, limits")
    p.add_argument("topic", choices=["thresholds", "grid", "limits"])
    p.add_argument("--lemma", type=int, default=5, choices=[5, 6])

    p = sub.add_parser("verify", parents=[common], help="exhaustive minimizer search and claim checks")
    p.add_argument("--n-min", type=int, default=10)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--claims", default="all")
    p.add_argument("--checkpoint", dest="checkpoint", default=None)
    p.add_argument("--summary", help="CSV file for n,min_abc,num_minimizers")

    p = sub.add_parser("thm1", parents=[common], help="greedy tree optimality over all degree sequences")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=Config.THM1_N_MAX)
    return parser


def dispatch(args: argparse.Namespace) -> int:
    checkpoint = getattr(args, "checkpoint", None) or args.checkpoint_dir
    try:
        config = RunConfig(
            command=args.command,
            workers=args.workers,
            checkpoint_dir=checkpoint,
            tolerance=args.tolerance,
            seed=args.seed,
            log_level=args.log_level,
            output=args.output,
            out=args.out,
        )
    except ValidationError as e:
        print(f"abc-trees: invalid options: {e}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(level=config.log_level, stream=sys.stderr,
                        format="%(asctime)s %(name)s %(levelname)s %(message)s")
    try:
        return COMMANDS[config.command](args, config)
    except (DomainError, BudgetExceededError, UnknownClaimError, UsageError) as e:
        message = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"abc-trees: {message}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return dispatch(args)


if __name__ == "__main__":
    sys.exit(main())
