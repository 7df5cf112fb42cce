"""
Command-Line Interface Module.

Entry point ``sig-link`` with four subcommands:

- select: score the attribute lattice and write the selected combinations.
- link:   run selection, signature generation and matching end to end.
- eval:   score a stored match set, or sweep thresholds for both matchers.
- synth:  generate a perturbed synthetic database pair with ground truth.

Exit codes: 0 success, 2 usage or input error, 1 anything else.
Precedence of settings: command-line flag > config file > default.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from loguru import logger

from src.config.loader import parse_config
from src.config.settings import Config, parse_relationship_sets
from src.evaluation.metrics import precision_recall
from src.evaluation.runtime import runtime_report
from src.evaluation.sweep import DEFAULT_THRESHOLDS, threshold_sweep
from src.ingest.csv_io import load_database, load_match_set, write_database
from src.ingest.ground_truth import GroundTruth, load_ground_truth, write_ground_truth
from src.model.errors import RecordLinkageError
from src.model.records import Database
from src.pipeline.steps import LinkagePipeline
from src.reporting.writers import (
    write_combinations_csv,
    write_key_values,
    write_matches_csv,
    write_metrics_report,
    write_runtime_report,
    write_signature_dump,
    write_sweep_csv,
)
from src.selection.cache import selection_cache_key
from src.synthgen.perturb import perturbed_pair

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {message}"

# Namespace attributes that map one-to-one onto Config fields
OVERRIDE_FLAGS = (
    "n_a",
    "alpha",
    "c_t",
    "p_t",
    "beta",
    "s_t",
    "lam",
    "mu",
    "seed",
    "similarity",
    "attribute_only",
    "one_to_one",
    "workers",
)


# ----------------------------------------------------------------------
# Argument parsing
# ----------------------------------------------------------------------


def _split_csv(raw: str) -> List[str]:
    return [part.strip() for part in raw.split(",") if part.strip()]


def _thresholds(raw: str) -> List[float]:
    try:
        return [float(part) for part in _split_csv(raw)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid threshold list: '{raw}'") from None


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--verbose", "-v", action="store_true", help="Log at DEBUG level")
    parser.add_argument("--log-file", type=str, default=None, help="Also log to this file")
    return parser


def _linkage_parser() -> argparse.ArgumentParser:
    """Inputs and config overrides shared by select, link and eval."""
    parser = argparse.ArgumentParser(add_help=False)
    inputs = parser.add_argument_group("inputs")
    inputs.add_argument("--db-a", required=True, help="First database (CSV)")
    inputs.add_argument("--db-b", required=True, help="Second database (CSV)")
    inputs.add_argument("--config", default=None, help="Config file (.cfg, .ini, .yaml, .json)")
    inputs.add_argument("--out-dir", default="out", help="Output directory (default: out)")
    inputs.add_argument("--cache-dir", default=None, help="Selection cache directory")
    inputs.add_argument("--workers", type=int, default=None, help="Worker processes")

    overrides = parser.add_argument_group("config overrides")
    overrides.add_argument("--n-a", dest="n_a", type=int, default=None)
    overrides.add_argument("--alpha", type=float, default=None)
    overrides.add_argument("--ct", dest="c_t", type=float, default=None)
    overrides.add_argument("--pt", dest="p_t", type=float, default=None)
    overrides.add_argument("--beta", type=float, default=None)
    overrides.add_argument("--st", dest="s_t", type=float, default=None)
    overrides.add_argument("--lambda", dest="lam", type=float, default=None)
    overrides.add_argument("--mu", type=float, default=None)
    overrides.add_argument("--seed", type=int, default=None)
    overrides.add_argument("--qids", default=None, help="Comma-separated QID attributes")
    overrides.add_argument(
        "--relationships", default=None, help="Relationship sets, e.g. 'last_name+zip|phone'"
    )
    overrides.add_argument(
        "--similarity", choices=["jaccard", "dice"], default=None, help="Set similarity"
    )
    overrides.add_argument(
        "--attribute-only",
        action="store_true",
        default=None,
        help="Disable the relational matching stage",
    )
    overrides.add_argument(
        "--one-to-one",
        action="store_true",
        default=None,
        help="Keep a greedy one-to-one subset of the matches",
    )
    return parser


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    linkage = _linkage_parser()

    parser = argparse.ArgumentParser(
        prog="sig-link", description="Signature-based record linkage with missing values"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser(
        "select", parents=[common, linkage], help="Select attribute combinations"
    )

    link = sub.add_parser("link", parents=[common, linkage], help="Link two databases")
    link.add_argument("--truth", default=None, help="Ground-truth pairs CSV (id_a,id_b)")
    link.add_argument(
        "--dump-signatures", default=None, help="Write per-record signatures to this directory"
    )

    evaluate = sub.add_parser(
        "eval", parents=[common, linkage], help="Evaluate matches or sweep thresholds"
    )
    evaluate.add_argument("--truth", default=None, help="Ground-truth pairs CSV (id_a,id_b)")
    evaluate.add_argument("--matches", default=None, help="Matches CSV to score")
    evaluate.add_argument(
        "--thresholds",
        type=_thresholds,
        default=list(DEFAULT_THRESHOLDS),
        help="Comma-separated s_t values (default: 0.5,...,1.0)",
    )

    synth = sub.add_parser("synth", parents=[common], help="Generate a synthetic database pair")
    synth.add_argument("--n", type=int, default=1000, help="Records per database")
    synth.add_argument("--size-a", type=int, default=None, help="Records in A (default: --n)")
    synth.add_argument("--size-b", type=int, default=None, help="Records in B (default: --n)")
    synth.add_argument("--overlap", type=float, default=0.8)
    synth.add_argument("--households", type=float, default=2.5, help="Mean household size")
    synth.add_argument("--moved-fraction", type=float, default=0.0)
    synth.add_argument("--mcar-rate", type=float, default=0.2)
    synth.add_argument("--mcar-max", type=int, default=5)
    synth.add_argument("--corrupt-rate", type=float, default=0.2)
    synth.add_argument("--max-edits", type=int, default=3)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--out-dir", default="out", help="Output directory (default: out)")
    return parser


# ----------------------------------------------------------------------
# Shared helpers
# ----------------------------------------------------------------------


def configure_logging(verbose: bool = False, log_file: Optional[str] = None) -> None:
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "INFO", format=LOG_FORMAT)
    if log_file:
        logger.add(log_file, level="DEBUG", format=LOG_FORMAT)


def resolve_config(args: argparse.Namespace) -> Config:
    """Defaults, then the config file, then flags."""
    config = parse_config(args.config) if args.config else Config()
    overrides: Dict[str, Any] = {name: getattr(args, name) for name in OVERRIDE_FLAGS}
    if args.qids is not None:
        overrides["qids"] = tuple(_split_csv(args.qids))
    if args.relationships is not None:
        overrides["relationships"] = parse_relationship_sets(args.relationships)
    config = config.with_overrides(**overrides)
    logger.info(f"[CLI] Resolved config: {config.to_dict()}")
    return config


def _load_inputs(args: argparse.Namespace, config: Config) -> tuple[Database, Database]:
    db_a = load_database(
        args.db_a, id_column=config.id_column, entity_column=config.entity_column, name="A"
    )
    db_b = load_database(
        args.db_b, id_column=config.id_column, entity_column=config.entity_column, name="B"
    )
    return db_a, db_b


def _load_truth(
    args: argparse.Namespace, db_a: Database, db_b: Database
) -> Optional[GroundTruth]:
    if args.truth is not None:
        return load_ground_truth(args.truth, db_a, db_b)
    if db_a.has_entity_ids and db_b.has_entity_ids:
        return load_ground_truth(None, db_a, db_b)
    return None


def _pipeline(
    args: argparse.Namespace, config: Config, cache_dir: Optional[str]
) -> LinkagePipeline:
    if cache_dir is None:
        return LinkagePipeline(config)
    key = selection_cache_key(args.db_a, args.db_b, config)
    return LinkagePipeline(config, cache_dir=Path(cache_dir), cache_key=key)


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------


def cmd_select(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    db_a, db_b = _load_inputs(args, config)
    out_dir = Path(args.out_dir)

    pipeline = _pipeline(args, config, args.cache_dir or str(out_dir))
    selected = pipeline.select(db_a, db_b)
    write_combinations_csv(selected.data, db_a.schema, out_dir / "combinations.csv")
    write_runtime_report(runtime_report([selected]), out_dir / "runtime.txt")
    return EXIT_OK


def cmd_link(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    db_a, db_b = _load_inputs(args, config)
    truth = _load_truth(args, db_a, db_b)
    out_dir = Path(args.out_dir)

    run = _pipeline(args, config, args.cache_dir).run(db_a, db_b)

    write_matches_csv(run.matches, out_dir / "matches.csv")
    write_combinations_csv(run.combinations, db_a.schema, out_dir / "combinations.csv")
    write_runtime_report(run.runtime, out_dir / "runtime.txt")
    write_key_values(config.to_dict(), out_dir / "config.txt")
    if truth is not None:
        write_metrics_report(
            precision_recall(run.matches, truth),
            out_dir / "metrics.txt",
            s_t=config.s_t,
            mode="attribute_only" if config.attribute_only else "full",
        )
    if args.dump_signatures:
        dump_dir = Path(args.dump_signatures)
        write_signature_dump(run.signatures_a, db_a.schema, dump_dir / "signatures_a.csv")
        write_signature_dump(run.signatures_b, db_b.schema, dump_dir / "signatures_b.csv")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    db_a, db_b = _load_inputs(args, config)
    truth = _load_truth(args, db_a, db_b)
    if truth is None:
        raise RecordLinkageError("eval needs --truth or entity ids in both databases")
    out_dir = Path(args.out_dir)

    if args.matches:
        quality = precision_recall(load_match_set(args.matches), truth)
        write_metrics_report(quality, out_dir / "metrics.txt")
        return EXIT_OK

    pipeline = _pipeline(args, config, args.cache_dir)
    selected = pipeline.select(db_a, db_b)
    built = pipeline.signatures(db_a, db_b, list(selected.data))
    signatures_a, signatures_b = built.data
    rows = threshold_sweep(signatures_a, signatures_b, config, truth, args.thresholds)
    write_sweep_csv(rows, out_dir / "sweep.csv")
    write_runtime_report(runtime_report([selected, built]), out_dir / "runtime.txt")
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    db_a, db_b, truth = perturbed_pair(
        args.size_a if args.size_a is not None else args.n,
        args.size_b if args.size_b is not None else args.n,
        args.overlap,
        households=args.households,
        seed=args.seed,
        moved_fraction=args.moved_fraction,
        mcar_rate=args.mcar_rate,
        mcar_max=args.mcar_max,
        corrupt_rate=args.corrupt_rate,
        max_edits=args.max_edits,
    )

    out_dir = Path(args.out_dir)
    write_database(db_a, out_dir / "db_a.csv")
    write_database(db_b, out_dir / "db_b.csv")
    write_ground_truth(truth, out_dir / "truth.csv")
    print(f"{len(truth)} truth pairs written to {out_dir / 'truth.csv'}")
    return EXIT_OK


COMMANDS = {
    "select": cmd_select,
    "link": cmd_link,
    "eval": cmd_eval,
    "synth": cmd_synth,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    configure_logging(args.verbose, args.log_file)
    try:
        return COMMANDS[args.command](args)
    except (RecordLinkageError, FileNotFoundError) as e:
        logger.error(f"[CLI] {e}")
        return EXIT_USAGE
    except Exception:
        logger.exception(f"[CLI] {args.command} failed")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
