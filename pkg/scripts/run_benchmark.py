#!/usr/bin/env python
"""
Run Benchmark Script.

Desk-scale linkage experiments on perturbed synthetic data:

- recall:      full vs attribute-only recall/precision at one s_t, seed-averaged.
- sweep:       recall and |M| over s_t = 0.5..1.0 in both modes (must not increase).
- determinism: identical matches and metrics for every worker count.
- timing:      end-to-end runtime of one run against a budget (slow up to 2x, fail beyond).
- params:      precision/recall for several p_t and n_a; candidate counts must
               shrink as p_t rises and grow as n_a rises.

Usage:
    python scripts/run_benchmark.py --experiment all
    python scripts/run_benchmark.py --experiment recall --size 2000 --seeds 2
    python scripts/run_benchmark.py --experiment timing --timing-size 100000 --workers 4
"""

import argparse
import sys
import tempfile
from pathlib import Path
from statistics import mean
from typing import Dict, List, Sequence, Tuple

from loguru import logger

# Add project root to path
sys.path.insert(0, ".")

from src.config.loader import parse_config  # noqa: E402
from src.config.settings import Config  # noqa: E402
from src.evaluation.metrics import LinkageQuality, precision_recall  # noqa: E402
from src.evaluation.sweep import MODE_ATTRIBUTE_ONLY, MODE_FULL, threshold_sweep  # noqa: E402
from src.matching.candidates import gen_candidate_pairs  # noqa: E402
from src.ingest.ground_truth import GroundTruth  # noqa: E402
from src.matching.matcher import match  # noqa: E402
from src.model.records import Database  # noqa: E402
from src.model.signatures import SignatureDatabase  # noqa: E402
from src.pipeline.steps import LinkagePipeline  # noqa: E402
from src.reporting.writers import write_matches_csv, write_metrics_report  # noqa: E402
from src.synthgen.perturb import perturbed_pair  # noqa: E402

EXPERIMENTS = ("recall", "sweep", "determinism", "timing", "params")

MIN_RECALL_GAIN = 0.05
MAX_PRECISION_LOSS = 0.02
SLOW_FACTOR = 2.0

Signatures = Tuple[SignatureDatabase, SignatureDatabase]


def parse_args():
    """Parse command-line arguments for the benchmark."""
    parser = argparse.ArgumentParser(description="Signature linkage benchmark")
    parser.add_argument(
        "--experiment",
        choices=list(EXPERIMENTS) + ["all"],
        default="all",
        help="Experiment to run (default: all)",
    )
    parser.add_argument(
        "--config",
        type=str,
        default="config/synthetic.example.cfg",
        help="Linkage configuration file",
    )
    parser.add_argument("--size", type=int, default=10000, help="Records per database")
    parser.add_argument("--seeds", type=int, default=5, help="Number of seeds to average over")
    parser.add_argument("--overlap", type=float, default=0.8)
    parser.add_argument("--mcar-rate", type=float, default=0.2)
    parser.add_argument("--mcar-max", type=int, default=5)
    parser.add_argument("--corrupt-rate", type=float, default=0.2)
    parser.add_argument("--max-edits", type=int, default=3)
    parser.add_argument("--st", type=float, default=0.8, help="Similarity threshold")
    parser.add_argument("--n-a", type=int, default=5, help="Number of combinations")
    parser.add_argument(
        "--timing-size", type=int, default=100000, help="Records per database for timing"
    )
    parser.add_argument(
        "--budget", type=float, default=120.0, help="End-to-end seconds allowed for timing"
    )
    parser.add_argument(
        "--workers",
        type=str,
        default="1,4,8",
        help="Comma-separated worker counts; the first one is used outside determinism",
    )
    return parser.parse_args()


# ----------------------------------------------------------------------
# Shared helpers
# ----------------------------------------------------------------------


def make_data(args, seed: int, size: int = 0) -> Tuple[Database, Database, GroundTruth]:
    size = size or args.size
    return perturbed_pair(
        size,
        size,
        args.overlap,
        seed=seed,
        mcar_rate=args.mcar_rate,
        mcar_max=args.mcar_max,
        corrupt_rate=args.corrupt_rate,
        max_edits=args.max_edits,
    )


def build_signatures(config: Config, db_a: Database, db_b: Database) -> Signatures:
    pipeline = LinkagePipeline(config)
    combinations = list(pipeline.select(db_a, db_b).data)
    return pipeline.signatures(db_a, db_b, combinations).data


def quality_for(signatures: Signatures, config: Config, truth: GroundTruth) -> LinkageQuality:
    return precision_recall(match(signatures[0], signatures[1], config), truth)


# ----------------------------------------------------------------------
# Gates
# ----------------------------------------------------------------------


def timing_verdict(total_seconds: float, budget: float) -> str:
    """PASS within the budget, SLOW up to SLOW_FACTOR times it, FAIL beyond."""
    if total_seconds <= budget:
        return "PASS"
    if total_seconds <= SLOW_FACTOR * budget:
        return "SLOW"
    return "FAIL"


def is_monotone(values: Sequence[float], increasing: bool) -> bool:
    """Whether ``values`` never decrease (``increasing``) or never increase."""
    pairs = list(zip(values, values[1:]))
    if increasing:
        return all(current >= previous for previous, current in pairs)
    return all(current <= previous for previous, current in pairs)


# ----------------------------------------------------------------------
# Experiments
# ----------------------------------------------------------------------


def run_recall(args, config: Config) -> bool:
    results: Dict[str, List[LinkageQuality]] = {MODE_FULL: [], MODE_ATTRIBUTE_ONLY: []}
    for seed in range(args.seeds):
        db_a, db_b, truth = make_data(args, seed)
        signatures = build_signatures(config.with_overrides(seed=seed), db_a, db_b)
        results[MODE_FULL].append(
            quality_for(signatures, config.with_overrides(attribute_only=False), truth)
        )
        results[MODE_ATTRIBUTE_ONLY].append(
            quality_for(signatures, config.with_overrides(attribute_only=True), truth)
        )

    recall = {mode: mean(q.recall for q in runs) for mode, runs in results.items()}
    precision = {mode: mean(q.precision for q in runs) for mode, runs in results.items()}
    for mode in results:
        logger.info(
            f"[Bench] {mode}: precision={precision[mode]:.4f} recall={recall[mode]:.4f} "
            f"(s_t={config.s_t}, {args.seeds} seeds)"
        )

    gain = recall[MODE_FULL] - recall[MODE_ATTRIBUTE_ONLY]
    loss = precision[MODE_ATTRIBUTE_ONLY] - precision[MODE_FULL]
    passed = gain >= MIN_RECALL_GAIN and loss <= MAX_PRECISION_LOSS
    logger.info(
        f"[Bench] recall gain {gain:+.4f} (>= {MIN_RECALL_GAIN}), "
        f"precision loss {loss:+.4f} (<= {MAX_PRECISION_LOSS}): {'PASS' if passed else 'FAIL'}"
    )
    return passed


def run_sweep(args, config: Config) -> bool:
    db_a, db_b, truth = make_data(args, 0)
    signatures = build_signatures(config, db_a, db_b)
    rows = threshold_sweep(signatures[0], signatures[1], config, truth)

    violations = 0
    for mode in (MODE_FULL, MODE_ATTRIBUTE_ONLY):
        series = [r for r in rows if r.mode == mode]
        for previous, current in zip(series, series[1:]):
            if current.recall > previous.recall or current.n_matches > previous.n_matches:
                violations += 1
                logger.error(f"[Bench] {mode}: s_t={current.s_t} increased recall or |M|")
        for row in series:
            logger.info(
                f"[Bench] {mode} s_t={row.s_t:.1f}: precision={row.precision:.4f} "
                f"recall={row.recall:.4f} |M|={row.n_matches}"
            )
    logger.info(f"[Bench] Monotonicity violations: {violations}")
    return violations == 0


def run_determinism(args, config: Config, worker_counts: List[int]) -> bool:
    db_a, db_b, truth = make_data(args, 0)
    outputs = []
    with tempfile.TemporaryDirectory() as tmp:
        for workers in worker_counts:
            run = LinkagePipeline(config.with_overrides(workers=workers)).run(db_a, db_b)
            out_dir = Path(tmp) / f"workers-{workers}"
            matches = write_matches_csv(run.matches, out_dir / "matches.csv")
            metrics = write_metrics_report(
                precision_recall(run.matches, truth), out_dir / "metrics.txt"
            )
            outputs.append((matches.read_bytes(), metrics.read_bytes()))

    identical = all(output == outputs[0] for output in outputs[1:])
    logger.info(
        f"[Bench] Worker counts {worker_counts}: "
        f"{'identical outputs' if identical else 'OUTPUTS DIFFER'}"
    )
    return identical


def run_timing(args, config: Config) -> bool:
    db_a, db_b, _ = make_data(args, 0, size=args.timing_size)
    run = LinkagePipeline(config).run(db_a, db_b)
    for line in run.runtime.as_lines():
        logger.info(f"[Bench] {line}")

    total = run.runtime.total_seconds
    verdict = timing_verdict(total, args.budget)
    message = (
        f"[Bench] {args.timing_size} x {args.timing_size} linked in {total:.1f}s "
        f"(budget {args.budget:.0f}s): {verdict}"
    )
    if verdict == "PASS":
        logger.info(message)
    elif verdict == "SLOW":
        logger.warning(message)
    else:
        logger.error(message)
    return verdict != "FAIL"


def run_params(args, config: Config) -> bool:
    db_a, db_b, truth = make_data(args, 0)
    passed = True
    for name, values, increasing in (
        ("p_t", (0.5, 0.6, 0.7, 0.8, 0.9), False),
        ("n_a", (1, 3, 5, 7, 10), True),
    ):
        counts = []
        for value in values:
            run_config = config.with_overrides(**{name: value})
            signatures = build_signatures(run_config, db_a, db_b)
            counts.append(len(gen_candidate_pairs(*signatures)))
            quality = quality_for(signatures, run_config, truth)
            logger.info(
                f"[Bench] {name}={value}: precision={quality.precision:.4f} "
                f"recall={quality.recall:.4f} candidates={counts[-1]}"
            )
        if not is_monotone(counts, increasing):
            direction = "grow" if increasing else "shrink"
            logger.error(f"[Bench] Candidate counts {counts} do not {direction} with {name}")
            passed = False
    return passed


def main():
    """Main entry point for the benchmark."""
    args = parse_args()
    worker_counts = [int(w) for w in args.workers.split(",") if w.strip()]

    config = parse_config(args.config) if Path(args.config).exists() else Config()
    config = config.with_overrides(s_t=args.st, n_a=args.n_a, workers=worker_counts[0])

    logger.info("=" * 60)
    logger.info("[Bench] Signature linkage benchmark")
    logger.info("=" * 60)
    logger.info(f"[Bench] Size: {args.size} x {args.size}, overlap {args.overlap}")
    logger.info(f"[Bench] Resolved config: {config.to_dict()}")

    selected = EXPERIMENTS if args.experiment == "all" else (args.experiment,)
    outcomes = {}
    for name in selected:
        logger.info(f"[Bench] --- {name} ---")
        if name == "recall":
            outcomes[name] = run_recall(args, config)
        elif name == "sweep":
            outcomes[name] = run_sweep(args, config)
        elif name == "determinism":
            outcomes[name] = run_determinism(args, config, worker_counts)
        elif name == "timing":
            outcomes[name] = run_timing(args, config)
        else:
            outcomes[name] = run_params(args, config)

    for name, passed in outcomes.items():
        logger.info(f"[Bench] {name}: {'PASS' if passed else 'FAIL'}")
    exit_code = 0 if all(outcomes.values()) else 1
    logger.info(f"[Bench] Finished with exit code: {exit_code}")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
