"""
Report Writers Module.

Writes every artefact of a linkage run:
- matches CSV (id_a, id_b, similarity, stage)
- combinations CSV with per-database scores
- signature dump CSV, one per database
- metrics, runtime and resolved-config reports as ``key = value`` lines
- threshold sweep CSV

Floats are written with a fixed precision so that identical runs yield
byte-identical files.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, List, Mapping, Sequence

import pandas as pd
from loguru import logger

from src.evaluation.metrics import LinkageQuality
from src.evaluation.runtime import RuntimeReport
from src.evaluation.sweep import SweepRow
from src.model.matches import MatchSet
from src.model.signatures import AttributeCombination, SignatureDatabase

FLOAT_FORMAT = "%.6f"


def _prepare(path: str | Path) -> Path:
    file_path = Path(path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    return file_path


def write_matches_csv(matches: MatchSet, path: str | Path) -> Path:
    file_path = _prepare(path)
    frame = pd.DataFrame(
        [(p.id_a, p.id_b, p.similarity, p.stage.value) for p in matches],
        columns=["id_a", "id_b", "similarity", "stage"],
    )
    frame.to_csv(file_path, index=False, float_format=FLOAT_FORMAT, encoding="utf-8")
    logger.info(f"[Report] Wrote {len(matches)} matches to {file_path}")
    return file_path


def write_combinations_csv(
    combinations: Sequence[AttributeCombination],
    schema: Sequence[str],
    path: str | Path,
) -> Path:
    """One row per combination, in selection order, with per-database score columns."""
    file_path = _prepare(path)
    rows: List[Dict[str, Any]] = []
    for rank, combination in enumerate(combinations, start=1):
        row: Dict[str, Any] = {
            "rank": rank,
            "combination": combination.label(schema),
            "size": combination.size,
            "score": combination.score,
            "completeness": combination.completeness,
            "gini": combination.gini,
        }
        for name, s_c, s_g, score in combination.per_database:
            row[f"completeness_{name}"] = s_c
            row[f"gini_{name}"] = s_g
            row[f"score_{name}"] = score
        rows.append(row)

    columns = ["rank", "combination", "size", "score", "completeness", "gini"]
    frame = pd.DataFrame(rows)
    if frame.empty:
        frame = pd.DataFrame(columns=columns)
    frame.to_csv(file_path, index=False, float_format=FLOAT_FORMAT, encoding="utf-8")
    logger.info(f"[Report] Wrote {len(combinations)} combinations to {file_path}")
    return file_path


def write_signature_dump(
    signatures: SignatureDatabase, schema: Sequence[str], path: str | Path
) -> Path:
    """record_id, signature, combination; records in database order, signatures sorted."""
    file_path = _prepare(path)
    rows = []
    for record_id, (attribute_signatures, _) in signatures.per_record.items():
        for signature in sorted(attribute_signatures, key=lambda s: s.tokens):
            combination = signature.combination
            rows.append(
                (
                    record_id,
                    signature.display(),
                    combination.label(schema) if combination is not None else "",
                )
            )
    pd.DataFrame(rows, columns=["record_id", "signature", "combination"]).to_csv(
        file_path, index=False, encoding="utf-8"
    )
    return file_path


def format_key_values(values: Mapping[str, Any]) -> str:
    lines = []
    for key, value in values.items():
        if isinstance(value, float):
            value = f"{value:.6f}"
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def write_key_values(values: Mapping[str, Any], path: str | Path) -> Path:
    file_path = _prepare(path)
    file_path.write_text(format_key_values(values), encoding="utf-8")
    return file_path


def write_metrics_report(
    quality: LinkageQuality, path: str | Path, **extra: Any
) -> Path:
    values: Dict[str, Any] = dict(extra)
    values.update(quality.to_dict())
    logger.info(f"[Report] precision={quality.precision:.4f} recall={quality.recall:.4f}")
    return write_key_values(values, path)


def write_runtime_report(report: RuntimeReport, path: str | Path) -> Path:
    file_path = _prepare(path)
    file_path.write_text("\n".join(report.as_lines()) + "\n", encoding="utf-8")
    return file_path


def write_sweep_csv(rows: Sequence[SweepRow], path: str | Path) -> Path:
    file_path = _prepare(path)
    frame = pd.DataFrame(
        [(r.mode, r.s_t, r.precision, r.recall, r.n_matches) for r in rows],
        columns=["mode", "s_t", "precision", "recall", "n_matches"],
    )
    frame.to_csv(file_path, index=False, float_format=FLOAT_FORMAT, encoding="utf-8")
    return file_path
