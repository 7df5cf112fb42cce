"""
Selection cache.

A selection run is keyed by the sha256 of both input files plus the
parameters that influence selection; ``link --cache-dir`` reuses a
stored result whose key matches instead of re-running the lattice.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import List, Optional, Sequence

from loguru import logger

from src.config.settings import Config
from src.model.signatures import AttributeCombination

_SELECTION_KEYS = (
    "n_a",
    "alpha",
    "c_t",
    "qids",
    "transforms",
    "selection_scope",
    "selection_method",
    "seed",
)


def selection_cache_key(path_a: str | Path, path_b: str | Path, config: Config) -> str:
    digest = hashlib.sha256()
    for path in (path_a, path_b):
        with open(path, "rb") as handle:
            for block in iter(lambda: handle.read(1 << 20), b""):
                digest.update(block)
    params = {k: v for k, v in config.to_dict().items() if k in _SELECTION_KEYS}
    params["id_column"] = config.id_column
    digest.update(json.dumps(params, sort_keys=True).encode("utf-8"))
    return digest.hexdigest()


def cache_path(cache_dir: str | Path, key: str) -> Path:
    return Path(cache_dir) / f"selection-{key[:16]}.json"


def save_selection(
    path: str | Path,
    key: str,
    schema: Sequence[str],
    combinations: Sequence[AttributeCombination],
) -> Path:
    file_path = Path(path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "key": key,
        "schema": list(schema),
        "combinations": [
            {
                "members": [[a, t] for a, t in c.members],
                "score": c.score,
                "completeness": c.completeness,
                "gini": c.gini,
                "per_database": [list(s) for s in c.per_database],
            }
            for c in combinations
        ],
    }
    file_path.write_text(json.dumps(payload, indent=2), encoding="utf-8")
    logger.debug(f"[Select] Cached {len(combinations)} combinations at {file_path}")
    return file_path


def load_selection(
    path: str | Path, key: str, schema: Sequence[str]
) -> Optional[List[AttributeCombination]]:
    """Return the cached combinations, or None when absent, stale or unreadable."""
    file_path = Path(path)
    if not file_path.exists():
        return None
    try:
        payload = json.loads(file_path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        logger.warning(f"[Select] Ignoring unreadable selection cache {file_path}: {e}")
        return None
    if payload.get("key") != key or payload.get("schema") != list(schema):
        return None

    return [
        AttributeCombination(
            tuple((int(a), str(t)) for a, t in entry["members"]),
            score=entry["score"],
            completeness=entry["completeness"],
            gini=entry["gini"],
            per_database=tuple(
                (str(n), float(c), float(g), float(s)) for n, c, g, s in entry["per_database"]
            ),
        )
        for entry in payload["combinations"]
    ]
