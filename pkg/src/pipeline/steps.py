"""
Linkage Pipeline Module.

The three timed steps of a linkage run and the orchestrator chaining
them:

- SelectCombinationsStep: lattice (or random) selection, or a cache hit.
- BuildSignaturesStep: signature databases for both inputs.
- MatchRecordsStep: two-stage classification of candidate pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, List, Optional, Sequence, Tuple

from loguru import logger

from src.config.settings import Config
from src.evaluation.runtime import RuntimeReport, runtime_report
from src.matching.matcher import match
from src.model.matches import MatchSet
from src.model.records import Database
from src.model.signatures import AttributeCombination, SignatureDatabase
from src.pipeline.base import PipelineStep, StepResult
from src.selection.cache import cache_path, load_selection, save_selection
from src.selection.lattice import select_combinations
from src.selection.scoring import SelectionError
from src.signatures.generation import build_signature_database


class SelectCombinationsStep(PipelineStep):
    """
    Select attribute combinations, reusing a cached selection when one matches.

    Args:
        cache_dir: Directory holding ``selection-<digest>.json`` files; no
            caching when None.
        cache_key: Digest of the inputs and selection parameters.
    """

    def __init__(self, cache_dir: Optional[Path] = None, cache_key: Optional[str] = None) -> None:
        super().__init__(name="select")
        self.cache_dir = cache_dir
        self.cache_key = cache_key

    def _validate(self, db_a: Database, db_b: Database, **kwargs: Any) -> None:
        if db_a.schema != db_b.schema:
            raise SelectionError(
                f"Schema mismatch: {db_a.name} has {list(db_a.schema)}, "
                f"{db_b.name} has {list(db_b.schema)}"
            )

    def _execute(
        self, db_a: Database, db_b: Database, config: Config, **kwargs: Any
    ) -> List[AttributeCombination]:
        path = None
        if self.cache_dir is not None and self.cache_key is not None:
            path = cache_path(self.cache_dir, self.cache_key)
            cached = load_selection(path, self.cache_key, db_a.schema)
            if cached is not None:
                logger.info(f"[Select] Using cached selection {path}")
                self.mark_cached()
                return cached

        combinations = select_combinations(db_a, db_b, config)
        if path is not None:
            save_selection(path, self.cache_key or "", db_a.schema, combinations)
        return combinations


class BuildSignaturesStep(PipelineStep):
    def __init__(self) -> None:
        super().__init__(name="signatures")

    def _execute(
        self,
        db_a: Database,
        db_b: Database,
        combinations: Sequence[AttributeCombination],
        config: Config,
        **kwargs: Any,
    ) -> Tuple[SignatureDatabase, SignatureDatabase]:
        return (
            build_signature_database(db_a, combinations, config),
            build_signature_database(db_b, combinations, config),
        )


class MatchRecordsStep(PipelineStep):
    def __init__(self) -> None:
        super().__init__(name="match")

    def _execute(
        self,
        signatures_a: SignatureDatabase,
        signatures_b: SignatureDatabase,
        config: Config,
        **kwargs: Any,
    ) -> MatchSet:
        return match(signatures_a, signatures_b, config)


@dataclass
class LinkageRun:
    """Everything a linkage run produced, with the step results used for timing."""

    combinations: List[AttributeCombination]
    signatures_a: SignatureDatabase
    signatures_b: SignatureDatabase
    matches: MatchSet
    steps: List[StepResult] = field(default_factory=list)

    @property
    def runtime(self) -> RuntimeReport:
        return runtime_report(self.steps)


class LinkagePipeline:
    """
    Orchestrates selection, signature generation and matching.

    Each step runs through PipelineStep.run so it is timed and its
    failure captured; a failed step's exception is re-raised here.

    Attributes:
        config: Resolved configuration shared by every step.
        cache_dir: Optional selection cache directory.
        cache_key: Digest identifying the inputs, required for caching.
    """

    def __init__(
        self,
        config: Config,
        cache_dir: Optional[Path] = None,
        cache_key: Optional[str] = None,
    ) -> None:
        self.config = config
        self.cache_dir = cache_dir
        self.cache_key = cache_key

    def select(self, db_a: Database, db_b: Database) -> StepResult:
        step = SelectCombinationsStep(self.cache_dir, self.cache_key)
        return step.run(db_a=db_a, db_b=db_b, config=self.config).raise_for_status()

    def signatures(
        self, db_a: Database, db_b: Database, combinations: Sequence[AttributeCombination]
    ) -> StepResult:
        step = BuildSignaturesStep()
        return step.run(
            db_a=db_a, db_b=db_b, combinations=combinations, config=self.config
        ).raise_for_status()

    def run(self, db_a: Database, db_b: Database) -> LinkageRun:
        selected = self.select(db_a, db_b)
        combinations = list(selected.data)

        built = self.signatures(db_a, db_b, combinations)
        signatures_a, signatures_b = built.data

        matched = MatchRecordsStep().run(
            signatures_a=signatures_a, signatures_b=signatures_b, config=self.config
        ).raise_for_status()

        return LinkageRun(
            combinations=combinations,
            signatures_a=signatures_a,
            signatures_b=signatures_b,
            matches=matched.data,
            steps=[selected, built, matched],
        )
