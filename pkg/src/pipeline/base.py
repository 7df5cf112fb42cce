"""
Pipeline Step Base Module.

Every stage of a linkage run (attribute selection, signature
generation, matching) is a PipelineStep: a self-contained unit with
standardized input validation, timing and error capture. Steps never
raise; failures are captured in the StepResult and re-raised by the
orchestrator so the exception type still decides the CLI exit code.
"""

from __future__ import annotations

import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

from loguru import logger


class StepStatus(Enum):
    """Status of a pipeline step execution."""

    SUCCESS = "success"
    CACHED = "cached"
    ERROR = "error"


@dataclass
class StepResult:
    """
    Result of a pipeline step execution.

    Attributes:
        step: Name of the step (used as its runtime-report label).
        status: Execution status.
        data: Value returned by the step.
        message: Human-readable result description.
        duration_ms: Execution time in milliseconds.
        error: Error text if the step failed.
        exception: The captured exception, re-raised by ``raise_for_status``.
    """

    step: str
    status: StepStatus = StepStatus.SUCCESS
    data: Any = None
    message: str = ""
    duration_ms: float = 0.0
    error: Optional[str] = None
    exception: Optional[BaseException] = field(default=None, repr=False)

    @property
    def is_success(self) -> bool:
        return self.status in (StepStatus.SUCCESS, StepStatus.CACHED)

    @property
    def cached(self) -> bool:
        return self.status == StepStatus.CACHED

    def raise_for_status(self) -> "StepResult":
        """Re-raise the captured exception of a failed step; returns self otherwise."""
        if self.exception is not None:
            raise self.exception
        return self


class PipelineStep(ABC):
    """
    Abstract base class for pipeline steps.

    Provides a standardized execution pattern with:
    - Pre-execution validation
    - Timed execution
    - Automatic error capture and result packaging

    Subclasses implement ``_execute`` and may call ``mark_cached`` when
    they satisfy the request from a cache instead of computing it.

    Example usage::

        class CountRecords(PipelineStep):
            def _execute(self, database: Database, **kwargs: Any) -> int:
                return len(database)

        result = CountRecords(name="count").run(database=db_a)
        assert result.is_success and result.data == len(db_a)
    """

    def __init__(self, name: str) -> None:
        self.name = name
        self._cached = False

    def run(self, **kwargs: Any) -> StepResult:
        """
        Execute the step with standardized error handling and timing.

        Returns:
            StepResult with status, data, timing and error details.
        """
        logger.info(f"[Step: {self.name}] Starting")
        self._cached = False
        start_time = time.perf_counter()

        try:
            self._validate(**kwargs)
            data = self._execute(**kwargs)
            elapsed_ms = (time.perf_counter() - start_time) * 1000

            if self._cached:
                logger.info(f"[Step: {self.name}] Reused cached result")
                return StepResult(
                    step=self.name,
                    status=StepStatus.CACHED,
                    data=data,
                    message=f"Step '{self.name}' served from cache",
                    duration_ms=elapsed_ms,
                )

            logger.info(f"[Step: {self.name}] Completed in {elapsed_ms:.1f}ms")
            return StepResult(
                step=self.name,
                data=data,
                message=f"Step '{self.name}' completed successfully",
                duration_ms=elapsed_ms,
            )

        except Exception as e:
            elapsed_ms = (time.perf_counter() - start_time) * 1000
            logger.error(f"[Step: {self.name}] Failed: {e}")
            return StepResult(
                step=self.name,
                status=StepStatus.ERROR,
                message=f"Step '{self.name}' failed: {e}",
                duration_ms=elapsed_ms,
                error=str(e),
                exception=e,
            )

    def mark_cached(self) -> None:
        self._cached = True

    def _validate(self, **kwargs: Any) -> None:
        """
        Pre-execution validation hook. Override to add checks.

        Raises:
            RecordLinkageError: If validation fails.
        """
        pass

    @abstractmethod
    def _execute(self, **kwargs: Any) -> Any:
        """Core step logic, implemented by subclasses."""
        ...
