"""
Runtime report of a linkage run, one entry per timed pipeline step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from src.pipeline.base import StepResult


@dataclass(frozen=True)
class StepTiming:
    label: str
    seconds: float
    cached: bool = False


@dataclass(frozen=True)
class RuntimeReport:
    steps: Tuple[StepTiming, ...]

    @property
    def total_seconds(self) -> float:
        return sum(step.seconds for step in self.steps)

    def as_lines(self) -> List[str]:
        lines = []
        for step in self.steps:
            suffix = " (cached)" if step.cached else ""
            lines.append(f"{step.label} = {step.seconds:.3f}{suffix}")
        lines.append(f"total = {self.total_seconds:.3f}")
        return lines


def runtime_report(results: Sequence[StepResult]) -> RuntimeReport:
    """Durations in seconds per step; cached steps report 0 and are flagged."""
    return RuntimeReport(
        tuple(
            StepTiming(
                label=result.step,
                seconds=0.0 if result.cached else result.duration_ms / 1000.0,
                cached=result.cached,
            )
            for result in results
        )
    )
