"""
Deterministic chunked worker pool.

Work is cut into contiguous chunks of the input order, chunks run on a
ProcessPoolExecutor and their results are reassembled by chunk index,
so the output never depends on the number of workers or on completion
order. Read-only context shared by every chunk (databases, signature
indexes, parameters) is shipped once per worker through the executor
initializer rather than once per chunk.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Any, Callable, Dict, List, Optional, Sequence, TypeVar

from loguru import logger

T = TypeVar("T")
R = TypeVar("R")

_context: Dict[str, Any] = {}

# chunks per worker; more chunks smooth out uneven chunk costs
_CHUNKS_PER_WORKER = 4


def _install_context(context: Dict[str, Any]) -> None:
    global _context
    _context = context


def worker_context() -> Dict[str, Any]:
    """Context installed for the chunk currently being processed."""
    return _context


def chunked(items: Sequence[T], chunk_size: int) -> List[Sequence[T]]:
    return [items[i : i + chunk_size] for i in range(0, len(items), chunk_size)]


def map_chunks(
    func: Callable[[Sequence[T]], List[R]],
    items: Sequence[T],
    workers: int = 1,
    context: Optional[Dict[str, Any]] = None,
    chunk_size: Optional[int] = None,
) -> List[R]:
    """
    Apply ``func`` to contiguous chunks of ``items`` and concatenate the results.

    Args:
        func: Module-level function taking one chunk and returning a list.
            It reads shared data through ``worker_context()``.
        items: Work items, in the order results must come back in.
        workers: Worker processes; 1 or fewer runs inline in this process.
        context: Read-only data installed in every worker before it starts.
        chunk_size: Items per chunk; derived from the worker count by default.

    Returns:
        The per-chunk result lists concatenated in input order.
    """
    items = list(items)
    context = context or {}
    if not items:
        return []

    if workers <= 1:
        previous = _context
        _install_context(context)
        try:
            return list(func(items))
        finally:
            _install_context(previous)

    size = chunk_size or max(1, math.ceil(len(items) / (workers * _CHUNKS_PER_WORKER)))
    chunks = chunked(items, size)
    logger.debug(f"[Pool] {len(items)} items in {len(chunks)} chunks on {workers} workers")

    results: List[Optional[List[R]]] = [None] * len(chunks)
    with ProcessPoolExecutor(
        max_workers=workers, initializer=_install_context, initargs=(context,)
    ) as executor:
        futures = {executor.submit(func, chunk): index for index, chunk in enumerate(chunks)}
        for future in as_completed(futures):
            results[futures[future]] = list(future.result())

    return [item for part in results for item in (part or [])]
