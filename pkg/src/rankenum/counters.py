"""Abstract operation accounting.

Every tree node allocated by the heaps counts as one append and every
priority comparison made by a heap or queue counts as one comparison.
The benchmark harness and the constant-time tests read these counters
instead of wall-clock time.  The counter is process-global and is not
meant to be read while other threads build structures.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass


@dataclass
class OpCounter:
    appends: int = 0
    comparisons: int = 0

    @property
    def total(self) -> int:
        return self.appends + self.comparisons

    def reset(self) -> None:
        self.appends = 0
        self.comparisons = 0

    def snapshot(self) -> tuple[int, int]:
        return self.appends, self.comparisons


COUNTER = OpCounter()


@contextmanager
def counting():
    """Yield a fresh ``OpCounter`` holding the operations done inside the block."""
    start_a, start_c = COUNTER.snapshot()
    result = OpCounter()
    try:
        yield result
    finally:
        result.appends = COUNTER.appends - start_a
        result.comparisons = COUNTER.comparisons - start_c
