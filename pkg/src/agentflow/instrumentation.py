"""Opt-in counting of combinator entries.

Off by default; tests install an observer to verify that pipelines are
built from the kernel's combinators instead of ad hoc control flow.
The observer slot is a plain module global and is not thread-safe;
install one only from a single-threaded harness.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Callable, Iterator
from contextlib import contextmanager

_observer: Callable[[str], None] | None = None


def emit(event: str) -> None:
    if _observer is not None:
        _observer(event)


@contextmanager
def record_combinators() -> Iterator[Counter[str]]:
    """Count combinator entries (e.g. "flow.then", "async.gather") while active."""
    global _observer
    counts: Counter[str] = Counter()
    previous = _observer
    _observer = lambda event: counts.update((event,))
    try:
        yield counts
    finally:
        _observer = previous
