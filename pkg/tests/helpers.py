"""Shared pieces for the test suite: a fixed vocabulary of pure steps
over (int state, int value) pipelines, and builders that run the same
step list through the sync and deferred layers."""

from __future__ import annotations

import asyncio
from collections.abc import Callable, Sequence

from agentflow import AsyncFlow, ErrorInfo, ErrorKind, Flow

Step = Callable[[int, int], Flow[int, int]]


def _inc_state(s: int, v: int) -> Flow[int, int]:
    return Flow.success(s + 1, v)


def _double_value(s: int, v: int) -> Flow[int, int]:
    return Flow.success(s, v * 2)


def _shift_both(s: int, v: int) -> Flow[int, int]:
    return Flow.success(s * 2, v + 3)


def _mix(s: int, v: int) -> Flow[int, int]:
    return Flow.success(s - v, v + s)


def _stop(s: int, v: int) -> Flow[int, int]:
    return Flow.failure(s, ErrorInfo("planned stop", ErrorKind.OTHER))


# Order matters only for reproducibility of seeded random choices.
STEP_VOCABULARY: tuple[Step, ...] = (_inc_state, _double_value, _shift_both, _mix, _stop)

PURE_STEP_VOCABULARY: tuple[Step, ...] = (_inc_state, _double_value, _shift_both, _mix)


def run_sync_pipeline(state: int, value: int, steps: Sequence[Step]) -> Flow[int, int]:
    flow: Flow[int, int] = Flow.start(state, value)
    for step in steps:
        flow = flow.then(step)
    return flow


def run_async_pipeline(state: int, value: int, steps: Sequence[Step]) -> Flow[int, int]:
    aflow: AsyncFlow[int, int] = AsyncFlow.start(state, value)
    for step in steps:
        aflow = aflow.then(step)
    return asyncio.run(aflow.run())
