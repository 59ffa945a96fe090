"""Deferred flows: cold computations that produce a Flow when run.

An ``AsyncFlow`` does no work until ``run`` is awaited, and re-executes on
every run. ``then`` chains steps sequentially with the same short-circuit
and fault-capture behavior as the synchronous layer; ``gather`` starts
independent flows concurrently and joins them into one flow.

The library owns no event loop or threads. Callers drive flows from
whatever asyncio context they control (``asyncio.run`` in the CLI).
"""

from __future__ import annotations

import asyncio
import inspect
from collections.abc import Awaitable, Callable, Sequence
from typing import Any, Generic, TypeVar, cast

from .flow import ErrorInfo, ErrorKind, Flow
from .instrumentation import emit

S = TypeVar("S")
V = TypeVar("V")
R = TypeVar("R")

# A step may be a plain function or a coroutine function; either returns
# the next Flow.
AsyncStep = Callable[[S, V], "Flow[S, R] | Awaitable[Flow[S, R]]"]

# Reduces the states of a gathered group to the single state carried onward.
MergeStrategy = Callable[[Sequence[S]], S]

EMPTY_GATHER_MESSAGE = "No flows provided"


class AsyncFlow(Generic[S, V]):
    """A promise to produce a ``Flow[S, V]`` once run. Cold: each run
    re-executes the underlying computation."""

    def __init__(self, run_func: Callable[[], Awaitable[Flow[S, V]]]) -> None:
        self._run = run_func

    async def run(self) -> Flow[S, V]:
        """Execute the deferred computation and return the resulting flow.

        A fault escaping the computation itself (outside any step) is
        normalized to a step-fault failure rather than raised.
        """
        try:
            return await self._run()
        except Exception as exc:
            return Flow.failure(cast(S, None), ErrorInfo.from_exception(exc))

    @staticmethod
    def start(state: S, initial_value: V | None = None) -> AsyncFlow[S, V]:
        """Deferred equivalent of ``Flow.start``."""

        async def run_func() -> Flow[S, V]:
            return Flow.start(state, initial_value)

        return AsyncFlow(run_func)

    @staticmethod
    def lift(flow: Flow[S, V]) -> AsyncFlow[S, V]:
        """Wrap an already-computed flow; running yields it unchanged."""

        async def run_func() -> Flow[S, V]:
            return flow

        return AsyncFlow(run_func)

    def then(self, step: AsyncStep[S, V, R]) -> AsyncFlow[S, R]:
        """Chain a step onto this deferred flow.

        On failure the step is never invoked; on success the step result
        is awaited when it is awaitable. Exceptions become step-fault
        failures with the pre-step state.
        """

        async def new_run() -> Flow[S, R]:
            emit("async.then")
            current = await self.run()
            if not current.is_successful:
                return Flow.failure(current.state, cast(ErrorInfo, current.error_info))
            try:
                result = step(current.state, cast(V, current.value))
                if inspect.isawaitable(result):
                    result = await result
                return cast("Flow[S, R]", result)
            except Exception as exc:
                return Flow.failure(current.state, ErrorInfo.from_exception(exc))

        return AsyncFlow(new_run)

    @staticmethod
    def gather(
        flows: Sequence[AsyncFlow[S, Any]],
        merge_states: MergeStrategy[S] | None = None,
    ) -> AsyncFlow[S, list[Any]]:
        """Run independent flows concurrently and join them.

        All flows are started together and all are awaited (no
        cancellation on first failure). If any fail, the result is the
        failure of the first failed flow in input order, regardless of
        completion order. On full success, values are collected in input
        order and the final state is ``merge_states(states)`` when given,
        else the last flow's state.
        """

        async def new_run() -> Flow[S, list[Any]]:
            emit("async.gather")
            if not flows:
                error = ErrorInfo(EMPTY_GATHER_MESSAGE, ErrorKind.EMPTY_GATHER)
                return Flow.failure(cast(S, None), error)
            results = await asyncio.gather(*(flow.run() for flow in flows))
            failures = [result for result in results if not result.is_successful]
            if failures:
                first = failures[0]
                return Flow.failure(first.state, cast(ErrorInfo, first.error_info))
            states = [result.state for result in results]
            try:
                final_state = merge_states(states) if merge_states else states[-1]
            except Exception as exc:
                return Flow.failure(states[-1], ErrorInfo.from_exception(exc))
            values = [result.value for result in results]
            return Flow.success(final_state, values)

        return AsyncFlow(new_run)


async def gather_results(flows: Sequence[AsyncFlow[S, Any]]) -> list[Flow[S, Any]]:
    """Diagnostic companion to ``gather``: every per-flow result, in input
    order, including all failures rather than just the first."""
    return list(await asyncio.gather(*(flow.run() for flow in flows)))
