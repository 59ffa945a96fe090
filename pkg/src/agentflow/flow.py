"""Synchronous flow container: a value plus threaded state on a success or
failure track.

A ``Flow`` carries the current agent state alongside either a value
(success) or an ``ErrorInfo`` (failure). Chaining with ``then`` runs the
next step only on the success track; a failure short-circuits every
remaining step and propagates unchanged. Exceptions raised inside a step
never escape: they are captured as step-fault failures that keep the
pre-step state.
"""

from __future__ import annotations

import enum
from collections.abc import Callable
from dataclasses import dataclass
from typing import Generic, TypeVar, cast

from .instrumentation import emit

S = TypeVar("S")
V = TypeVar("V")
R = TypeVar("R")

_MAX_CAUSE_DEPTH = 32


class ValueAbsentError(ValueError):
    """Raised when the value of a failed flow is demanded."""


class ErrorKind(enum.Enum):
    """Closed classification of flow failures."""

    TOOL_NOT_FOUND = "tool_not_found"
    TOOL_EXECUTION = "tool_execution"
    STEP_FAULT = "step_fault"
    EMPTY_GATHER = "empty_gather"
    DECODE = "decode"
    OTHER = "other"


@dataclass(frozen=True)
class ErrorInfo:
    """Structured failure description with an optional chained cause."""

    message: str
    kind: ErrorKind = ErrorKind.OTHER
    cause: ErrorInfo | None = None

    def __post_init__(self) -> None:
        if not self.message:
            raise ValueError("error message must be non-empty")
        if not isinstance(self.kind, ErrorKind):
            raise TypeError(f"kind must be an ErrorKind, got {type(self.kind).__name__}")
        depth, node = 1, self.cause
        while node is not None:
            depth += 1
            if depth > _MAX_CAUSE_DEPTH:
                raise ValueError(f"cause chain exceeds depth {_MAX_CAUSE_DEPTH}")
            node = node.cause

    @classmethod
    def from_exception(cls, exc: BaseException, kind: ErrorKind = ErrorKind.STEP_FAULT) -> ErrorInfo:
        """Wrap a captured exception; message falls back to the type name."""
        text = str(exc).strip()
        message = f"{type(exc).__name__}: {text}" if text else type(exc).__name__
        return cls(message, kind)


@dataclass(frozen=True)
class Flow(Generic[S, V]):
    """Immutable container of (state, value-or-error, success flag).

    Exactly one of ``value`` / ``error_info`` is present, matching the
    success flag. All operations return new flows.
    """

    state: S
    value: V | None
    is_successful: bool = True
    error_info: ErrorInfo | None = None

    def __post_init__(self) -> None:
        if self.is_successful:
            if self.value is None:
                raise ValueError("successful flow requires a value")
            if self.error_info is not None:
                raise ValueError("successful flow must not carry error info")
        else:
            if self.error_info is None:
                raise ValueError("failed flow requires error info")
            if not isinstance(self.error_info, ErrorInfo):
                raise TypeError("error_info must be an ErrorInfo")
            if self.value is not None:
                raise ValueError("failed flow must not carry a value")

    # -- constructors ------------------------------------------------

    @staticmethod
    def start(state: S, initial_value: V | None = None) -> Flow[S, V]:
        """Successful flow seeding a pipeline; value defaults to the state itself."""
        value = initial_value if initial_value is not None else cast(V, state)
        return Flow(state, value)

    @staticmethod
    def success(state: S, value: V) -> Flow[S, V]:
        return Flow(state, value, is_successful=True)

    @staticmethod
    def failure(state: S, error: ErrorInfo) -> Flow[S, V]:
        return cast("Flow[S, V]", Flow(state, None, is_successful=False, error_info=error))

    # -- combinators -------------------------------------------------

    def then(self, step: Callable[[S, V], Flow[S, R]]) -> Flow[S, R]:
        """Run ``step(state, value)`` on success; short-circuit on failure.

        An exception raised by the step becomes a step-fault failure
        carrying the pre-step state.
        """
        emit("flow.then")
        if not self.is_successful:
            return Flow.failure(self.state, cast(ErrorInfo, self.error_info))
        try:
            return step(self.state, cast(V, self.value))
        except Exception as exc:
            return Flow.failure(self.state, ErrorInfo.from_exception(exc))

    def map(self, func: Callable[[V], R]) -> Flow[S, R]:
        """Apply a pure function to the value, keeping state and track."""
        emit("flow.map")
        if not self.is_successful:
            return Flow.failure(self.state, cast(ErrorInfo, self.error_info))
        try:
            return Flow.success(self.state, func(cast(V, self.value)))
        except Exception as exc:
            return Flow.failure(self.state, ErrorInfo.from_exception(exc))

    def apply(self, func_flow: Flow[S, Callable[[V], R]]) -> Flow[S, R]:
        """Apply a wrapped function to this wrapped value.

        The value flow is checked first when both inputs failed, and its
        state is the one kept in every case.
        """
        emit("flow.apply")
        if not self.is_successful or not func_flow.is_successful:
            error = self.error_info if not self.is_successful else func_flow.error_info
            return Flow.failure(self.state, cast(ErrorInfo, error))
        return self.map(cast(Callable[[V], R], func_flow.value))

    # -- projections -------------------------------------------------

    def inspect(self) -> tuple[bool, S, V | None, ErrorInfo | None]:
        """Read-only view of (is_successful, state, value, error_info)."""
        return (self.is_successful, self.state, self.value, self.error_info)

    def require_value(self) -> V:
        """The value; raises ValueAbsentError on a failed flow."""
        if not self.is_successful or self.value is None:
            raise ValueAbsentError("Flow has no value.")
        return self.value

    def __repr__(self) -> str:  # keep failure reprs readable in test output
        if self.is_successful:
            return f"Flow.success(state={self.state!r}, value={self.value!r})"
        return f"Flow.failure(state={self.state!r}, error={self.error_info!r})"
