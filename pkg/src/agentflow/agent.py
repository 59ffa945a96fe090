"""Agent domain layer: state, tools, a deterministic mock model client,
and the step functions the bundled scenarios are built from.

Everything here is simulated. Tool outputs and model completions are
canned constants so that every pipeline run is reproducible; swap in a
real ``ModelClient`` or register real tools to go beyond the mocks.
"""

from __future__ import annotations

import asyncio
import logging
import re
from collections.abc import Callable, Mapping
from dataclasses import dataclass, replace
from typing import Any, Protocol

from .async_flow import AsyncFlow
from .flow import ErrorInfo, ErrorKind, Flow

logger = logging.getLogger(__name__)

DEFAULT_TASK = "What is a Monad?"

# Canned payloads served by the simulated news/weather/stocks sources.
NEWS_PAYLOAD = "News: markets steadied after a choppy session on upbeat earnings."
WEATHER_PAYLOAD = "Weather: clear skies, 22 C, light northerly breeze."
STOCKS_PAYLOAD = "Stocks: benchmark index closed up 1.2%."

PLAN_PROMPT_PREFIX = "Plan a tool call for task: "

_DECOMPOSE_PATTERN = re.compile(r"Decompose the goal '(?P<goal>.*)' into", re.DOTALL)


@dataclass(frozen=True)
class AgentState:
    """Agent memory: the task plus an append-only history log."""

    task: str
    history: tuple[str, ...] = ()

    def with_history(self, entry: str) -> AgentState:
        """New state with ``entry`` appended; existing entries never move."""
        return replace(self, history=self.history + (entry,))


@dataclass(frozen=True)
class ToolCall:
    """A tool invocation request: tracking id, tool name, arguments."""

    tool_id: str
    name: str
    arguments: dict[str, Any]

    def __post_init__(self) -> None:
        if not self.tool_id:
            raise ValueError("tool_id must be non-empty")
        if not self.name:
            raise ValueError("tool name must be non-empty")


@dataclass(frozen=True)
class ToolResult:
    """A tool's response; ``is_error`` flags tool-signaled failure."""

    tool_id: str
    content: str
    is_error: bool = False


Tool = Callable[[AgentState, ToolCall], ToolResult]


class ToolRegistry:
    """Name-keyed tool lookup. Registering a duplicate name replaces the
    prior entry (and logs the replacement)."""

    def __init__(self, tools: Mapping[str, Tool] | None = None) -> None:
        self._tools: dict[str, Tool] = dict(tools or {})

    def register(self, name: str, tool: Tool) -> None:
        if name in self._tools:
            logger.info("replacing registered tool %r", name)
        self._tools[name] = tool

    def lookup(self, name: str) -> Tool | None:
        return self._tools.get(name)

    def run(self, state: AgentState, call: ToolCall) -> ToolResult:
        """Dispatch a call; unknown names yield an error result, not an
        exception."""
        tool = self._tools.get(call.name)
        if tool is None:
            return ToolResult(call.tool_id, f"Unknown tool: '{call.name}'", is_error=True)
        return tool(state, call)


class ModelClient(Protocol):
    """Pluggable model invocation: one prompt in, one completion out."""

    def complete(self, prompt: str) -> str: ...


class MockModelClient:
    """Deterministic model stand-in; ``complete`` is a pure function of
    the prompt.

    Planning prompts resolve to ``plan_tool`` (set it to an unregistered
    name such as "guess" to exercise the unknown-tool failure path).
    Decomposition prompts resolve to a fixed three-role plan in the
    line-oriented ``role|pipeline|prompt`` format.
    """

    def __init__(self, plan_tool: str = "search") -> None:
        self.plan_tool = plan_tool

    def complete(self, prompt: str) -> str:
        match = _DECOMPOSE_PATTERN.search(prompt)
        if match:
            goal = match.group("goal").strip()
            if not goal:
                return ""
            return "\n".join(
                (
                    f"SearchAgent|search|Gather background sources for: {goal}",
                    f"DataAgent|data|Collect and validate key figures for: {goal}",
                    f"WriterAgent|writer|Draft the report narrative for: {goal}",
                )
            )
        return self.plan_tool


class ToolIdSequence:
    """Monotonic per-run tool ids: tool-1, tool-2, ..."""

    def __init__(self) -> None:
        self._count = 0

    def next(self) -> str:
        self._count += 1
        return f"tool-{self._count}"


# -- research scenario steps ------------------------------------------


def plan_action(
    state: AgentState,
    task: str,
    *,
    client: ModelClient | None = None,
    ids: ToolIdSequence | None = None,
) -> Flow[AgentState, ToolCall]:
    """Ask the model which tool to call and wrap that as a ToolCall."""
    client = client or MockModelClient()
    ids = ids or ToolIdSequence()
    name = client.complete(f"{PLAN_PROMPT_PREFIX}{task}").strip()
    call = ToolCall(tool_id=ids.next(), name=name, arguments={"query": task})
    next_state = state.with_history(f"Plan: call {call.name} with query='{task}'.")
    return Flow.success(next_state, call)


def execute_tool(
    state: AgentState, call: ToolCall, registry: ToolRegistry | None = None
) -> Flow[AgentState, str]:
    """Dispatch the call through the registry.

    The observation is logged to history before the track is chosen, so a
    failure state still records what went wrong. Unknown tools and
    tool-signaled errors fail the flow with the result content as the
    error message.
    """
    registry = registry or default_registry()
    known = registry.lookup(call.name) is not None
    result = registry.run(state, call)
    next_state = state.with_history(f"Tool Result ({call.name}): {result.content}")
    if result.is_error:
        kind = ErrorKind.TOOL_EXECUTION if known else ErrorKind.TOOL_NOT_FOUND
        return Flow.failure(next_state, ErrorInfo(result.content, kind))
    return Flow.success(next_state, result.content)


def synthesize_answer(state: AgentState, tool_output: str) -> Flow[AgentState, str]:
    answer = (
        "A monad is a composable computation context: it threads state, "
        "short-circuits failures, and sequences dependent steps. "
        f"Evidence: {tool_output}"
    )
    return Flow.success(state.with_history("Synthesized final answer."), answer)


def format_output(state: AgentState, answer: str) -> Flow[AgentState, str]:
    formatted = f"Final Report:\n{answer}"
    return Flow.success(state.with_history("Formatted response for delivery."), formatted)


def build_research_flow(
    task: str = DEFAULT_TASK,
    *,
    client: ModelClient | None = None,
    registry: ToolRegistry | None = None,
) -> Flow[AgentState, str]:
    """Run the four-step research pipeline: plan, execute, synthesize, format."""
    client = client or MockModelClient()
    registry = registry or default_registry()
    ids = ToolIdSequence()
    return (
        Flow.start(AgentState(task=task))
        .then(lambda s, _: plan_action(s, task, client=client, ids=ids))
        .then(lambda s, call: execute_tool(s, call, registry))
        .then(synthesize_answer)
        .then(format_output)
    )


# -- briefing scenario steps ------------------------------------------


async def _simulated_fetch(
    state: AgentState,
    source: str,
    payload: str,
    latency_ms: float,
    fail: bool,
) -> Flow[AgentState, str]:
    if latency_ms > 0:
        await asyncio.sleep(latency_ms / 1000.0)
    if fail:
        error = ErrorInfo(f"{source} fetch failed: simulated service outage", ErrorKind.TOOL_EXECUTION)
        return Flow.failure(state.with_history(f"Fetch {source} failed."), error)
    return Flow.success(state.with_history(f"Fetched {source} data."), payload)


async def fetch_news(
    state: AgentState, query: str, *, latency_ms: float = 100.0, fail: bool = False
) -> Flow[AgentState, str]:
    return await _simulated_fetch(state, "news", NEWS_PAYLOAD, latency_ms, fail)


async def fetch_weather(
    state: AgentState, query: str, *, latency_ms: float = 100.0, fail: bool = False
) -> Flow[AgentState, str]:
    return await _simulated_fetch(state, "weather", WEATHER_PAYLOAD, latency_ms, fail)


async def fetch_stocks(
    state: AgentState, query: str, *, latency_ms: float = 100.0, fail: bool = False
) -> Flow[AgentState, str]:
    return await _simulated_fetch(state, "stocks", STOCKS_PAYLOAD, latency_ms, fail)


def synthesize_briefing(state: AgentState, payloads: list[Any]) -> Flow[AgentState, str]:
    """Combine the ordered fetch payloads into one briefing text."""
    body = "\n".join(str(payload) for payload in payloads)
    briefing = f"Daily Briefing\n{body}"
    return Flow.success(state.with_history("Synthesized daily briefing."), briefing)


def build_briefing_flow(
    query: str = "daily briefing",
    *,
    latency_ms: float = 100.0,
    fail_source: str | None = None,
) -> AsyncFlow[AgentState, str]:
    """Fetch news, weather and stocks concurrently, then synthesize.

    ``fail_source`` ("news" | "weather" | "stocks") flips that fetch into
    a simulated outage, failing the whole gathered flow.
    """
    state = AgentState(task=query)

    def fetch_flow(step: Any, source: str) -> AsyncFlow[AgentState, str]:
        async def run_step(s: AgentState, value: Any) -> Flow[AgentState, str]:
            return await step(s, str(value), latency_ms=latency_ms, fail=fail_source == source)

        return AsyncFlow.start(state, query).then(run_step)

    tasks = [
        fetch_flow(fetch_news, "news"),
        fetch_flow(fetch_weather, "weather"),
        fetch_flow(fetch_stocks, "stocks"),
    ]
    return AsyncFlow.gather(tasks).then(synthesize_briefing)


# -- bundled tools -----------------------------------------------------


def _search_tool(state: AgentState, call: ToolCall) -> ToolResult:
    query = str(call.arguments.get("query", "")).strip()
    snippet = (
        f"Search snippet for '{query}': a structure for sequencing computations "
        "that carry their own context."
    )
    return ToolResult(call.tool_id, snippet)


def _constant_tool(payload: str) -> Tool:
    def tool(state: AgentState, call: ToolCall) -> ToolResult:
        return ToolResult(call.tool_id, payload)

    return tool


def default_registry() -> ToolRegistry:
    """Registry with the simulated search/news/weather/stocks tools."""
    registry = ToolRegistry()
    registry.register("search", _search_tool)
    registry.register("news", _constant_tool(NEWS_PAYLOAD))
    registry.register("weather", _constant_tool(WEATHER_PAYLOAD))
    registry.register("stocks", _constant_tool(STOCKS_PAYLOAD))
    return registry
