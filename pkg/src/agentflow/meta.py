"""Meta-agent orchestration: decompose a goal into specialized roles,
spin up one pipeline per role, run them concurrently, and merge the
reports.

The decomposition itself is a model call. The mock client answers in a
line-oriented ``role|pipeline|prompt`` format, and each pipeline name
maps to a fixed template of steps, so the whole run stays deterministic.
"""

from __future__ import annotations

import asyncio
from collections.abc import Sequence
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any

from .agent import (
    AgentState,
    ModelClient,
    MockModelClient,
    ToolCall,
    ToolIdSequence,
    ToolRegistry,
    default_registry,
    execute_tool,
)
from .async_flow import AsyncFlow
from .flow import ErrorInfo, ErrorKind, Flow

DEFAULT_GOAL = "Produce a market research report"

DECOMPOSE_PROMPT_TEMPLATE = (
    "Decompose the goal '{goal}' into specialized roles, "
    "one per line formatted as role|pipeline|prompt."
)


class Pipeline(Enum):
    """Pipeline templates a sub-agent can be instantiated from."""

    SEARCH = "search"
    DATA = "data"
    WRITER = "writer"


@dataclass(frozen=True)
class SubAgentSpec:
    """One planned sub-agent: its role label, prompt, and pipeline."""

    role: str
    prompt: str
    pipeline: Pipeline

    def __post_init__(self) -> None:
        if not self.role:
            raise ValueError("role must be non-empty")
        if not self.prompt:
            raise ValueError("prompt must be non-empty")


@dataclass(frozen=True)
class MetaState:
    """Orchestrator memory: the goal, the plan once decomposed, collected
    sub-agent reports, and an append-only log."""

    goal: str
    plan: tuple[SubAgentSpec, ...] | None = None
    sub_reports: tuple[str, ...] = ()
    log: tuple[str, ...] = ()

    def with_log(self, *entries: str) -> MetaState:
        return replace(self, log=self.log + entries)

    def with_plan(self, plan: tuple[SubAgentSpec, ...]) -> MetaState:
        return replace(self, plan=plan)

    def with_reports(self, reports: tuple[str, ...]) -> MetaState:
        return replace(self, sub_reports=reports)


def parse_plan(text: str) -> tuple[SubAgentSpec, ...]:
    """Parse ``role|pipeline|prompt`` lines; malformed lines are skipped."""
    specs: list[SubAgentSpec] = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        parts = [part.strip() for part in line.split("|", 2)]
        if len(parts) != 3 or not all(parts):
            continue
        role, pipeline_name, prompt = parts
        try:
            pipeline = Pipeline(pipeline_name)
        except ValueError:
            continue
        specs.append(SubAgentSpec(role=role, prompt=prompt, pipeline=pipeline))
    return tuple(specs)


def decompose(
    state: MetaState, goal: str, client: ModelClient
) -> Flow[MetaState, tuple[SubAgentSpec, ...]]:
    """Ask the model for a role breakdown and store it as the plan."""
    response = client.complete(DECOMPOSE_PROMPT_TEMPLATE.format(goal=goal))
    specs = parse_plan(response)
    if not specs:
        failed = state.with_log("Decomposition produced no roles.")
        return Flow.failure(failed, ErrorInfo("decomposition produced no usable roles", ErrorKind.OTHER))
    roles = ", ".join(spec.role for spec in specs)
    planned = state.with_plan(specs).with_log(f"Planned {len(specs)} sub-agents: {roles}.")
    return Flow.success(planned, specs)


# -- sub-agent pipeline steps -----------------------------------------


def plan_search(
    state: AgentState, task: str, *, ids: ToolIdSequence | None = None
) -> Flow[AgentState, ToolCall]:
    ids = ids or ToolIdSequence()
    call = ToolCall(tool_id=ids.next(), name="search", arguments={"query": task})
    return Flow.success(state.with_history(f"Plan: call search with query='{task}'."), call)


def query_api(state: AgentState, task: str) -> Flow[AgentState, str]:
    figures = f"Figures for '{task}': growth 4.2%, adoption 61%, churn 2.1%"
    return Flow.success(state.with_history("Queried data API."), figures)


def validate_data(state: AgentState, figures: str) -> Flow[AgentState, str]:
    if not figures.strip():
        return Flow.failure(
            state.with_history("Validation failed: empty data."),
            ErrorInfo("data validation failed: empty payload", ErrorKind.TOOL_EXECUTION),
        )
    return Flow.success(state.with_history("Validated data."), f"{figures} (validated)")


def draft_section(state: AgentState, task: str) -> Flow[AgentState, str]:
    return Flow.success(state.with_history("Drafted section."), f"Draft: {task}")


def refine_prose(state: AgentState, draft: str) -> Flow[AgentState, str]:
    return Flow.success(state.with_history("Refined prose."), f"{draft} (refined for clarity)")


def instantiate(
    spec: SubAgentSpec,
    registry: ToolRegistry | None = None,
    *,
    latency_ms: float = 0.0,
    fail: bool = False,
) -> AsyncFlow[AgentState, str]:
    """Build the runnable pipeline for one spec.

    The leading gate step simulates startup latency and, when ``fail`` is
    set, an injected fault attributed to the sub-agent's role.
    """
    registry = registry or default_registry()
    ids = ToolIdSequence()

    async def gate(state: AgentState, value: Any) -> Flow[AgentState, Any]:
        if latency_ms > 0:
            await asyncio.sleep(latency_ms / 1000.0)
        if fail:
            error = ErrorInfo(
                f"{spec.role} failed: injected fault during pipeline run",
                ErrorKind.TOOL_EXECUTION,
            )
            return Flow.failure(state.with_history(f"{spec.role} aborted."), error)
        return Flow.success(state, value)

    flow = AsyncFlow.start(AgentState(task=spec.prompt), spec.prompt).then(gate)
    if spec.pipeline is Pipeline.SEARCH:
        return flow.then(lambda s, task: plan_search(s, str(task), ids=ids)).then(
            lambda s, call: execute_tool(s, call, registry)
        )
    if spec.pipeline is Pipeline.DATA:
        return flow.then(lambda s, task: query_api(s, str(task))).then(validate_data)
    return flow.then(lambda s, task: draft_section(s, str(task))).then(refine_prose)


def orchestrate(
    goal: str = DEFAULT_GOAL,
    client: ModelClient | None = None,
    registry: ToolRegistry | None = None,
    *,
    fail_role: str | None = None,
    latencies_ms: Sequence[float] | None = None,
) -> AsyncFlow[MetaState, str]:
    """Full meta run: decompose, run sub-agents concurrently, synthesize.

    ``fail_role`` injects a fault into the sub-agent with that role.
    ``latencies_ms`` staggers sub-agent start latencies (cycled over the
    plan) to exercise out-of-order completion; report order still follows
    the plan.
    """
    client = client or MockModelClient()
    registry = registry or default_registry()

    def plan_step(state: MetaState, _: Any) -> Flow[MetaState, tuple[SubAgentSpec, ...]]:
        return decompose(state, goal, client)

    async def spawn_step(
        state: MetaState, plan: tuple[SubAgentSpec, ...]
    ) -> Flow[MetaState, tuple[str, ...]]:
        flows = []
        for index, spec in enumerate(plan):
            latency = latencies_ms[index % len(latencies_ms)] if latencies_ms else 0.0
            flows.append(
                instantiate(spec, registry, latency_ms=latency, fail=spec.role == fail_role)
            )
        gathered = await AsyncFlow.gather(flows).run()
        if not gathered.is_successful:
            assert gathered.error_info is not None
            failed = state.with_log(f"Sub-agent run failed: {gathered.error_info.message}")
            return Flow.failure(failed, gathered.error_info)
        reports = tuple(str(report) for report in gathered.require_value())
        entries = tuple(f"[{spec.role}] report collected." for spec in plan)
        collected = state.with_reports(reports).with_log(*entries)
        return Flow.success(collected, reports)

    def synthesize_step(state: MetaState, reports: tuple[str, ...]) -> Flow[MetaState, str]:
        assert state.plan is not None
        sections = "\n\n".join(
            f"[{spec.role}]\n{report}" for spec, report in zip(state.plan, reports)
        )
        combined = f"Combined Report\n\n{sections}"
        done = state.with_log("Synthesized combined report.")
        return Flow.success(done, combined)

    return (
        AsyncFlow.start(MetaState(goal=goal))
        .then(plan_step)
        .then(spawn_step)
        .then(synthesize_step)
    )
