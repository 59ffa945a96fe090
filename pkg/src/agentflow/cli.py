"""Command-line entry point: run one scenario per process, print the
report, and optionally write a JSON-lines trace.

Scenarios: research (plan/execute/synthesize/format), briefing (three
concurrent fetches gathered into one digest), meta (goal decomposition
into sub-agent pipelines). Each accepts a scenario-appropriate
``--inject-failure`` value to demonstrate the failure track end to end.

Exit codes: 0 when the final flow succeeded, 1 when it failed, 2 on a
configuration error (argparse rejection).
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
import time
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from .agent import DEFAULT_TASK, MockModelClient, build_briefing_flow, build_research_flow
from .flow import Flow
from .meta import DEFAULT_GOAL, SubAgentSpec, orchestrate


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: scenario plus its knobs.

    ``seed`` is accepted and recorded for external harnesses; the bundled
    scenarios are deterministic and do not consume it.
    """

    scenario: str
    inject_failure: str | None = None
    latency_ms: int = 0
    trace_path: str | None = None
    seed: int = 0
    goal: str = DEFAULT_GOAL
    task: str = DEFAULT_TASK


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agentflow",
        description="Run the bundled agent scenarios with deterministic mocks.",
    )
    subparsers = parser.add_subparsers(dest="scenario", required=True)

    def add_common(sub: argparse.ArgumentParser, inject_choice: str) -> None:
        sub.add_argument(
            "--inject-failure",
            choices=[inject_choice],
            default=None,
            help="force the scenario onto the failure track",
        )
        sub.add_argument("--trace", default=None, help="write a JSON-lines trace to this path")
        sub.add_argument("--seed", type=int, default=0, help="reserved for external harnesses")

    research = subparsers.add_parser("research", help="plan, run a tool, synthesize, format")
    research.add_argument("--task", default=DEFAULT_TASK, help="research question")
    add_common(research, "guess-tool")

    briefing = subparsers.add_parser("briefing", help="gather news/weather/stocks concurrently")
    briefing.add_argument(
        "--latency-ms", type=_nonnegative_int, default=100, help="simulated per-fetch delay"
    )
    add_common(briefing, "weather")

    meta = subparsers.add_parser("meta", help="decompose a goal into sub-agent pipelines")
    meta.add_argument("--goal", default=DEFAULT_GOAL, help="goal to decompose")
    meta.add_argument(
        "--latency-ms", type=_nonnegative_int, default=0, help="simulated sub-agent start delay"
    )
    add_common(meta, "data-agent")

    return parser


def write_trace(
    path: str,
    entries: Sequence[str],
    *,
    status: str,
    error: str | None,
    wall_ms: int,
    plan: Sequence[SubAgentSpec] | None = None,
) -> None:
    """Write one JSON record per line: numbered history entries, an
    optional plan record, and a status footer."""
    records: list[dict[str, Any]] = [
        {"seq": index, "entry": entry} for index, entry in enumerate(entries, start=1)
    ]
    if plan is not None:
        records.append(
            {
                "plan": [
                    {"role": spec.role, "pipeline": spec.pipeline.value, "prompt": spec.prompt}
                    for spec in plan
                ]
            }
        )
    records.append({"status": status, "error": error, "wall_ms": wall_ms})
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record, separators=(",", ":"), ensure_ascii=False))
            handle.write("\n")


def _deliver(
    config: RunConfig,
    flow: Flow[Any, Any],
    entries: Sequence[str],
    wall_ms: int,
    plan: Sequence[SubAgentSpec] | None = None,
    log_lines: Sequence[str] = (),
) -> int:
    if flow.is_successful:
        print(flow.require_value())
        if log_lines:
            print()
            print("Run log:")
            for line in log_lines:
                print(f"  - {line}")
        error_message = None
    else:
        assert flow.error_info is not None
        error_message = flow.error_info.message
        print(f"error[{flow.error_info.kind.value}]: {error_message}", file=sys.stderr)
    if config.trace_path:
        write_trace(
            config.trace_path,
            entries,
            status="success" if flow.is_successful else "failure",
            error=error_message,
            wall_ms=wall_ms,
            plan=plan,
        )
    return 0 if flow.is_successful else 1


def run_research(config: RunConfig) -> int:
    plan_tool = "guess" if config.inject_failure == "guess-tool" else "search"
    client = MockModelClient(plan_tool=plan_tool)
    started = time.perf_counter()
    flow = build_research_flow(config.task, client=client)
    wall_ms = int(round((time.perf_counter() - started) * 1000))
    return _deliver(config, flow, flow.state.history, wall_ms)


def run_briefing(config: RunConfig) -> int:
    fail_source = "weather" if config.inject_failure == "weather" else None
    async_flow = build_briefing_flow(latency_ms=config.latency_ms, fail_source=fail_source)
    started = time.perf_counter()
    flow = asyncio.run(async_flow.run())
    wall_ms = int(round((time.perf_counter() - started) * 1000))
    entries = flow.state.history if flow.state is not None else ()
    return _deliver(config, flow, entries, wall_ms)


def run_meta(config: RunConfig) -> int:
    fail_role = "DataAgent" if config.inject_failure == "data-agent" else None
    latencies = (config.latency_ms,) if config.latency_ms > 0 else None
    async_flow = orchestrate(config.goal, MockModelClient(), fail_role=fail_role, latencies_ms=latencies)
    started = time.perf_counter()
    flow = asyncio.run(async_flow.run())
    wall_ms = int(round((time.perf_counter() - started) * 1000))
    state = flow.state
    entries = state.log if state is not None else ()
    plan = state.plan if state is not None else None
    return _deliver(config, flow, entries, wall_ms, plan=plan, log_lines=entries)


_RUNNERS = {"research": run_research, "briefing": run_briefing, "meta": run_meta}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(
        scenario=args.scenario,
        inject_failure=args.inject_failure,
        latency_ms=getattr(args, "latency_ms", 0),
        trace_path=args.trace,
        seed=args.seed,
        goal=getattr(args, "goal", DEFAULT_GOAL),
        task=getattr(args, "task", DEFAULT_TASK),
    )
    return _RUNNERS[config.scenario](config)


if __name__ == "__main__":
    raise SystemExit(main())
