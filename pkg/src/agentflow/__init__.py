"""Composable agent pipelines on success/failure rails.

``Flow`` is the synchronous kernel: state plus value on a success track,
or state plus structured error on a failure track, chained with ``then``
/ ``map`` / ``apply``. ``AsyncFlow`` defers the same semantics behind a
cold, re-runnable computation and adds ``gather`` for concurrent fan-out.
On top sit a small agent domain (tools, deterministic mock model,
scenario steps), a JSON wire codec for tool calls and results, and a
meta-orchestrator that spawns sub-agent pipelines from a decomposed goal.
"""

from .agent import (
    AgentState,
    MockModelClient,
    ModelClient,
    ToolCall,
    ToolRegistry,
    ToolResult,
    build_briefing_flow,
    build_research_flow,
    default_registry,
)
from .async_flow import EMPTY_GATHER_MESSAGE, AsyncFlow, MergeStrategy, gather_results
from .flow import ErrorInfo, ErrorKind, Flow, ValueAbsentError
from .meta import MetaState, Pipeline, SubAgentSpec, orchestrate
from .wire import (
    WireDecodeError,
    decode_tool_call,
    decode_tool_result,
    encode_tool_call,
    encode_tool_result,
    flow_to_tool_result,
)

__version__ = "0.1.0"

__all__ = [
    "AgentState",
    "AsyncFlow",
    "EMPTY_GATHER_MESSAGE",
    "ErrorInfo",
    "ErrorKind",
    "Flow",
    "MergeStrategy",
    "MetaState",
    "MockModelClient",
    "ModelClient",
    "Pipeline",
    "SubAgentSpec",
    "ToolCall",
    "ToolRegistry",
    "ToolResult",
    "ValueAbsentError",
    "WireDecodeError",
    "build_briefing_flow",
    "build_research_flow",
    "decode_tool_call",
    "decode_tool_result",
    "default_registry",
    "encode_tool_call",
    "encode_tool_result",
    "flow_to_tool_result",
    "gather_results",
    "orchestrate",
    "__version__",
]
