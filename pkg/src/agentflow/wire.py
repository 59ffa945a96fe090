"""JSON wire codec for tool-call and tool-result envelopes.

The envelope layout is fixed so encoded bytes are stable across runs:

    {"type":"tools_call","payload":{"tool_id":...,"name":...,"arguments":{...}}}
    {"type":"tool_result","payload":{"tool_id":...,"content":...,"isError":...}}

Encoding writes keys in exactly that order, uses compact separators, and
leaves non-ASCII characters unescaped. Decoding ignores unknown extra
keys but rejects missing or mistyped required fields.
"""

from __future__ import annotations

import json
from typing import Any

from .agent import ToolCall, ToolResult
from .flow import Flow

TOOL_CALL_TYPE = "tools_call"
TOOL_RESULT_TYPE = "tool_result"


class WireDecodeError(ValueError):
    """Raised when an envelope is malformed or fails field validation."""


def _dump(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def encode_tool_call(call: ToolCall) -> str:
    envelope = {
        "type": TOOL_CALL_TYPE,
        "payload": {
            "tool_id": call.tool_id,
            "name": call.name,
            "arguments": call.arguments,
        },
    }
    return _dump(envelope)


def encode_tool_result(result: ToolResult) -> str:
    envelope = {
        "type": TOOL_RESULT_TYPE,
        "payload": {
            "tool_id": result.tool_id,
            "content": result.content,
            "isError": result.is_error,
        },
    }
    return _dump(envelope)


def _parse_envelope(text: str, expected_type: str) -> dict[str, Any]:
    try:
        envelope = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WireDecodeError(f"invalid JSON: {exc.msg}") from exc
    if not isinstance(envelope, dict):
        raise WireDecodeError("envelope must be a JSON object")
    if "type" not in envelope:
        raise WireDecodeError("missing field 'type'")
    actual = envelope["type"]
    if actual != expected_type:
        raise WireDecodeError(f"unexpected envelope type: {actual!r} (want {expected_type!r})")
    payload = envelope.get("payload")
    if not isinstance(payload, dict):
        raise WireDecodeError("missing field 'payload'")
    return payload


def _require_str(payload: dict[str, Any], field: str) -> str:
    if field not in payload:
        raise WireDecodeError(f"missing field {field!r}")
    value = payload[field]
    if not isinstance(value, str):
        raise WireDecodeError(f"field {field!r} must be a string")
    return value


def decode_tool_call(text: str) -> ToolCall:
    payload = _parse_envelope(text, TOOL_CALL_TYPE)
    tool_id = _require_str(payload, "tool_id")
    name = _require_str(payload, "name")
    if not tool_id:
        raise WireDecodeError("field 'tool_id' must be non-empty")
    if not name:
        raise WireDecodeError("field 'name' must be non-empty")
    arguments = payload.get("arguments", {})
    if not isinstance(arguments, dict):
        raise WireDecodeError("field 'arguments' must be an object")
    return ToolCall(tool_id=tool_id, name=name, arguments=arguments)


def decode_tool_result(text: str) -> ToolResult:
    payload = _parse_envelope(text, TOOL_RESULT_TYPE)
    tool_id = _require_str(payload, "tool_id")
    if not tool_id:
        raise WireDecodeError("field 'tool_id' must be non-empty")
    content = _require_str(payload, "content")
    is_error = payload.get("isError", False)
    # bool only; JSON 0/1 would silently change meaning downstream
    if not isinstance(is_error, bool):
        raise WireDecodeError("field 'isError' must be a boolean")
    return ToolResult(tool_id=tool_id, content=content, is_error=is_error)


def flow_to_tool_result(flow: Flow[Any, Any], tool_id: str) -> ToolResult:
    """Project a finished flow onto the wire: success carries the value,
    failure carries the error message with ``isError`` set."""
    if flow.is_successful:
        return ToolResult(tool_id, str(flow.require_value()), is_error=False)
    assert flow.error_info is not None
    return ToolResult(tool_id, flow.error_info.message, is_error=True)
