"""Wire codec tests: byte-exact goldens, round-trip properties, and
decode validation."""

from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from agentflow import (
    ErrorInfo,
    ErrorKind,
    Flow,
    ToolCall,
    ToolResult,
    WireDecodeError,
    decode_tool_call,
    decode_tool_result,
    encode_tool_call,
    encode_tool_result,
    flow_to_tool_result,
)

FIXTURES = Path(__file__).parent.parent / "fixtures"

# fixture file -> the object it must encode to, byte for byte
GOLDEN_CALLS = {
    "tool_call_search.json": ToolCall("tool-1", "search", {"query": "What is a Monad?"}),
    "tool_call_unicode.json": ToolCall(
        "tool-2", "search", {"query": "Qu'est-ce qu'une monade ? 単子とは何か 🐍", "limit": 3}
    ),
}
GOLDEN_RESULTS = {
    "tool_result_ok.json": ToolResult("tool-1", "ok", False),
    "tool_result_error.json": ToolResult("tool-1", "Unknown tool: 'guess'", True),
}

# -- strategies --------------------------------------------------------

wire_text = st.text(
    alphabet=st.characters(blacklist_categories=("Cs",)),  # any unicode except surrogates
    max_size=40,
)
json_scalars = st.one_of(
    st.none(),
    st.booleans(),
    st.integers(min_value=-(2**31), max_value=2**31),
    st.floats(allow_nan=False, allow_infinity=False),
    wire_text,
)
json_values = st.recursive(
    json_scalars,
    lambda leaf: st.one_of(
        st.lists(leaf, max_size=4),
        st.dictionaries(wire_text, leaf, max_size=4),
    ),
    max_leaves=10,
)
tool_calls = st.builds(
    ToolCall,
    tool_id=st.text(min_size=1, max_size=20),
    name=st.text(min_size=1, max_size=20),
    arguments=st.dictionaries(wire_text, json_values, max_size=4),
)
tool_results = st.builds(
    ToolResult,
    tool_id=st.text(min_size=1, max_size=20),
    content=wire_text,
    is_error=st.booleans(),
)


# -- goldens -----------------------------------------------------------


@pytest.mark.parametrize("filename", sorted(GOLDEN_CALLS))
def test_golden_tool_call_bytes(filename):
    expected = (FIXTURES / filename).read_bytes()
    encoded = (encode_tool_call(GOLDEN_CALLS[filename]) + "\n").encode("utf-8")
    assert encoded == expected


@pytest.mark.parametrize("filename", sorted(GOLDEN_RESULTS))
def test_golden_tool_result_bytes(filename):
    expected = (FIXTURES / filename).read_bytes()
    encoded = (encode_tool_result(GOLDEN_RESULTS[filename]) + "\n").encode("utf-8")
    assert encoded == expected


@pytest.mark.parametrize("filename", sorted(GOLDEN_CALLS))
def test_golden_tool_call_decodes(filename):
    text = (FIXTURES / filename).read_text(encoding="utf-8")
    assert decode_tool_call(text) == GOLDEN_CALLS[filename]


@pytest.mark.parametrize("filename", sorted(GOLDEN_RESULTS))
def test_golden_tool_result_decodes(filename):
    text = (FIXTURES / filename).read_text(encoding="utf-8")
    assert decode_tool_result(text) == GOLDEN_RESULTS[filename]


def test_encoding_layout_is_fixed():
    encoded = encode_tool_call(ToolCall("tool-1", "search", {"query": "What is a Monad?"}))
    assert encoded == (
        '{"type":"tools_call","payload":{"tool_id":"tool-1","name":"search",'
        '"arguments":{"query":"What is a Monad?"}}}'
    )


def test_empty_arguments_encode_as_empty_object():
    encoded = encode_tool_call(ToolCall("tool-1", "search", {}))
    assert '"arguments":{}' in encoded


def test_result_layout_uses_isError_key():
    encoded = encode_tool_result(ToolResult("tool-1", "ok", False))
    assert encoded == '{"type":"tool_result","payload":{"tool_id":"tool-1","content":"ok","isError":false}}'


# -- round-trip properties ---------------------------------------------


@given(tool_calls)
def test_tool_call_round_trip(call):
    assert decode_tool_call(encode_tool_call(call)) == call


@given(tool_results)
def test_tool_result_round_trip(result):
    assert decode_tool_result(encode_tool_result(result)) == result


@given(tool_calls)
def test_encoding_is_deterministic(call):
    assert encode_tool_call(call) == encode_tool_call(call)


# -- decode validation -------------------------------------------------


def test_decode_rejects_invalid_json():
    with pytest.raises(WireDecodeError, match="invalid JSON"):
        decode_tool_call("{nope")


def test_decode_rejects_non_object_envelope():
    with pytest.raises(WireDecodeError, match="object"):
        decode_tool_call("[1,2]")


def test_decode_rejects_missing_type():
    with pytest.raises(WireDecodeError, match="type"):
        decode_tool_call('{"payload":{}}')


def test_decode_rejects_wrong_type():
    text = encode_tool_result(ToolResult("tool-1", "ok", False))
    with pytest.raises(WireDecodeError, match="type"):
        decode_tool_call(text)
    text = encode_tool_call(ToolCall("tool-1", "search", {}))
    with pytest.raises(WireDecodeError, match="type"):
        decode_tool_result(text)


def test_decode_rejects_missing_payload():
    with pytest.raises(WireDecodeError, match="payload"):
        decode_tool_call('{"type":"tools_call"}')


def test_decode_rejects_missing_name():
    with pytest.raises(WireDecodeError, match="name"):
        decode_tool_call('{"type":"tools_call","payload":{"tool_id":"tool-1"}}')


def test_decode_rejects_missing_tool_id():
    with pytest.raises(WireDecodeError, match="tool_id"):
        decode_tool_call('{"type":"tools_call","payload":{"name":"search"}}')


def test_decode_rejects_empty_required_fields():
    with pytest.raises(WireDecodeError, match="tool_id"):
        decode_tool_call('{"type":"tools_call","payload":{"tool_id":"","name":"search"}}')
    with pytest.raises(WireDecodeError, match="name"):
        decode_tool_call('{"type":"tools_call","payload":{"tool_id":"tool-1","name":""}}')


def test_decode_rejects_non_object_arguments():
    text = '{"type":"tools_call","payload":{"tool_id":"tool-1","name":"search","arguments":[1]}}'
    with pytest.raises(WireDecodeError, match="arguments"):
        decode_tool_call(text)


def test_decode_defaults_missing_arguments_to_empty():
    call = decode_tool_call('{"type":"tools_call","payload":{"tool_id":"tool-1","name":"search"}}')
    assert call.arguments == {}


def test_decode_rejects_non_bool_isError():
    text = '{"type":"tool_result","payload":{"tool_id":"tool-1","content":"ok","isError":1}}'
    with pytest.raises(WireDecodeError, match="isError"):
        decode_tool_result(text)


def test_decode_rejects_missing_content():
    with pytest.raises(WireDecodeError, match="content"):
        decode_tool_result('{"type":"tool_result","payload":{"tool_id":"tool-1"}}')


def test_decode_ignores_unknown_extra_keys():
    text = (
        '{"type":"tools_call","payload":{"tool_id":"tool-1","name":"search",'
        '"arguments":{},"trace":"x"},"version":2}'
    )
    assert decode_tool_call(text) == ToolCall("tool-1", "search", {})


def test_numbers_survive_round_trip_uncoerced():
    call = ToolCall("tool-1", "search", {"limit": 3, "ratio": 0.5})
    decoded = decode_tool_call(encode_tool_call(call))
    assert isinstance(decoded.arguments["limit"], int)
    assert isinstance(decoded.arguments["ratio"], float)


# -- flow projection ---------------------------------------------------


def test_flow_to_tool_result_success():
    flow = Flow.success("state", "answer")
    result = flow_to_tool_result(flow, "tool-9")
    assert result == ToolResult("tool-9", "answer", False)


def test_flow_to_tool_result_failure():
    flow = Flow.failure("state", ErrorInfo("it broke", ErrorKind.TOOL_EXECUTION))
    result = flow_to_tool_result(flow, "tool-9")
    assert result == ToolResult("tool-9", "it broke", True)


def test_flow_to_tool_result_stringifies_values():
    assert flow_to_tool_result(Flow.success("s", 42), "t").content == "42"
