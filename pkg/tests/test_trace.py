import json
from pathlib import Path

import pytest

from trachtenberg import (
    from_structured,
    multiply_by_rule,
    parse,
    render_table,
    to_structured,
)

GOLDEN = Path(__file__).parent / "golden"

TABLE_CASES = [
    ("123", 11), ("497", 11), ("497", 12), ("497", 6), ("497", 7),
    ("497", 5), ("497", 9), ("497", 8), ("497", 4), ("497", 3),
    ("0", 11), ("99", 12), ("10", 4), ("7", 9),
]


@pytest.mark.parametrize("n, m", TABLE_CASES)
def test_render_table_golden(n, m):
    rendered = render_table(multiply_by_rule(parse(n), m))
    expected = (GOLDEN / f"table_{n}x{m}.txt").read_text(encoding="utf-8")
    assert rendered == expected


def test_render_table_is_deterministic():
    a = render_table(multiply_by_rule(parse("8213947"), 7))
    b = render_table(multiply_by_rule(parse("8213947"), 7))
    assert a == b


def test_table_rows_read_as_expected():
    lines = render_table(multiply_by_rule(parse("497"), 9)).splitlines()
    raw_cells = [c.strip() for c in lines[2].split("|")]
    assert raw_cells == ["4-1=3", "9-4+9=(1)4", "9-9+7=7", "10-7=3"]
    final_cells = [c.strip() for c in lines[4].split("|")]
    assert final_cells == ["4", "4", "7", "3"]


def test_degenerate_zero_table():
    lines = render_table(multiply_by_rule(parse("0"), 11)).splitlines()
    assert lines[-1].split("|")[-1].strip() == "0"


def test_carry_chain():
    for n, m in TABLE_CASES:
        t = multiply_by_rule(parse(n), m)
        assert t.steps[0].carry_in == 0
        for before, after in zip(t.steps, t.steps[1:]):
            assert after.carry_in == before.carry_out


def test_to_structured_fields():
    doc = to_structured(multiply_by_rule(parse("497"), 6))
    assert set(doc) == {"multiplicand", "multiplier", "steps", "extra_leading_digit", "product"}
    assert doc["multiplicand"] == "497"
    assert doc["multiplier"] == 6
    assert doc["product"] == "2982"
    assert doc["extra_leading_digit"] is None
    assert len(doc["steps"]) == 4
    # position 1 receives the carry from the rightmost cell (raw 12),
    # so its raw 17 resolves to digit 8 with another carry out
    step = doc["steps"][1]
    assert step == {
        "position_index": 1,
        "role": "interior",
        "digit": 9,
        "neighbour": 7,
        "raw_value": 17,
        "carry_in": 1,
        "sum": 18,
        "result_digit": 8,
        "carry_out": 1,
        "formula": "9+3+5=(1)7",
    }


def test_to_structured_edges():
    doc = to_structured(multiply_by_rule(parse("0"), 9))
    assert len(doc["steps"]) == 2
    assert doc["product"] == "0"

    doc = to_structured(multiply_by_rule(parse("99"), 12))
    assert doc["extra_leading_digit"] == 1
    assert doc["product"] == "1188"


def test_structured_round_trip():
    for n, m in TABLE_CASES:
        t = multiply_by_rule(parse(n), m)
        doc = json.loads(json.dumps(to_structured(t)))  # survives JSON encoding
        assert from_structured(doc) == t
