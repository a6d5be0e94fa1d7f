import pytest
from hypothesis import given
from hypothesis import strategies as st

from trachtenberg import (
    SUPPORTED_MULTIPLIERS,
    DomainError,
    PositionRole,
    half_floor,
    multiply_by_rule,
    odd_bonus,
    parse,
    position_raw_value,
)
from trachtenberg.rules import check_multiplier

from worked_examples import PINNED_CELLS, WORKED_EXAMPLES


def test_half_floor():
    assert half_floor(3) == 1
    assert half_floor(9) == 4
    assert half_floor(0) == 0
    assert half_floor(10) == 5
    for bad in (-1, 11):
        with pytest.raises(DomainError):
            half_floor(bad)


def test_odd_bonus():
    assert odd_bonus(9) == 5
    assert odd_bonus(4) == 0
    assert odd_bonus(0) == 0
    assert [odd_bonus(d) for d in range(10)] == [0, 5] * 5
    for bad in (-1, 10):
        with pytest.raises(DomainError):
            odd_bonus(bad)


def test_check_multiplier():
    for m in SUPPORTED_MULTIPLIERS:
        assert check_multiplier(m) == m
    for bad in (0, 1, 2, 10, 13, -3):
        with pytest.raises(DomainError):
            check_multiplier(bad)


@pytest.mark.parametrize(
    "m, role, d, n, expected",
    [
        (6, PositionRole.INTERIOR, 9, 7, 17),
        (12, PositionRole.RIGHTMOST, 7, 0, 14),
        (9, PositionRole.RIGHTMOST, 7, 0, 3),
        (8, PositionRole.LEADING, 0, 4, 2),
        (3, PositionRole.LEADING, 0, 4, 0),
        (11, PositionRole.LEADING, 0, 0, 0),
        (7, PositionRole.INTERIOR, 9, 9, 27),  # the largest raw value
        (3, PositionRole.LEADING, 0, 0, -2),   # the smallest raw value
        (4, PositionRole.LEADING, 0, 1, -1),
        (5, PositionRole.RIGHTMOST, 7, 0, 5),
        (9, PositionRole.INTERIOR, 9, 7, 7),
    ],
)
def test_position_raw_value(m, role, d, n, expected):
    assert position_raw_value(m, role, d, n) == expected


def test_position_raw_value_preconditions():
    with pytest.raises(DomainError):
        position_raw_value(9, PositionRole.LEADING, 1, 4)  # leading digit must be 0
    with pytest.raises(DomainError):
        position_raw_value(9, PositionRole.RIGHTMOST, 7, 3)  # no right neighbour
    with pytest.raises(DomainError):
        position_raw_value(9, PositionRole.INTERIOR, 12, 3)
    with pytest.raises(DomainError):
        position_raw_value(9, PositionRole.INTERIOR, 3, -1)
    with pytest.raises(DomainError):
        position_raw_value(2, PositionRole.INTERIOR, 3, 3)


def test_raw_values_stay_in_range():
    for m in SUPPORTED_MULTIPLIERS:
        for role in PositionRole:
            for d in range(10):
                if role is PositionRole.LEADING and d != 0:
                    continue
                for n in range(10):
                    if role is PositionRole.RIGHTMOST and n != 0:
                        continue
                    assert -2 <= position_raw_value(m, role, d, n) <= 27


def test_unified_form_multipliers():
    # the addition-style rules use one formula for every role
    for m in (5, 6, 7, 11, 12):
        for n in range(10):
            assert position_raw_value(m, PositionRole.LEADING, 0, n) == \
                position_raw_value(m, PositionRole.INTERIOR, 0, n)


@pytest.mark.parametrize("text, m, product", [(e[0], e[1], e[2]) for e in WORKED_EXAMPLES])
def test_worked_example_products(text, m, product):
    assert str(multiply_by_rule(parse(text), m).product) == product


@pytest.mark.parametrize("text, m, product, raws, carries",
                         WORKED_EXAMPLES, ids=lambda v: str(v))
def test_worked_example_cells(text, m, product, raws, carries):
    t = multiply_by_rule(parse(text), m)
    assert [s.raw_value for s in t.steps] == raws
    assert [s.carry_out for s in t.steps] == carries


def test_pinned_cell_strings():
    for (text, m, pos), cell in PINNED_CELLS.items():
        t = multiply_by_rule(parse(text), m)
        assert t.steps[pos].formula == cell, (text, m, pos)


def test_multiply_edge_cases():
    assert str(multiply_by_rule(parse("0"), 9).product) == "0"
    # repeated addition: twelve 99s
    total = 0
    for _ in range(12):
        total += 99
    assert str(multiply_by_rule(parse("99"), 12).product) == str(total) == "1188"
    assert multiply_by_rule(parse("99"), 12).extra_leading_digit == 1
    # internal zero; the leading raw is -1, rescued by the incoming carry
    t = multiply_by_rule(parse("10"), 4)
    assert str(t.product) == "40"
    assert t.steps[-1].raw_value == -1
    assert t.steps[-1].carry_in == 1
    assert t.steps[-1].sum == 0


def test_single_digit_multiplicand():
    t = multiply_by_rule(parse("7"), 9)
    assert str(t.product) == "63"
    assert [s.formula for s in t.steps] == ["10-7=3", "7-1=6"]
    assert [s.role for s in t.steps] == [PositionRole.RIGHTMOST, PositionRole.LEADING]


def test_step_structure():
    t = multiply_by_rule(parse("497"), 6)
    assert len(t.steps) == 4
    assert [s.position_index for s in t.steps] == [0, 1, 2, 3]
    assert [s.role for s in t.steps] == [
        PositionRole.RIGHTMOST, PositionRole.INTERIOR, PositionRole.INTERIOR,
        PositionRole.LEADING,
    ]
    assert [s.digit for s in t.steps] == [7, 9, 4, 0]
    assert [s.neighbour for s in t.steps] == [0, 7, 9, 4]


@given(
    st.integers(min_value=0, max_value=10**24),
    st.sampled_from(SUPPORTED_MULTIPLIERS),
)
def test_product_matches_native_arithmetic(value, m):
    t = multiply_by_rule(parse(str(value)), m)
    assert int(str(t.product)) == value * m
    for s in t.steps:
        assert 0 <= s.result_digit <= 9
        assert s.carry_in in (0, 1, 2)
        assert s.carry_out in (0, 1, 2)
        assert s.sum == s.raw_value + s.carry_in >= 0
