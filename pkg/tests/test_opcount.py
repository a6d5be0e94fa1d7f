import random

from trachtenberg import (
    SUPPORTED_MULTIPLIERS,
    DigitString,
    count_schoolbook_ops,
    count_trace_ops,
    multiply_by_rule,
    parse,
)
from trachtenberg.opcount import SCHOOLBOOK, TRACHTENBERG, reports_as_csv, reports_as_table


def test_neighbour_sum_rule_counts():
    # one d+n addition per position, and no carries fire for 123
    r = count_trace_ops(multiply_by_rule(parse("123"), 11))
    assert r.method == TRACHTENBERG
    assert r.additions == 4
    assert (r.doublings, r.halvings, r.complements, r.odd_checks, r.table_lookups) == \
        (0, 0, 0, 0, 0)


def test_zero_times_eleven_counts():
    r = count_trace_ops(multiply_by_rule(parse("0"), 11))
    assert r.additions == 2
    assert (r.doublings, r.halvings, r.complements, r.odd_checks, r.table_lookups) == \
        (0, 0, 0, 0, 0)


def test_halving_rule_counts():
    # every position halves the neighbour and checks oddness; two carries fire
    r = count_trace_ops(multiply_by_rule(parse("497"), 6))
    assert r.halvings == 4
    assert r.odd_checks == 4
    assert r.complements == 0
    assert r.additions == 4 + 4 + 2  # +half, +bonus, two nonzero carries
    assert r.table_lookups == 0


def test_complement_rule_counts():
    r = count_trace_ops(multiply_by_rule(parse("497"), 9))
    # 10-7, 9-9, 9-4; the leading "4-1" is not a complement
    assert r.complements == 3
    assert r.doublings == 0
    r = count_trace_ops(multiply_by_rule(parse("497"), 8))
    assert r.complements == 3
    assert r.doublings == 3  # the three complemented positions are doubled
    assert r.halvings == 0
    r = count_trace_ops(multiply_by_rule(parse("497"), 3))
    assert r.complements == 3
    assert r.doublings == 3
    assert r.halvings == 3  # two interior +half terms plus the leading half(n)-2
    assert r.odd_checks == 3


def test_schoolbook_counts():
    r = count_schoolbook_ops(parse("7"), 6)
    assert r.method == SCHOOLBOOK
    assert r.table_lookups == 1
    assert r.additions == 0

    r = count_schoolbook_ops(parse("497"), 9)
    assert r.table_lookups == 3
    assert r.additions == 2  # two absorbed carries: 9*9+6, 9*4+8

    r = count_schoolbook_ops(parse("123"), 11)
    assert r.table_lookups == 3  # one x1 lookup per digit
    assert r.additions > 0      # the shifted add costs something

    assert (r.doublings, r.halvings, r.complements, r.odd_checks) == (0, 0, 0, 0)


def test_no_table_lookups_ever():
    rng = random.Random(99)
    for _ in range(200):
        value = rng.randint(0, 10**12)
        m = rng.choice(SUPPORTED_MULTIPLIERS)
        a = DigitString.from_int(value)
        assert count_trace_ops(multiply_by_rule(a, m)).table_lookups == 0
        assert count_schoolbook_ops(a, m).table_lookups >= len(a)


def _counts_for_length(length: int, m: int):
    a = DigitString((9,) * length)
    return count_trace_ops(multiply_by_rule(a, m))


def test_counts_grow_linearly():
    for m in SUPPORTED_MULTIPLIERS:
        r10, r20, r40 = (_counts_for_length(k, m) for k in (10, 20, 40))
        for name in ("additions", "doublings", "halvings", "complements", "odd_checks"):
            c10, c20, c40 = (getattr(r, name) for r in (r10, r20, r40))
            # structural counts are affine in the digit count: equal increments
            assert c40 - c20 == 2 * (c20 - c10), (m, name)
            assert c40 <= 4 * 41


def test_report_renderers():
    reports = [
        count_trace_ops(multiply_by_rule(parse("497"), 6)),
        count_schoolbook_ops(parse("497"), 6),
    ]
    table = reports_as_table(reports)
    assert table.startswith("method")
    assert "trachtenberg" in table and "schoolbook" in table

    csv = reports_as_csv(reports)
    lines = csv.strip().splitlines()
    assert lines[0] == ("method,multiplicand_length,multiplier,additions,doublings,"
                        "halvings,complements,odd_checks,table_lookups")
    assert len(lines) == 3
    assert lines[1].startswith("trachtenberg,3,6,")
