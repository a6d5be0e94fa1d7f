"""The classic worked examples of the system, transcribed as test fixtures.

Each entry gives the per-position raw formula values and carries in
evaluation (right-to-left) order, ending with the leading (prepended-zero)
position.  Every row was cross-checked by hand against ordinary long
multiplication before being frozen here.
"""

# (multiplicand, multiplier, product, raw values r2l, carry-outs r2l)
WORKED_EXAMPLES = [
    ("123", 11, "1353", [3, 5, 3, 1], [0, 0, 0, 0]),
    ("497", 11, "5467", [7, 16, 13, 4], [0, 1, 1, 0]),
    ("497", 12, "5964", [14, 25, 17, 4], [1, 2, 1, 0]),
    ("497", 6, "2982", [12, 17, 8, 2], [1, 1, 0, 0]),
    ("497", 7, "3479", [19, 26, 12, 2], [1, 2, 1, 0]),
    ("497", 5, "2485", [5, 8, 4, 2], [0, 0, 0, 0]),
    ("497", 9, "4473", [3, 7, 14, 3], [0, 0, 1, 0]),
    ("497", 8, "3976", [6, 7, 19, 2], [0, 0, 1, 0]),
    ("497", 4, "1988", [8, 8, 9, 1], [0, 0, 0, 0]),
    ("497", 3, "1491", [11, 8, 14, 0], [1, 0, 1, 0]),
]

# Exact worked-cell strings for a few positions, keyed by
# (multiplicand, multiplier, position_index in evaluation order).
PINNED_CELLS = {
    ("497", 9, 0): "10-7=3",
    ("497", 9, 1): "9-9+7=7",
    ("497", 9, 2): "9-4+9=(1)4",
    ("497", 9, 3): "4-1=3",
    ("497", 6, 0): "7+0+5=(1)2",
    ("497", 6, 1): "9+3+5=(1)7",
    ("497", 6, 2): "4+4=8",
    ("497", 12, 1): "9×2+7=(2)5",
    ("497", 5, 1): "3+5=8",
    ("497", 5, 2): "4+0=4",
    ("497", 8, 0): "(10-7)2=6",
    ("497", 8, 2): "(9-4)2+9=(1)9",
    ("497", 3, 0): "(10-7)2+5=(1)1",
    ("497", 7, 1): "9×2+3+5=(2)6",
}
