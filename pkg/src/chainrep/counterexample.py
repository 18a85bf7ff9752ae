"""Golden fixture: a four-element function where one transform step is not enough.

The initial function below is monotone but not submodular. Its first
chain-supremum iterate is still not submodular (the pair {1},{2,3} over
base {1} violates the exchange inequality: 11 + 31 > 17 + 24), the second
iterate is the submodular fixed point, and the two iterates differ at
{1,2} (17 versus 18). All 48 cell values are exact integers and serve as
the regression gate for the recursion engine.
"""

from __future__ import annotations

from .setfn import GroundSet, SetFunction

GROUND = GroundSet(("1", "2", "3", "4"))

V0_CELLS = {
    "": 0, "1": 7, "2": 13, "3": 20, "4": 19,
    "1,2": 17, "1,3": 24, "1,4": 30, "2,3": 28, "2,4": 34, "3,4": 41,
    "1,2,3": 31, "1,2,4": 36, "1,3,4": 42, "2,3,4": 43,
    "1,2,3,4": 44,
}

V1_CELLS = {
    "": 0, "1": 11, "2": 15, "3": 22, "4": 23,
    "1,2": 17, "1,3": 24, "1,4": 30, "2,3": 28, "2,4": 34, "3,4": 41,
    "1,2,3": 31, "1,2,4": 36, "1,3,4": 42, "2,3,4": 43,
    "1,2,3,4": 44,
}

V2_CELLS = {
    "": 0, "1": 11, "2": 15, "3": 22, "4": 23,
    "1,2": 18, "1,3": 25, "1,4": 30, "2,3": 29, "2,4": 34, "3,4": 41,
    "1,2,3": 31, "1,2,4": 36, "1,3,4": 42, "2,3,4": 43,
    "1,2,3,4": 44,
}


def _build(cells: dict[str, int]) -> SetFunction:
    values = [0] * (1 << GROUND.size)
    for key, val in cells.items():
        labels = key.split(",") if key else []
        values[GROUND.mask_of(labels)] = val
    return SetFunction(GROUND, tuple(values))


V0 = _build(V0_CELLS)
V1_EXPECTED = _build(V1_CELLS)
V2_EXPECTED = _build(V2_CELLS)
