"""Worked examples with published expected values."""

from hoca_lab.laurent import LaurentPoly as P
from hoca_lab.lmatrix import FrobeniusSpec

# 4x4 companion matrix over Z_49 with mixed speeds on both sides
MIXED_SPEEDS = FrobeniusSpec(
    49,
    (
        P(49, {-2: 1, 0: 1, 1: 1, 8: 2, 123: 14}),
        P(49, {-3: 3, 0: 3, 2: 1}),
        P(49, {-70: 21, -1: 4, 4: 3}),
        P(49, {-35: 7, -1: 1, 0: 3}),
    ),
)
MIXED_SPEEDS_U = (P(49, {8: 2}), P(49), P(49, {4: 3}), P(49))
MIXED_SPEEDS_L = (P(49), P(49, {-3: 3}), P(49), P(49, {-1: 1}))

# 4x4 companion matrix over Z_49 whose upper part only moves at even times
EVEN_STEP = FrobeniusSpec(
    49,
    (
        P(49, {-2: 1, 0: 1, 1: 1, 6: 16}),
        P(49, {-3: 13, 0: 3, 2: 1}),
        P(49, {-1: 34, 3: 8}),
        P(49, {-1: 1, 0: 31}),
    ),
)
EVEN_STEP_U = FrobeniusSpec(49, (P(49, {6: 16}), P(49), P(49, {3: 8}), P(49)))
# corner entry of U^t for t = 0..8
EVEN_STEP_CORNER = [
    P.const(49, 1),
    P(49),
    P(49, {3: 8}),
    P(49),
    P(49, {6: 31}),
    P(49),
    P(49, {9: 33}),
    P(49),
    P(49, {12: 25}),
]
