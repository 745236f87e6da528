"""Brute-force cross-checks for the decision procedures.

Nothing here is used by :mod:`hoca_lab.decide`. The power census runs on its
own dense numpy representation of polynomial matrices, so a bug in the sparse
arithmetic cannot make both sides agree by accident.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Sequence

import numpy as np

from .laurent import hat_bar
from .lmatrix import FrobeniusSpec, LaurentMatrix, corner_sequence, extract_UL, speed_table
from .modring import is_probable_prime
from .models import LcaRule

CYCLE = "cycle"
GROWTH = "growth"
INCONCLUSIVE = "inconclusive"

DEFAULT_MAX_STEPS = 2048
DEFAULT_GROWTH = 64


class _Dense:
    """Polynomial matrix as an (n, n, width) int64 array; slot w holds exponent offset + w."""

    __slots__ = ("arr", "offset")

    def __init__(self, arr: np.ndarray, offset: int):
        nz = np.flatnonzero(arr.any(axis=(0, 1)))
        if nz.size == 0:
            self.arr = arr[:, :, :0]
            self.offset = 0
        else:
            self.arr = np.ascontiguousarray(arr[:, :, nz[0] : nz[-1] + 1])
            self.offset = offset + int(nz[0])

    @classmethod
    def from_matrix(cls, a: LaurentMatrix) -> "_Dense":
        exps = [e for row in a.rows for p in row for e, _ in p.terms]
        lo = min(exps, default=0)
        hi = max(exps, default=0)
        arr = np.zeros((a.n, a.n, hi - lo + 1), dtype=np.int64)
        for i, row in enumerate(a.rows):
            for j, p in enumerate(row):
                for e, c in p.terms:
                    arr[i, j, e - lo] = c
        return cls(arr, lo)

    @classmethod
    def identity(cls, n: int) -> "_Dense":
        return cls(np.eye(n, dtype=np.int64)[:, :, None], 0)

    def mul(self, other: "_Dense", m: int) -> "_Dense":
        n = self.arr.shape[0]
        wa, wb = self.arr.shape[2], other.arr.shape[2]
        if wa == 0 or wb == 0:
            return _Dense(np.zeros((n, n, 0), dtype=np.int64), 0)
        out = np.zeros((n, n, wa + wb - 1), dtype=np.int64)
        for s in range(wb):
            out[:, :, s : s + wa] += np.einsum("ijw,jk->ikw", self.arr, other.arr[:, :, s])
        out %= m
        return _Dense(out, self.offset + other.offset)

    def key(self) -> tuple:
        return (self.offset, self.arr.shape[2], self.arr.tobytes())

    def span(self) -> tuple[int, int]:
        if self.arr.shape[2] == 0:
            return (0, 0)
        return self.offset, self.offset + self.arr.shape[2] - 1


@dataclass
class PowerCensus:
    outcome: str
    powers_examined: int
    max_steps: int
    growth_threshold: int
    q: int | None = None
    period: int | None = None
    # (t, lowest exponent, highest exponent) each time the reach max(|lo|, |hi|) grows
    checkpoints: list[tuple[int, int, int]] = field(default_factory=list)

    def to_json(self):
        d = {
            "outcome": self.outcome,
            "powers_examined": self.powers_examined,
            "max_steps": self.max_steps,
            "growth_threshold": self.growth_threshold,
        }
        if self.outcome == CYCLE:
            d.update(q=self.q, period=self.period)
        d["checkpoints"] = [list(c) for c in self.checkpoints]
        return d


def power_census(
    a: LaurentMatrix, max_steps: int = DEFAULT_MAX_STEPS, growth_threshold: int = DEFAULT_GROWTH
) -> PowerCensus:
    """Walk M^0, M^1, ... until a power repeats, the exponent reach exceeds the
    threshold, or ``max_steps`` powers have been produced."""
    if max_steps < 1 or growth_threshold < 1:
        raise ValueError("max_steps and growth_threshold must be >= 1")
    m = a.m
    base = _Dense.from_matrix(a)
    cur = _Dense.identity(a.n)
    seen: dict[tuple, tuple[int, np.ndarray]] = {}
    checkpoints = []
    reach = -1
    for t in range(max_steps + 1):
        k = cur.key()
        if k in seen:
            q, arr = seen[k]
            if np.array_equal(arr, cur.arr):
                return PowerCensus(CYCLE, t, max_steps, growth_threshold, q=q, period=t - q,
                                   checkpoints=checkpoints)
        seen[k] = (t, cur.arr)
        lo, hi = cur.span()
        if max(-lo, hi) > reach:
            reach = max(-lo, hi)
            checkpoints.append((t, lo, hi))
            if reach > growth_threshold:
                return PowerCensus(GROWTH, t, max_steps, growth_threshold, checkpoints=checkpoints)
        if t < max_steps:
            cur = cur.mul(base, m)
    return PowerCensus(INCONCLUSIVE, max_steps, max_steps, growth_threshold, checkpoints=checkpoints)


@dataclass
class RecurrenceReport:
    modulus: int
    prime: int
    horizon: int
    nonzero_positions: list[int]

    @property
    def beyond_half(self) -> bool:
        return any(l > self.horizon // 2 for l in self.nonzero_positions)


def recurrence_nonvanishing(
    alphas: Sequence[int], lags: Sequence[int], p: int, k: int, horizon: int
) -> RecurrenceReport:
    """b_0 = 1, b_l = 0 for l < 0, b_l = sum alpha_i b_{l - lag_i} mod p^k; report
    every l <= horizon with b_l not divisible by p."""
    q = p**k
    if not is_probable_prime(p) or k < 1:
        raise ValueError(f"{p}^{k} is not a prime power")
    if len(alphas) != len(lags) or not alphas:
        raise ValueError("need one lag per coefficient")
    for a in alphas:
        if not 1 <= a < q or a % p == 0:
            raise ValueError(f"coefficient {a} must be a unit of Z_{q}")
    if any(l <= 0 for l in lags) or any(x >= y for x, y in zip(lags, lags[1:])):
        raise ValueError("lags must be positive and strictly increasing")
    b = [1]
    for l in range(1, horizon + 1):
        b.append(sum(a * b[l - g] for a, g in zip(alphas, lags) if l - g >= 0) % q)
    return RecurrenceReport(q, p, horizon, [l for l, v in enumerate(b) if v % p])


def unit_shift_violations(p: int, k: int, b_max: int) -> list[tuple[int, int]]:
    """All (a, b) with a a unit in [1, p^k), 0 <= b <= b_max and (a + p*b) = 0 mod p^k.
    Expected to be empty."""
    q = p**k
    return [
        (a, b)
        for a in range(1, q)
        if a % p
        for b in range(b_max + 1)
        if (a + p * b) % q == 0
    ]


class NotHatPure(ValueError):
    pass


def monomial_check(f: FrobeniusSpec, p: int, horizon: int) -> bool:
    """Corner entries of U^t and L^t stay null or single monomials of degree t*d.

    When the relevant speed is nonzero, also require a unit-coefficient corner
    entry somewhere in [horizon/2, horizon].
    """
    for poly in f.row:
        hat, _ = hat_bar(poly, p)
        if hat != poly:
            raise NotHatPure("spec has coefficients divisible by p")
    up, low = extract_UL(f, p)
    table = speed_table(f, p)
    for spec, speed in ((up, table.d_plus), (low, table.d_minus)):
        seq = corner_sequence(spec, horizon)
        for t in range(1, horizon + 1):
            u = seq[t]
            if u.is_zero():
                continue
            target = speed * t
            if not u.is_monomial() or target.denominator != 1 or u.terms[0][0] != target:
                return False
        if speed != 0:
            late = range(-(-horizon // 2), horizon + 1)
            if not any(seq[t] and seq[t].terms[0][1] % p for t in late):
                return False
    return True


@dataclass
class PeriodicMap:
    m: int
    period: int
    matrix: list[list[int]]
    diagonal: list[int]
    kernel_size: int
    image_size: int

    @property
    def injective(self) -> bool:
        return self.kernel_size == 1

    @property
    def surjective(self) -> bool:
        return self.image_size == self.total

    @property
    def total(self) -> int:
        return self.m ** len(self.matrix)

    def to_json(self):
        return {
            "L": self.period,
            "kernel_size": self.kernel_size,
            "image_size": self.image_size,
            "injective": self.injective,
            "surjective": self.surjective,
        }


def smith_diagonal(a: Sequence[Sequence[int]], modulus: int | None = None) -> list[int]:
    """Diagonal of the Smith normal form over the integers (non-negative, padded to
    min(rows, cols) with zeros).

    With ``modulus`` every entry is reduced mod ``modulus`` after each elementary
    operation. The operations are still Euclidean steps with integer quotients,
    so gcd(d_j, modulus) is unchanged, and entries cannot blow up.
    """
    red = (lambda x: x % modulus) if modulus else (lambda x: x)
    A = [[red(int(v)) for v in row] for row in a]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    size = min(rows, cols)
    diag = []
    for t in range(size):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            changed = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    A[i] = [red(x - q * y) for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        changed = True
            for j in range(t + 1, cols):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    for row in A:
                        row[j] = red(row[j] - q * row[t])
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        changed = True
            if changed:
                continue
            # pivot must divide the rest of the submatrix
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            A[t] = [red(x + y) for x, y in zip(A[t], A[bad])]
        diag.append(abs(A[t][t]))
    return diag + [0] * (size - len(diag))


def periodic_matrix(rule: LcaRule, L: int) -> list[list[int]]:
    """Integer matrix of the rule acting on L-periodic configurations; state
    (cell x, component h) sits at index x*n + h."""
    n, r = rule.n, rule.radius
    N = n * L
    A = [[0] * N for _ in range(N)]
    for x in range(L):
        for i in range(-r, r + 1):
            y = (x + i) % L
            mat = rule.matrix(i)
            for h in range(n):
                for k in range(n):
                    A[x * n + h][y * n + k] += mat[h][k]
    return [[v % rule.m for v in row] for row in A]


def periodic_map(rule: LcaRule, L: int) -> PeriodicMap:
    if L < 1:
        raise ValueError("period must be >= 1")
    A = periodic_matrix(rule, L)
    m = rule.m
    diag = smith_diagonal(A, m)
    kernel = 1
    for d in diag:
        kernel *= gcd(d, m)
    total = m ** len(A)
    return PeriodicMap(m, L, A, diag, kernel, total // kernel)


def kernel_witness(pm: PeriodicMap, limit: int = 1 << 16) -> list[int] | None:
    """Smallest nonzero kernel vector by exhaustive search, or None when the map
    is injective or the state space exceeds ``limit``."""
    N = len(pm.matrix)
    if pm.injective or pm.m**N > limit:
        return None
    for vec in product(range(pm.m), repeat=N):
        if any(vec) and all(sum(a * v for a, v in zip(row, vec)) % pm.m == 0 for row in pm.matrix):
            return list(vec)
    return None
