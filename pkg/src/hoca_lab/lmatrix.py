"""Square matrices over Z_m[X, X^-1], with the companion (Frobenius) shape as a
first-class citizen."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .laurent import LaurentPoly, ModulusMismatch, degrees, hat_bar, reduce_mod


class ShapeError(ValueError):
    pass


class LaurentMatrix:
    __slots__ = ("n", "m", "rows")

    def __init__(self, m: int, rows: Sequence[Sequence[LaurentPoly]]):
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise ShapeError("matrix must be square and non-empty")
        for r in rows:
            for e in r:
                if e.m != m:
                    raise ModulusMismatch(f"entry over Z_{e.m} in a matrix over Z_{m}")
        self.n = n
        self.m = m
        self.rows: tuple[tuple[LaurentPoly, ...], ...] = tuple(tuple(r) for r in rows)

    @classmethod
    def identity(cls, n: int, m: int) -> "LaurentMatrix":
        one, zero = LaurentPoly.const(m, 1), LaurentPoly.zero(m)
        return cls(m, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int) -> "LaurentMatrix":
        zero = LaurentPoly.zero(m)
        return cls(m, [[zero] * n for _ in range(n)])

    @classmethod
    def from_ints(cls, m: int, grid) -> "LaurentMatrix":
        return cls(m, [[LaurentPoly.const(m, v) for v in row] for row in grid])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.m == other.m and self.rows == other.rows

    def __hash__(self):
        return hash((self.m, self.rows))

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        _check_compatible(self, other)
        return LaurentMatrix(
            self.m,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __sub__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        _check_compatible(self, other)
        return LaurentMatrix(
            self.m,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return mat_mul(self, other)

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(self.m, [list(col) for col in zip(*self.rows)])

    def apply(self, vec: Sequence[LaurentPoly]) -> list[LaurentPoly]:
        """Matrix-vector product."""
        if len(vec) != self.n:
            raise ShapeError(f"vector of length {len(vec)} for a {self.n}x{self.n} matrix")
        zero = LaurentPoly.zero(self.m)
        out = []
        for row in self.rows:
            acc = zero
            for a, v in zip(row, vec):
                if a and v:
                    acc = acc + a * v
            out.append(acc)
        return out

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def to_json(self):
        return [[e.to_json() for e in r] for r in self.rows]

    def __repr__(self):
        return f"LaurentMatrix(m={self.m}, rows={[[str(e) for e in r] for r in self.rows]})"


def _check_compatible(a: LaurentMatrix, b: LaurentMatrix) -> None:
    if a.n != b.n:
        raise ShapeError(f"dimension mismatch: {a.n} vs {b.n}")
    if a.m != b.m:
        raise ModulusMismatch(f"moduli differ: {a.m} vs {b.m}")


def mat_mul(a: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    _check_compatible(a, b)
    zero = LaurentPoly.zero(a.m)
    cols = list(zip(*b.rows))
    out = []
    for row in a.rows:
        new_row = []
        for col in cols:
            acc = zero
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            new_row.append(acc)
        out.append(new_row)
    return LaurentMatrix(a.m, out)


def mat_pow(a: LaurentMatrix, t: int) -> LaurentMatrix:
    """Binary powering; ``mat_pow(a, 0)`` is the identity."""
    if t < 0:
        raise ValueError("t must be >= 0")
    result = LaurentMatrix.identity(a.n, a.m)
    base = a
    while t:
        if t & 1:
            result = mat_mul(result, base)
        t >>= 1
        if t:
            base = mat_mul(base, base)
    return result


def power_trajectory(a: LaurentMatrix, t_max: int) -> list[LaurentMatrix]:
    """[a^0, a^1, ..., a^t_max] by repeated multiplication."""
    out = [LaurentMatrix.identity(a.n, a.m)]
    for _ in range(t_max):
        out.append(mat_mul(out[-1], a))
    return out


@dataclass(frozen=True)
class FrobeniusSpec:
    """Companion-shaped matrix given by its bottom row (m_0, ..., m_{n-1}).

    The full matrix has ones on the superdiagonal, this row as its last row and
    zeros elsewhere.
    """

    m: int
    row: tuple[LaurentPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "row", tuple(self.row))
        if not self.row:
            raise ShapeError("Frobenius row must be non-empty")
        for e in self.row:
            if e.m != self.m:
                raise ModulusMismatch(f"row entry over Z_{e.m} in a spec over Z_{self.m}")

    @property
    def n(self) -> int:
        return len(self.row)

    def to_json(self) -> dict:
        return {
            "kind": "frobenius",
            "m": self.m,
            "n": self.n,
            "row": [e.to_json() for e in self.row],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FrobeniusSpec":
        m = int(data["m"])
        row = tuple(LaurentPoly.from_json(m, pairs) for pairs in data["row"])
        if "n" in data and int(data["n"]) != len(row):
            raise ShapeError(f"declared n={data['n']} but row has {len(row)} entries")
        return cls(m, row)

    def reduce(self, q: int) -> "FrobeniusSpec":
        return FrobeniusSpec(q, tuple(reduce_mod(e, q) for e in self.row))


def frobenius_to_matrix(f: FrobeniusSpec) -> LaurentMatrix:
    n, m = f.n, f.m
    one, zero = LaurentPoly.const(m, 1), LaurentPoly.zero(m)
    rows = [[one if j == i + 1 else zero for j in range(n)] for i in range(n - 1)]
    rows.append(list(f.row))
    return LaurentMatrix(m, rows)


def matrix_to_frobenius(a: LaurentMatrix) -> FrobeniusSpec | None:
    """Return the spec when ``a`` has companion shape, else None."""
    n = a.n
    for i in range(n - 1):
        for j in range(n):
            e = a[i, j]
            if j == i + 1:
                if e.terms != ((0, 1),):
                    return None
            elif e:
                return None
    return FrobeniusSpec(a.m, a.rows[n - 1])


def is_frobenius(a: LaurentMatrix) -> bool:
    return matrix_to_frobenius(a) is not None


@dataclass(frozen=True)
class SpeedTable:
    d_plus_i: tuple[Fraction, ...]
    d_minus_i: tuple[Fraction, ...]

    @property
    def d_plus(self) -> Fraction:
        return max(self.d_plus_i)

    @property
    def d_minus(self) -> Fraction:
        return min(self.d_minus_i)


def speed_table(f: FrobeniusSpec, prime: int) -> SpeedTable:
    n = f.n
    reps = [degrees(e, prime) for e in f.row]
    return SpeedTable(
        d_plus_i=tuple(Fraction(r.deg_plus, n - i) for i, r in enumerate(reps)),
        d_minus_i=tuple(Fraction(r.deg_minus, n - i) for i, r in enumerate(reps)),
    )


def extract_UL(f: FrobeniusSpec, prime: int) -> tuple[FrobeniusSpec, FrobeniusSpec]:
    """Keep, per row entry, only the extreme-degree monomial of the fastest speed.

    An entry survives into the upper spec when its speed equals the maximal
    positive speed (and that speed is nonzero); symmetrically for the lower one.
    """
    table = speed_table(f, prime)
    m, zero = f.m, LaurentPoly.zero(f.m)
    up, low = [], []
    for i, e in enumerate(f.row):
        r = degrees(e, prime)
        if r.witness_plus is not None and table.d_plus_i[i] == table.d_plus:
            up.append(LaurentPoly.monomial(m, *r.witness_plus))
        else:
            up.append(zero)
        if r.witness_minus is not None and table.d_minus_i[i] == table.d_minus:
            low.append(LaurentPoly.monomial(m, *r.witness_minus))
        else:
            low.append(zero)
    return FrobeniusSpec(m, tuple(up)), FrobeniusSpec(m, tuple(low))


def hat_bar_matrix(f: FrobeniusSpec, prime: int) -> tuple[FrobeniusSpec, FrobeniusSpec]:
    """Row-wise hat/bar split. The bar spec holds only the removed bottom-row terms;
    its matrix is ``M - M_hat``, i.e. the bar row with no superdiagonal."""
    parts = [hat_bar(e, prime) for e in f.row]
    return (
        FrobeniusSpec(f.m, tuple(h for h, _ in parts)),
        FrobeniusSpec(f.m, tuple(b for _, b in parts)),
    )


def bar_matrix(f: FrobeniusSpec, prime: int) -> LaurentMatrix:
    _, bar = hat_bar_matrix(f, prime)
    rows = [[LaurentPoly.zero(f.m)] * f.n for _ in range(f.n - 1)]
    rows.append(list(bar.row))
    return LaurentMatrix(f.m, rows)


def determinant(a: LaurentMatrix) -> LaurentPoly:
    """Division-free Laplace expansion along rows, memoized on the set of unused columns."""
    n, m = a.n, a.m
    rows = a.rows
    zero = LaurentPoly.zero(m)

    @lru_cache(maxsize=None)
    def minor(r: int, cols: int) -> LaurentPoly:
        if r == n:
            return LaurentPoly.const(m, 1)
        acc = zero
        sign = 1
        for j in range(n):
            if not cols >> j & 1:
                continue
            e = rows[r][j]
            if e:
                sub = minor(r + 1, cols & ~(1 << j))
                if sub:
                    term = e * sub
                    acc = acc + term if sign > 0 else acc - term
            sign = -sign
        return acc

    return minor(0, (1 << n) - 1)


def corner_sequence(f: FrobeniusSpec, horizon: int) -> list[LaurentPoly]:
    """Bottom-right entry of the t-th power for t = 0..horizon, via the
    linear recurrence driven by the companion row."""
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    n, m = f.n, f.m
    seq = [LaurentPoly.const(m, 1)]
    active = [(i, c) for i, c in enumerate(f.row) if c]
    zero = LaurentPoly.zero(m)
    for t in range(1, horizon + 1):
        acc = zero
        for i, c in active:
            back = t - n + i
            if back >= 0 and seq[back]:
                acc = acc + c * seq[back]
        seq.append(acc)
    return seq


def degree_span(a: LaurentMatrix) -> tuple[int, int]:
    terms = [e for r in a.rows for e in r if e]
    if not terms:
        return (0, 0)
    return min(e.min_exp() for e in terms), max(e.max_exp() for e in terms)
