"""Rule representations and the conversions between them.

Neighbourhood offsets ``i`` run over ``[-r, r]``; in tables and JSON files the
offset ``i`` lives at column ``i + r``. A matrix or coefficient attached to
offset ``i`` contributes ``X^(-i)`` to the polynomial form, so a rule reading
its right neighbour (offset +1) is multiplication by ``X^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .laurent import LaurentPoly
from .lmatrix import FrobeniusSpec, LaurentMatrix, ShapeError, frobenius_to_matrix, matrix_to_frobenius


class RuleError(ValueError):
    pass


def _canon_table(table, m, rows, cols, what):
    table = tuple(tuple(int(v) % m for v in row) for row in table)
    if len(table) != rows or any(len(r) != cols for r in table):
        raise RuleError(f"{what} table must be {rows}x{cols}")
    return table


@dataclass(frozen=True)
class HocaRule:
    """Linear higher-order CA: ``coeffs[j][i + r]`` multiplies configuration ``j+1`` at offset ``i``."""

    m: int
    memory: int
    radius: int
    coeffs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.m < 2 or self.memory < 1 or self.radius < 0:
            raise RuleError("need m >= 2, memory >= 1, radius >= 0")
        object.__setattr__(
            self, "coeffs", _canon_table(self.coeffs, self.m, self.memory, 2 * self.radius + 1, "coefficient")
        )

    def a(self, j: int, i: int) -> int:
        """Coefficient for configuration ``j`` (1-based) at offset ``i``."""
        return self.coeffs[j - 1][i + self.radius]

    def canonical(self) -> "HocaRule":
        """Same rule with the smallest radius that keeps every nonzero coefficient."""
        r = self.radius
        while r > 0 and all(row[0] == 0 and row[-1] == 0 for row in self._table_at(r)):
            r -= 1
        return HocaRule(self.m, self.memory, r, self._table_at(r))

    def _table_at(self, r):
        cut = self.radius - r
        return tuple(row[cut : len(row) - cut] for row in self.coeffs)

    def to_json(self) -> dict:
        return {
            "kind": "hoca",
            "m": self.m,
            "memory": self.memory,
            "radius": self.radius,
            "coeffs": [list(r) for r in self.coeffs],
        }

    @classmethod
    def from_json(cls, d: dict) -> "HocaRule":
        return cls(int(d["m"]), int(d["memory"]), int(d["radius"]), d["coeffs"])


@dataclass(frozen=True)
class LcaRule:
    """LCA over Z_m^n; ``matrices[i + r]`` is the n x n matrix applied at offset ``i``."""

    m: int
    n: int
    radius: int
    matrices: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        if self.m < 2 or self.n < 1 or self.radius < 0:
            raise RuleError("need m >= 2, n >= 1, radius >= 0")
        if len(self.matrices) != 2 * self.radius + 1:
            raise RuleError(f"expected {2 * self.radius + 1} matrices, got {len(self.matrices)}")
        object.__setattr__(
            self,
            "matrices",
            tuple(_canon_table(mat, self.m, self.n, self.n, "matrix") for mat in self.matrices),
        )

    def matrix(self, i: int):
        return self.matrices[i + self.radius]

    def to_json(self) -> dict:
        return {
            "kind": "lca",
            "m": self.m,
            "n": self.n,
            "radius": self.radius,
            "matrices": [[list(r) for r in mat] for mat in self.matrices],
        }

    @classmethod
    def from_json(cls, d: dict) -> "LcaRule":
        return cls(int(d["m"]), int(d["n"]), int(d["radius"]), d["matrices"])


@dataclass(frozen=True)
class PnuCaRule:
    """Periodic non-uniform CA: cell ``x`` uses ``rules[x mod period]``, indexed by offset + r."""

    m: int
    period: int
    radius: int
    rules: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.m < 2 or self.period < 1 or self.radius < 0:
            raise RuleError("need m >= 2, period >= 1, radius >= 0")
        object.__setattr__(
            self, "rules", _canon_table(self.rules, self.m, self.period, 2 * self.radius + 1, "rule")
        )

    def a(self, j: int, i: int) -> int:
        """Coefficient of position class ``j`` at offset ``i``; zero outside the radius."""
        if -self.radius <= i <= self.radius:
            return self.rules[j][i + self.radius]
        return 0

    def to_json(self) -> dict:
        return {
            "kind": "pnuca",
            "m": self.m,
            "period": self.period,
            "radius": self.radius,
            "rules": [list(r) for r in self.rules],
        }

    @classmethod
    def from_json(cls, d: dict) -> "PnuCaRule":
        return cls(int(d["m"]), int(d["period"]), int(d["radius"]), d["rules"])


def hoca_to_frobenius(h: HocaRule) -> FrobeniusSpec:
    m, r = h.m, h.radius
    row = tuple(
        LaurentPoly(m, [(-i, h.a(j + 1, i)) for i in range(-r, r + 1)]) for j in range(h.memory)
    )
    return FrobeniusSpec(m, row)


def frobenius_to_hoca(f: FrobeniusSpec, radius: int | None = None) -> HocaRule:
    """Inverse of :func:`hoca_to_frobenius`.

    Without ``radius`` the smallest radius covering every exponent is used.
    """
    need = max((abs(e) for p in f.row for e, _ in p.terms), default=0)
    r = need if radius is None else radius
    if r < need:
        raise RuleError(f"radius {r} too small for exponents up to {need}")
    coeffs = [[p.coeff(-i) for i in range(-r, r + 1)] for p in f.row]
    return HocaRule(f.m, f.n, r, coeffs)


def lca_to_fps(rule: LcaRule) -> LaurentMatrix:
    m, n, r = rule.m, rule.n, rule.radius
    rows = []
    for h in range(n):
        rows.append(
            [LaurentPoly(m, [(-i, rule.matrix(i)[h][k]) for i in range(-r, r + 1)]) for k in range(n)]
        )
    return LaurentMatrix(m, rows)


def fps_to_lca(a: LaurentMatrix, radius: int | None = None) -> LcaRule:
    need = max((abs(e) for row in a.rows for p in row for e, _ in p.terms), default=0)
    r = need if radius is None else radius
    if r < need:
        raise RuleError(f"radius {r} too small for exponents up to {need}")
    mats = [[[a[h, k].coeff(-i) for k in range(a.n)] for h in range(a.n)] for i in range(-r, r + 1)]
    return LcaRule(a.m, a.n, r, mats)


def frobenius_to_lca(f: FrobeniusSpec) -> LcaRule:
    return fps_to_lca(frobenius_to_matrix(f))


def lca_to_frobenius(rule: LcaRule) -> FrobeniusSpec:
    f = matrix_to_frobenius(lca_to_fps(rule))
    if f is None:
        raise ShapeError("the LCA's polynomial matrix is not in Frobenius normal form")
    return f


@dataclass(frozen=True)
class BlockConjugacy:
    """Cell ``x`` of the non-uniform CA becomes component ``x mod n`` of block ``x // n``."""

    block: int

    def to_json(self):
        return {"block": self.block, "map": "c[i*n + j] -> phi(c)[i][j]"}


def pnuca_to_lca(rule: PnuCaRule) -> tuple[LcaRule, BlockConjugacy]:
    n, r = rule.period, rule.radius
    s = -(-r // n)
    mats = []
    for ell in range(-s, s + 1):
        mats.append([[rule.a(j, ell * n + c - j) for c in range(n)] for j in range(n)])
    return LcaRule(rule.m, n, s, mats), BlockConjugacy(n)


def rule_from_json(d: dict):
    kind = d.get("kind")
    try:
        if kind == "hoca":
            return HocaRule.from_json(d)
        if kind == "lca":
            return LcaRule.from_json(d)
        if kind == "frobenius":
            return FrobeniusSpec.from_json(d)
        if kind == "pnuca":
            return PnuCaRule.from_json(d)
    except (KeyError, TypeError) as exc:
        raise RuleError(f"malformed {kind} rule: {exc}") from exc
    raise RuleError(f"unknown rule kind {kind!r}")


def rule_to_matrix(rule) -> LaurentMatrix:
    """Polynomial matrix of any rule kind (non-uniform rules go through their block LCA)."""
    if isinstance(rule, FrobeniusSpec):
        return frobenius_to_matrix(rule)
    if isinstance(rule, HocaRule):
        return frobenius_to_matrix(hoca_to_frobenius(rule))
    if isinstance(rule, LcaRule):
        return lca_to_fps(rule)
    if isinstance(rule, PnuCaRule):
        return lca_to_fps(pnuca_to_lca(rule)[0])
    raise TypeError(f"not a rule: {rule!r}")


def coeffs_1d(rule: LcaRule) -> list[int]:
    """Coefficients m_{-r} .. m_r of a rule over Z_m (n == 1)."""
    if rule.n != 1:
        raise RuleError("rule is not one-dimensional")
    return [mat[0][0] for mat in rule.matrices]


def lca_1d(m: int, coeffs: Sequence[int]) -> LcaRule:
    if len(coeffs) % 2 != 1:
        raise RuleError("need an odd number of coefficients")
    return LcaRule(m, 1, len(coeffs) // 2, [[[c]] for c in coeffs])
