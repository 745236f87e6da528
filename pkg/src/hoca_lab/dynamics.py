"""Finite-support configurations and the global maps acting on them."""

from __future__ import annotations

import csv
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .laurent import LaurentPoly, ModulusMismatch
from .lmatrix import LaurentMatrix, ShapeError, mat_pow
from .models import HocaRule, LcaRule, PnuCaRule


class Configuration:
    """Map from cell index to a state vector in Z_m^n; absent cells hold the zero vector."""

    __slots__ = ("m", "n", "cells")

    def __init__(self, m: int, n: int, cells: Mapping[int, Sequence[int]] | None = None):
        if m < 2 or n < 1:
            raise ValueError("need m >= 2 and n >= 1")
        self.m, self.n = m, n
        clean = {}
        for i, vec in (cells or {}).items():
            if len(vec) != n:
                raise ShapeError(f"cell {i} holds a vector of length {len(vec)}, expected {n}")
            v = tuple(int(x) % m for x in vec)
            if any(v):
                clean[int(i)] = v
        self.cells: dict[int, tuple[int, ...]] = dict(sorted(clean.items()))

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.cells.get(i, (0,) * self.n)

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return (self.m, self.n, self.cells) == (other.m, other.n, other.cells)

    def __add__(self, other: "Configuration") -> "Configuration":
        _check(self, other)
        keys = self.cells.keys() | other.cells.keys()
        return Configuration(
            self.m, self.n, {i: [a + b for a, b in zip(self[i], other[i])] for i in keys}
        )

    def __repr__(self):
        return f"Configuration(m={self.m}, n={self.n}, cells={self.cells})"

    def support(self) -> tuple[int, int] | None:
        if not self.cells:
            return None
        keys = list(self.cells)
        return keys[0], keys[-1]

    def component(self, j: int) -> dict[int, int]:
        return {i: v[j] for i, v in self.cells.items() if v[j]}

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "cells": {str(i): list(v) for i, v in self.cells.items()}}

    @classmethod
    def from_json(cls, d: dict) -> "Configuration":
        return cls(int(d["m"]), int(d["n"]), {int(k): v for k, v in d["cells"].items()})


def _check(a: Configuration, b: Configuration) -> None:
    if a.m != b.m:
        raise ModulusMismatch(f"moduli differ: {a.m} vs {b.m}")
    if a.n != b.n:
        raise ShapeError(f"dimensions differ: {a.n} vs {b.n}")


def config_to_fps(c: Configuration) -> list[LaurentPoly]:
    return [LaurentPoly(c.m, [(i, v[j]) for i, v in c.cells.items()]) for j in range(c.n)]


def fps_to_config(vec: Sequence[LaurentPoly], m: int) -> Configuration:
    n = len(vec)
    cells: dict[int, list[int]] = {}
    for j, p in enumerate(vec):
        for e, coef in p.terms:
            cells.setdefault(e, [0] * n)[j] = coef
    return Configuration(m, n, cells)


def _check_rule(M: LaurentMatrix, c: Configuration) -> None:
    if M.m != c.m:
        raise ModulusMismatch(f"rule over Z_{M.m}, configuration over Z_{c.m}")
    if M.n != c.n:
        raise ShapeError(f"rule of dimension {M.n}, configuration of dimension {c.n}")


def step(M: LaurentMatrix, c: Configuration) -> Configuration:
    _check_rule(M, c)
    return fps_to_config(M.apply(config_to_fps(c)), c.m)


def iterate(M: LaurentMatrix, c: Configuration, t: int) -> Configuration:
    if t < 0:
        raise ValueError("t must be >= 0")
    for _ in range(t):
        c = step(M, c)
    return c


def iterate_by_power(M: LaurentMatrix, c: Configuration, t: int) -> Configuration:
    """Single multiplication by ``M^t``; must agree with :func:`iterate`."""
    _check_rule(M, c)
    return fps_to_config(mat_pow(M, t).apply(config_to_fps(c)), c.m)


def trajectory(M: LaurentMatrix, c: Configuration, t: int) -> list[Configuration]:
    out = [c]
    for _ in range(t):
        out.append(step(M, out[-1]))
    return out


# Direct local-rule evaluation, kept apart from the polynomial path on purpose.


def lca_step(rule: LcaRule, c: Configuration) -> Configuration:
    if rule.m != c.m or rule.n != c.n:
        raise ShapeError("rule and configuration do not match")
    r, n, m = rule.radius, rule.n, rule.m
    touched = {x - i for x in c.cells for i in range(-r, r + 1)}
    out = {}
    for x in touched:
        acc = [0] * n
        for i in range(-r, r + 1):
            v = c.cells.get(x + i)
            if v is None:
                continue
            mat = rule.matrix(i)
            for h in range(n):
                acc[h] += sum(mat[h][k] * v[k] for k in range(n))
        out[x] = [a % m for a in acc]
    return Configuration(m, n, out)


def hoca_step(h: HocaRule, stack: Sequence[Configuration]) -> list[Configuration]:
    """Global rule of a linear HOCA: shift the stack up, compute a new last layer."""
    if len(stack) != h.memory:
        raise ShapeError(f"stack of {len(stack)} configurations for memory {h.memory}")
    for e in stack:
        if e.m != h.m or e.n != 1:
            raise ShapeError("stack entries must be one-component configurations over Z_m")
    r = h.radius
    touched = {x - i for e in stack for x in e.cells for i in range(-r, r + 1)}
    new = {}
    for x in touched:
        acc = 0
        for j, e in enumerate(stack, start=1):
            for i in range(-r, r + 1):
                v = e.cells.get(x + i)
                if v is not None:
                    acc += h.a(j, i) * v[0]
        new[x] = [acc]
    return list(stack[1:]) + [Configuration(h.m, 1, new)]


def stack_to_config(stack: Sequence[Configuration]) -> Configuration:
    """Identify (e^1, ..., e^k) with the configuration whose cell i is (e^1_i, ..., e^k_i)."""
    m, k = stack[0].m, len(stack)
    cells: dict[int, list[int]] = {}
    for j, e in enumerate(stack):
        for i, v in e.cells.items():
            cells.setdefault(i, [0] * k)[j] = v[0]
    return Configuration(m, k, cells)


def config_to_stack(c: Configuration) -> list[Configuration]:
    return [Configuration(c.m, 1, {i: [v] for i, v in c.component(j).items()}) for j in range(c.n)]


def pnuca_step(rule: PnuCaRule, c: Configuration) -> Configuration:
    if c.n != 1 or c.m != rule.m:
        raise ShapeError("non-uniform CA acts on one-component configurations over Z_m")
    r, p = rule.radius, rule.period
    touched = {x - i for x in c.cells for i in range(-r, r + 1)}
    out = {}
    for x in touched:
        j = x % p
        out[x] = [sum(rule.a(j, i) * c[x + i][0] for i in range(-r, r + 1))]
    return Configuration(rule.m, 1, out)


def block_config(c: Configuration, block: int) -> Configuration:
    """phi: cell x = i*block + j goes to component j of cell i."""
    cells: dict[int, list[int]] = {}
    for x, v in c.cells.items():
        i, j = divmod(x, block)
        cells.setdefault(i, [0] * block)[j] = v[0]
    return Configuration(c.m, block, cells)


def unblock_config(c: Configuration) -> Configuration:
    cells = {}
    for i, v in c.cells.items():
        for j, s in enumerate(v):
            if s:
                cells[i * c.n + j] = [s]
    return Configuration(c.m, 1, cells)


def cantor_distance(a: Configuration, b: Configuration) -> tuple[int, int]:
    """Distance as ``(numerator, exponent)``: (0, 0) when equal, else (1, k) meaning 2^-k,
    where k is the smallest radius at which the two configurations disagree."""
    _check(a, b)
    diffs = [i for i in a.cells.keys() | b.cells.keys() if a[i] != b[i]]
    if not diffs:
        return (0, 0)
    return (1, min(abs(i) for i in diffs))


def distance_value(d: tuple[int, int]) -> Fraction:
    num, k = d
    return Fraction(num, 2**k)


def trace_grid(M: LaurentMatrix, c: Configuration, steps: int, lo: int, hi: int) -> list[list[tuple[int, ...]]]:
    if lo > hi:
        raise ValueError("window must have lo <= hi")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    return [[cfg[x] for x in range(lo, hi + 1)] for cfg in trajectory(M, c, steps)]


def grid_from_trajectory(traj: Sequence[Configuration], lo: int, hi: int) -> list[list[tuple[int, ...]]]:
    return [[cfg[x] for x in range(lo, hi + 1)] for cfg in traj]


def write_grid(grid, m: int, n: int, lo: int, hi: int, fmt: str, out: str | Path) -> list[Path]:
    """One file per vector component; with n == 1 the given path is used as is."""
    out = Path(out)
    if n == 1:
        paths = [out]
    else:
        paths = [out.with_name(f"{out.stem}_c{j}{out.suffix}") for j in range(n)]
    for j, path in enumerate(paths):
        plane = [[cell[j] for cell in row] for row in grid]
        if fmt == "pgm":
            header = f"P5\n{hi - lo + 1} {len(plane)}\n255\n".encode("ascii")
            body = bytes(v * 255 // (m - 1) for row in plane for v in row)
            path.write_bytes(header + body)
        elif fmt == "csv":
            with path.open("w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(list(range(lo, hi + 1)))
                w.writerows(plane)
        else:
            raise ValueError(f"unknown trace format {fmt!r}")
    return paths


def export_trace(M: LaurentMatrix, c: Configuration, steps: int, lo: int, hi: int, fmt: str, out) -> list[Path]:
    return write_grid(trace_grid(M, c, steps, lo, hi), c.m, c.n, lo, hi, fmt, out)
