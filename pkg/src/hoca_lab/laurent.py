"""Sparse Laurent polynomials over Z_m and the p-adic degree calculus on them.

A polynomial is stored as a sorted tuple of ``(exponent, coefficient)`` pairs
with every coefficient in ``[1, m)``. Zero coefficients are never stored, so
two polynomials are equal exactly when their term tuples are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .modring import InvalidModulus, is_probable_prime

# Exponents are kept inside signed 64-bit range so that serialized output is
# portable; Python ints would silently grow past it.
EXP_MAX = 2**63 - 1
EXP_MIN = -(2**63)


class ModulusMismatch(ValueError):
    pass


class InvalidPrime(ValueError):
    pass


def _check_exp(e: int) -> int:
    if e > EXP_MAX or e < EXP_MIN:
        raise OverflowError(f"exponent {e} outside signed 64-bit range")
    return e


class LaurentPoly:
    """An element of Z_m[X, X^-1]."""

    __slots__ = ("m", "terms", "_hash")

    def __init__(self, m: int, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if m < 2:
            raise InvalidModulus(f"modulus must be >= 2, got {m}")
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = _check_exp(int(e))
            acc[e] = (acc.get(e, 0) + int(c)) % m
        self.m = m
        self.terms: tuple[tuple[int, int], ...] = tuple(
            sorted((e, c) for e, c in acc.items() if c)
        )
        self._hash = None

    @classmethod
    def _raw(cls, m: int, terms: tuple[tuple[int, int], ...]) -> "LaurentPoly":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.m = m
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, m: int) -> "LaurentPoly":
        return cls(m)

    @classmethod
    def const(cls, m: int, c: int) -> "LaurentPoly":
        return cls(m, [(0, c)])

    @classmethod
    def monomial(cls, m: int, exp: int, coef: int = 1) -> "LaurentPoly":
        return cls(m, [(exp, coef)])

    @classmethod
    def from_json(cls, m: int, pairs) -> "LaurentPoly":
        return cls(m, [(int(e), int(c)) for e, c in pairs])

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self.terms]

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def coeff(self, exp: int) -> int:
        for e, c in self.terms:
            if e == exp:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def min_exp(self) -> int:
        return self.terms[0][0] if self.terms else 0

    def max_exp(self) -> int:
        return self.terms[-1][0] if self.terms else 0

    def evaluate_at_one(self) -> int:
        return sum(c for _, c in self.terms) % self.m

    def _same_ring(self, other: "LaurentPoly"):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.m != self.m:
            raise ModulusMismatch(f"moduli differ: {self.m} vs {other.m}")
        return True

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(self.m, other)
        if self._same_ring(other) is NotImplemented:
            return NotImplemented
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.m, tuple((e, self.m - c) for e, c in self.terms))

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(self.m, other)
        if self._same_ring(other) is NotImplemented:
            return NotImplemented
        return poly_add(self, -other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if self._same_ring(other) is NotImplemented:
            return NotImplemented
        return poly_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, t: int):
        if t < 0:
            raise ValueError("negative powers are not defined in general over Z_m")
        result = LaurentPoly.const(self.m, 1)
        base = self
        while t:
            if t & 1:
                result = result * base
            base = base * base
            t >>= 1
        return result

    def scale(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.m, [(e, c * k) for e, c in self.terms])

    def shift(self, d: int) -> "LaurentPoly":
        return LaurentPoly._raw(self.m, tuple((_check_exp(e + d), c) for e, c in self.terms))

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, self.terms))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentPoly({self.m}, {list(self.terms)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
            else:
                mono = "X" if e == 1 else f"X^{e}"
                parts.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(parts)


def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.m != b.m:
        raise ModulusMismatch(f"moduli differ: {a.m} vs {b.m}")
    acc = dict(a.terms)
    m = a.m
    for e, c in b.terms:
        acc[e] = (acc.get(e, 0) + c) % m
    return LaurentPoly._raw(m, tuple(sorted((e, c) for e, c in acc.items() if c)))


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.m != b.m:
        raise ModulusMismatch(f"moduli differ: {a.m} vs {b.m}")
    m = a.m
    if not a.terms or not b.terms:
        return LaurentPoly._raw(m, ())
    if len(a.terms) < len(b.terms):
        a, b = b, a
    acc: dict[int, int] = {}
    for eb, cb in b.terms:
        for ea, ca in a.terms:
            e = ea + eb
            acc[e] = acc.get(e, 0) + ca * cb
    out = []
    for e in sorted(acc):
        c = acc[e] % m
        if c:
            out.append((_check_exp(e), c))
    return LaurentPoly._raw(m, tuple(out))


@dataclass(frozen=True)
class DegreeReport:
    deg_plus: int
    deg_minus: int
    witness_plus: tuple[int, int] | None
    witness_minus: tuple[int, int] | None


def _check_prime(p: LaurentPoly, prime: int) -> None:
    if not is_probable_prime(prime) or p.m % prime:
        raise InvalidPrime(f"{prime} is not a prime divisor of {p.m}")


def degrees(p: LaurentPoly, prime: int) -> DegreeReport:
    """Positive and negative degree of ``p`` relative to ``prime``.

    Only monomials whose coefficient is not a multiple of ``prime`` count;
    when no such monomial has positive (negative) exponent the corresponding
    degree is 0 and no witness is reported.
    """
    _check_prime(p, prime)
    units = [(e, c) for e, c in p.terms if c % prime]
    pos = [t for t in units if t[0] > 0]
    neg = [t for t in units if t[0] < 0]
    wp = pos[-1] if pos else None
    wm = neg[0] if neg else None
    return DegreeReport(
        deg_plus=wp[0] if wp else 0,
        deg_minus=wm[0] if wm else 0,
        witness_plus=wp,
        witness_minus=wm,
    )


def is_sensitive(p: LaurentPoly, prime: int) -> bool:
    r = degrees(p, prime)
    return r.deg_plus > 0 or r.deg_minus < 0


def hat_bar(p: LaurentPoly, prime: int) -> tuple[LaurentPoly, LaurentPoly]:
    """Split ``p`` into (terms with unit coefficient, terms with p-multiple coefficient)."""
    _check_prime(p, prime)
    hat = tuple(t for t in p.terms if t[1] % prime)
    bar = tuple(t for t in p.terms if not t[1] % prime)
    return LaurentPoly._raw(p.m, hat), LaurentPoly._raw(p.m, bar)


def reduce_mod(p: LaurentPoly, q: int) -> LaurentPoly:
    if q < 2 or p.m % q:
        raise InvalidModulus(f"{q} does not divide the modulus {p.m}")
    return LaurentPoly(q, p.terms)
