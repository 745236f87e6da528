"""Residues modulo m and prime-power factorization of the alphabet size."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt


class InvalidModulus(ValueError):
    pass


@dataclass(frozen=True)
class Modulus:
    m: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.m < 2:
            raise InvalidModulus(f"modulus must be >= 2, got {self.m}")
        prod = 1
        last = 1
        for p, k in self.factors:
            if p <= last or k < 1 or not is_probable_prime(p):
                raise InvalidModulus(f"bad factor list {self.factors!r}")
            prod *= p**k
            last = p
        if prod != self.m:
            raise InvalidModulus(f"factors {self.factors!r} do not multiply to {self.m}")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def prime_powers(self) -> list[int]:
        return [p**k for p, k in self.factors]


def factorize(m: int) -> Modulus:
    """Factor m by trial division; m is an alphabet size, so this is cheap."""
    if not isinstance(m, int) or m < 2:
        raise InvalidModulus(f"modulus must be an integer >= 2, got {m!r}")
    factors = []
    rest = m
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            k = 0
            while rest % d == 0:
                rest //= d
                k += 1
            factors.append((d, k))
        d += 1 if d == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return Modulus(m, tuple(factors))


def mod_reduce(x: int, m: int) -> int:
    if m < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {m}")
    return x % m


def prime_power(m: int) -> tuple[int, int] | None:
    """Return (p, k) when m == p**k, else None."""
    f = factorize(m).factors
    return f[0] if len(f) == 1 else None


# Deterministic Miller-Rabin witnesses, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with a fixed base set. Independent of the trial-division path."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))
