"""Decision procedures for sensitivity / equicontinuity and injectivity / surjectivity."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .laurent import LaurentPoly, degrees, is_sensitive
from .lmatrix import FrobeniusSpec, LaurentMatrix, determinant, matrix_to_frobenius
from .modring import factorize, is_probable_prime
from .models import LcaRule, coeffs_1d, lca_to_fps

DECIDED = "decided"
UNDECIDED_NON_FROBENIUS = "undecided-non-frobenius"


class NotPrimePower(ValueError):
    pass


@dataclass(frozen=True)
class Witness:
    i: int
    monomial: tuple[int, int]  # (exponent, coefficient)
    side: str  # "deg+" or "deg-"

    def to_json(self):
        return {"i": self.i, "monomial": list(self.monomial), "side": self.side}


@dataclass(frozen=True)
class FactorVerdict:
    p: int
    k: int
    sensitive: bool
    witness: Witness | None = None

    def to_json(self):
        d = {"p": self.p, "k": self.k, "sensitive": self.sensitive}
        if self.witness is not None:
            d["witness"] = self.witness.to_json()
        return d


@dataclass(frozen=True)
class SensitivityVerdict:
    sensitive: bool
    factors: tuple[FactorVerdict, ...]
    status: str = DECIDED

    @property
    def equicontinuous(self) -> bool:
        return not self.sensitive

    def to_json(self):
        return {
            "status": self.status,
            "sensitive": self.sensitive,
            "equicontinuous": self.equicontinuous,
            "factors": [f.to_json() for f in self.factors],
        }


@dataclass(frozen=True)
class InjSurjVerdict:
    injective: bool
    surjective: bool
    det: LaurentPoly
    unit_counts: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        # an injective CA is surjective; a violation means the criterion was misapplied
        assert self.surjective or not self.injective, "injective but not surjective"

    def to_json(self):
        return {
            "injective": self.injective,
            "surjective": self.surjective,
            "det": self.det.to_json(),
            "evidence": [{"p": p, "units": c} for p, c in sorted(self.unit_counts.items())],
        }


def decide_sensitivity_pk(f: FrobeniusSpec, p: int, k: int) -> FactorVerdict:
    """Companion matrix over Z_{p^k}: sensitive iff some bottom-row entry is a
    sensitive polynomial. Reports the lowest such index, deg+ side first."""
    if not is_probable_prime(p) or k < 1 or f.m != p**k:
        raise NotPrimePower(f"modulus {f.m} is not {p}^{k} with {p} prime")
    for i, poly in enumerate(f.row):
        if not is_sensitive(poly, p):
            continue
        rep = degrees(poly, p)
        if rep.witness_plus is not None:
            w = Witness(i, rep.witness_plus, "deg+")
        else:
            w = Witness(i, rep.witness_minus, "deg-")
        return FactorVerdict(p, k, True, w)
    return FactorVerdict(p, k, False)


def decide_sensitivity(f: FrobeniusSpec) -> SensitivityVerdict:
    factors = tuple(
        decide_sensitivity_pk(f.reduce(p**k), p, k) for p, k in factorize(f.m).factors
    )
    return SensitivityVerdict(any(fv.sensitive for fv in factors), factors)


def decide_1d(m: int, coeffs: Sequence[int]) -> SensitivityVerdict:
    """Classical n = 1 criterion on coefficients m_{-r}..m_r: sensitive iff some
    prime divisor of m fails to divide the gcd of the non-central coefficients."""
    if len(coeffs) % 2 != 1:
        raise ValueError("need coefficients for offsets -r..r")
    r = len(coeffs) // 2
    g = 0
    for idx, c in enumerate(coeffs):
        if idx != r:
            g = gcd(g, c % m)
    factors = tuple(FactorVerdict(p, k, g % p != 0) for p, k in factorize(m).factors)
    return SensitivityVerdict(any(fv.sensitive for fv in factors), factors)


def decide_matrix_sensitivity(a: LaurentMatrix) -> SensitivityVerdict:
    """Sensitivity for an arbitrary polynomial matrix, when this library can decide it."""
    f = matrix_to_frobenius(a)
    if f is None:
        return SensitivityVerdict(False, (), status=UNDECIDED_NON_FROBENIUS)
    return decide_sensitivity(f)


def decide_lca_sensitivity(rule: LcaRule) -> SensitivityVerdict:
    if rule.n == 1:
        return decide_1d(rule.m, coeffs_1d(rule))
    return decide_matrix_sensitivity(lca_to_fps(rule))


def inj_surj_from_matrix(a: LaurentMatrix) -> InjSurjVerdict:
    det = determinant(a)
    counts = {p: sum(1 for _, c in det.terms if c % p) for p in factorize(a.m).primes}
    return InjSurjVerdict(
        injective=all(c == 1 for c in counts.values()),
        surjective=all(c >= 1 for c in counts.values()),
        det=det,
        unit_counts=counts,
    )


def decide_inj_surj(rule: LcaRule) -> InjSurjVerdict:
    """Determinant criterion: the rule is injective (surjective) iff the 1D LCA
    whose polynomial is det M(X) is. For a 1D LCA over Z_m that means: surjective
    iff no prime divisor of m divides every coefficient, injective iff for every
    prime divisor exactly one coefficient is a unit mod p."""
    return inj_surj_from_matrix(lca_to_fps(rule))
