"""Eigenvalue extraction and identity verification for eigenform expansions.

Eigenvalues come out three ways: directly from the coefficient relation
a(N) lambda(p^delta) = a(p^delta; N), from the closed form in a(pI) and
a(p^2 I) for forms normalized with a(I) = 1, and from the weight-only
closed form valid for eigenforms with nonzero constant term.  The verify_*
functions return structured reports whose pass flag is exact equality of
the two sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Optional, Sequence

from .fourier import SiegelExpansion
from .hecke import DEFAULT_MAX_DELTA, apply_hecke, hecke_coefficient
from .quadform import HalfIntegralForm

__all__ = [
    "Eigenvalue",
    "HWeights",
    "InconsistentEigenvalue",
    "NoNonzeroWitness",
    "NotNormalized",
    "VerificationReport",
    "eigenvalue_direct",
    "eigenvalue_from_weight",
    "eigenvalue_normalized",
    "hecke_eigen_weights",
    "reports_to_json",
    "verify_coefficient_relations",
    "verify_multiplicativity",
]

DEFAULT_WITNESSES = (
    HalfIntegralForm.zero(),
    HalfIntegralForm(1, 0, 0),
    HalfIntegralForm.identity(),
)


class Eigenvalue(NamedTuple):
    """Eigenvalue of the operator of index p^delta."""

    p: int
    delta: int
    value: Fraction

    @property
    def index(self) -> int:
        return self.p**self.delta

    @property
    def is_integral(self) -> bool:
        return self.value.denominator == 1


class HWeights(NamedTuple):
    """Correction weights for the normalized closed forms: (2, 2) when
    p ≡ 1 mod 4, (1, 0) when p = 2, (0, 0) when p ≡ 3 mod 4."""

    h1: int
    h2: int


def hecke_eigen_weights(p: int) -> HWeights:
    if p == 2:
        return HWeights(1, 0)
    if p % 4 == 1:
        return HWeights(2, 2)
    return HWeights(0, 0)


class NoNonzeroWitness(Exception):
    """Every witness index had coefficient zero."""


class InconsistentEigenvalue(Exception):
    """Two nonzero witnesses produced different ratios (not an eigenform,
    or corrupt data)."""

    def __init__(self, first: Fraction, second: Fraction):
        self.first = first
        self.second = second
        super().__init__(f"witnesses disagree: {first} != {second}")


class NotNormalized(Exception):
    """The expansion does not satisfy a(I) = 1."""


def eigenvalue_direct(
    expansion: SiegelExpansion,
    p: int,
    delta: int,
    witnesses: Optional[Sequence] = None,
    max_delta: int = DEFAULT_MAX_DELTA,
) -> Eigenvalue:
    """lambda(p^delta) as a(p^delta; N) / a(N) over the witness indices.

    Raises NoNonzeroWitness when no witness has a nonzero coefficient, and
    InconsistentEigenvalue when two witnesses disagree; consistency across
    witnesses is the eigenform property itself, so disagreement is never
    averaged away.
    """
    if witnesses is None:
        witnesses = DEFAULT_WITNESSES
    value = None
    for n in witnesses:
        a_n = expansion.coefficient(n)
        if a_n == 0:
            continue
        ratio = hecke_coefficient(expansion, (p, delta), n, max_delta=max_delta) / a_n
        if value is None:
            value = ratio
        elif ratio != value:
            raise InconsistentEigenvalue(value, ratio)
    if value is None:
        raise NoNonzeroWitness(f"all {len(witnesses)} witnesses have coefficient 0")
    return Eigenvalue(p, delta, value)


def eigenvalue_normalized(expansion: SiegelExpansion, p: int, order: int) -> Eigenvalue:
    """Closed form for eigenforms normalized with a(I) = 1:
    lambda(p) = a(pI) + h1 p^(k-2) and
    lambda(p^2) = a(p^2 I) + h1 p^(k-2) a(pI) + h2 p^(2k-4)."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    a_id = expansion.coefficient(HalfIntegralForm.identity())
    if a_id != 1:
        raise NotNormalized(f"a(I) = {a_id}, expected 1")
    k = expansion.weight
    h1, h2 = hecke_eigen_weights(p)
    a_p = expansion.coefficient(HalfIntegralForm.scalar(p))
    if order == 1:
        value = a_p + h1 * p ** (k - 2)
    else:
        a_p2 = expansion.coefficient(HalfIntegralForm.scalar(p * p))
        value = a_p2 + h1 * p ** (k - 2) * a_p + h2 * p ** (2 * k - 4)
    return Eigenvalue(p, order, Fraction(value))


def eigenvalue_from_weight(weight: int, p: int, order: int) -> Eigenvalue:
    """Closed form valid for any eigenform with nonzero constant term; the
    value depends only on the weight and p."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    k = weight
    if order == 1:
        value = 1 + p ** (k - 1) + p ** (k - 2) + p ** (2 * k - 3)
    else:
        value = (
            1
            + p ** (k - 2) * (p + 1)
            + p ** (2 * k - 4) * (p * p + 2 * p)
            + p ** (3 * k - 5) * (p + 1)
            + p ** (4 * k - 6)
        )
    return Eigenvalue(p, order, Fraction(value))


@dataclass
class VerificationReport:
    """One checked identity instance; passed is exact equality of the sides."""

    identity: str
    params: dict
    lhs: Fraction
    rhs: Fraction
    passed: bool

    @classmethod
    def check(cls, identity: str, params: dict, lhs, rhs) -> "VerificationReport":
        lhs, rhs = Fraction(lhs), Fraction(rhs)
        return cls(identity, params, lhs, rhs, lhs == rhs)

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "params": self.params,
            "lhs": _fraction_string(self.lhs),
            "rhs": _fraction_string(self.rhs),
            "pass": self.passed,
        }


def _fraction_string(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def reports_to_json(reports: Sequence[VerificationReport]) -> list[dict]:
    return [report.to_json() for report in reports]


def verify_coefficient_relations(
    expansion: SiegelExpansion,
    *,
    scalar_multiples: Sequence[int] = (),
    coprime_pairs: Sequence[tuple[int, int]] = (),
    recurrences: Sequence[tuple[int, int]] = (),
    label: str = "form",
) -> list[VerificationReport]:
    """Check the multiplicative relations among coefficients at multiples of
    the identity matrix.

    scalar_multiples m: if a(I) = 0 then a(mI) = 0 (vacuous when a(I) != 0).
    coprime_pairs (m, n): a(I) a(mnI) = a(mI) a(nI).
    recurrences (p, r): the prime-power recurrence expressing a(p^(r+1) I)
    through lower indices, including the off-diagonal correction block.
    """
    reports = []
    a_id = expansion.coefficient(HalfIntegralForm.identity())
    for m in scalar_multiples:
        if a_id == 0:
            lhs = expansion.coefficient(HalfIntegralForm.scalar(m))
            params = {"form": label, "m": m, "vacuous": False}
        else:
            lhs = Fraction(0)
            params = {"form": label, "m": m, "vacuous": True}
        reports.append(
            VerificationReport.check("scalar-vanishing", params, lhs, Fraction(0))
        )
    for m, n in coprime_pairs:
        if gcd(m, n) != 1:
            raise ValueError(f"({m}, {n}) is not coprime")
        lhs = a_id * expansion.coefficient(HalfIntegralForm.scalar(m * n))
        rhs = expansion.coefficient(
            HalfIntegralForm.scalar(m)
        ) * expansion.coefficient(HalfIntegralForm.scalar(n))
        reports.append(
            VerificationReport.check(
                "coprime-multiplicativity", {"form": label, "m": m, "n": n}, lhs, rhs
            )
        )
    k = expansion.weight
    for p, r in recurrences:
        lhs = a_id * expansion.coefficient(HalfIntegralForm.scalar(p ** (r + 1)))
        correction = 2 * expansion.coefficient(
            HalfIntegralForm(p ** (r - 1), 0, p ** (r + 1))
        )
        u_sum = Fraction(0)
        # vacuous for p = 2: the range below is empty
        for u in range(1, (p - 1) // 2 + 1):
            if (u * u + 1) % p == 0:
                continue
            u_sum += expansion.coefficient(
                (p ** (r - 1) * (1 + u * u), 2 * p**r * u, p ** (r + 1))
            )
        correction += (1 + (-1) ** k) * u_sum
        rhs = (
            expansion.coefficient(HalfIntegralForm.scalar(p))
            * expansion.coefficient(HalfIntegralForm.scalar(p**r))
            - p ** (2 * k - 3) * a_id * expansion.coefficient(HalfIntegralForm.scalar(p ** (r - 1)))
            - p ** (k - 2) * a_id * correction
        )
        reports.append(
            VerificationReport.check(
                "prime-power-recurrence", {"form": label, "p": p, "r": r}, lhs, rhs
            )
        )
    return reports


def verify_multiplicativity(
    expansion: SiegelExpansion,
    pairs: Sequence[tuple[tuple[int, int], tuple[int, int]]],
    label: str = "form",
    max_delta: int = DEFAULT_MAX_DELTA,
) -> list[VerificationReport]:
    """Check lambda(p^a) lambda(q^b) against the eigenvalue extracted from
    the composed operator application, for coprime prime powers."""
    reports = []
    for (p, a), (q, b) in pairs:
        if p == q:
            raise ValueError("prime powers must be coprime")
        lam1 = eigenvalue_direct(expansion, p, a, max_delta=max_delta).value
        lam2 = eigenvalue_direct(expansion, q, b, max_delta=max_delta).value
        composed = apply_hecke(
            apply_hecke(expansion, (p, a), max_delta=max_delta),
            (q, b),
            max_delta=max_delta,
        )
        ratio = None
        for n in composed.classes():
            a_n = expansion.coefficient(n)
            if a_n == 0:
                continue
            candidate = composed.coefficient(n) / a_n
            if ratio is None:
                ratio = candidate
            elif candidate != ratio:
                ratio = candidate
                break
        if ratio is None:
            raise NoNonzeroWitness("composed truncation has no nonzero coefficient")
        params = {"form": label, "m": f"{p}^{a}", "n": f"{q}^{b}"}
        reports.append(
            VerificationReport.check("eigenvalue-multiplicativity", params, lam1 * lam2, ratio)
        )
    return reports
