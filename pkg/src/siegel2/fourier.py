"""Truncated Fourier expansions of degree 2 Siegel modular forms.

An expansion stores exact rational coefficients on the canonical reduced
classes of trace at most max_trace; looking up an arbitrary index first
reduces it and applies the determinant sign of the reduction, raised to the
weight.  Coefficients are evaluated lazily and memoized per class, so a
product expansion only ever pays for the classes that are actually read.
Expansions are immutable once built (the memo is an internal append-only
cache of pure values).
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import isqrt
from typing import Callable, Iterable, Optional

from .arith import cohen_class_number, divisors, zeta_at_one_minus
from .quadform import (
    HalfIntegralForm,
    _reduce_triple,
    enumerate_reduced,
    is_reduced,
)

__all__ = [
    "ExpansionFileError",
    "FORMAT_VERSION",
    "SiegelExpansion",
    "TruncationExceeded",
    "cusp_form_10",
    "cusp_form_12",
    "eisenstein",
    "read_expansion",
    "write_expansion",
]

FORMAT_VERSION = 1


class TruncationExceeded(Exception):
    """A coefficient was demanded outside the stored truncation."""

    def __init__(self, missing: Iterable[tuple], max_trace: int):
        self.missing = sorted(HalfIntegralForm(*m) for m in set(missing))
        self.max_trace = max_trace
        self.required_trace = max(
            _reduce_triple(*m)[0][0] + _reduce_triple(*m)[0][2] for m in self.missing
        )
        preview = ", ".join(str(tuple(m)) for m in self.missing[:8])
        if len(self.missing) > 8:
            preview += ", ..."
        super().__init__(
            f"required trace {self.required_trace} exceeds truncation "
            f"{max_trace}; missing indices: {preview}"
        )


class ExpansionFileError(ValueError):
    """An expansion file is malformed or violates the format contract."""


class SiegelExpansion:
    """Weight, truncation bound, and a map from canonical classes to values.

    ``rule`` computes the coefficient of a canonical class on demand; a
    materialized expansion (rule None) must carry every class up front.
    """

    __slots__ = ("weight", "max_trace", "_memo", "_rule")

    def __init__(
        self,
        weight: int,
        max_trace: int,
        rule: Optional[Callable[[tuple[int, int, int]], Fraction]] = None,
        coeffs: Optional[dict] = None,
    ):
        if weight < 1:
            raise ValueError("weight must be a positive integer")
        if max_trace < 0:
            raise ValueError("max_trace must be >= 0")
        self.weight = weight
        self.max_trace = max_trace
        self._memo: dict[tuple[int, int, int], Fraction] = {}
        if coeffs:
            for key, value in coeffs.items():
                self._memo[tuple(key)] = Fraction(value)
        self._rule = rule

    @classmethod
    def zero(cls, weight: int, max_trace: int) -> "SiegelExpansion":
        return cls(weight, max_trace, rule=lambda canon: Fraction(0))

    def __repr__(self) -> str:
        return f"SiegelExpansion(weight={self.weight}, max_trace={self.max_trace})"

    def coefficient(self, n) -> Fraction:
        """The coefficient at any index in the stored range, via reduction."""
        canon, sign = _reduce_triple(*n)
        if canon[0] + canon[2] > self.max_trace:
            raise TruncationExceeded([tuple(n)], self.max_trace)
        value = self._memo.get(canon)
        if value is None:
            if self._rule is None:
                raise TruncationExceeded([tuple(n)], self.max_trace)
            value = self._rule(canon)
            self._memo[canon] = value
        if sign < 0 and self.weight % 2:
            return -value
        return value

    def classes(self) -> list[HalfIntegralForm]:
        """Canonical classes within the truncation, in storage order."""
        return enumerate_reduced(self.max_trace)

    def items(self) -> list[tuple[HalfIntegralForm, Fraction]]:
        """(class, coefficient) pairs for every stored class, materialized."""
        return [(n, self.coefficient(n)) for n in self.classes()]

    # vector space and ring structure

    def add(self, other: "SiegelExpansion") -> "SiegelExpansion":
        if self.weight != other.weight:
            raise ValueError(
                f"weight mismatch: {self.weight} != {other.weight}"
            )
        trunc = min(self.max_trace, other.max_trace)
        return SiegelExpansion(
            self.weight,
            trunc,
            rule=lambda canon: self.coefficient(canon) + other.coefficient(canon),
        )

    def scale(self, c) -> "SiegelExpansion":
        c = Fraction(c)
        return SiegelExpansion(
            self.weight, self.max_trace, rule=lambda canon: c * self.coefficient(canon)
        )

    def multiply(self, other: "SiegelExpansion") -> "SiegelExpansion":
        """Graded product; the coefficient at N convolves over all splittings
        N = N1 + N2 with both parts positive semi-definite."""
        trunc = min(self.max_trace, other.max_trace)

        def rule(canon: tuple[int, int, int]) -> Fraction:
            r, b, s = canon
            buckets: dict[int, int] = {}
            for r1 in range(r + 1):
                r2 = r - r1
                for s1 in range(s + 1):
                    s2 = s - s1
                    m = isqrt(4 * r1 * s1)
                    for b1 in range(-m, m + 1):
                        b2 = b - b1
                        if b2 * b2 > 4 * r2 * s2:
                            continue
                        v1 = self.coefficient((r1, b1, s1))
                        v2 = other.coefficient((r2, b2, s2))
                        den = v1.denominator * v2.denominator
                        buckets[den] = buckets.get(den, 0) + v1.numerator * v2.numerator
            return sum((Fraction(n, d) for d, n in buckets.items()), Fraction(0))

        return SiegelExpansion(self.weight + other.weight, trunc, rule=rule)

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.add(other.scale(-1))

    def __mul__(self, other):
        if isinstance(other, SiegelExpansion):
            return self.multiply(other)
        return self.scale(other)

    __rmul__ = __mul__

    def agrees_with(self, other: "SiegelExpansion", up_to: Optional[int] = None) -> bool:
        """Coefficientwise equality on the common truncation."""
        trunc = min(self.max_trace, other.max_trace)
        if up_to is not None:
            trunc = min(trunc, up_to)
        return all(
            self.coefficient(n) == other.coefficient(n) for n in enumerate_reduced(trunc)
        )


def eisenstein(weight: int, max_trace: int) -> SiegelExpansion:
    """The weight-k Siegel Eisenstein series for even k >= 4.

    The coefficient at (r, b, s) is
    2 / (zeta(1-k) zeta(3-2k)) * sum_{d | gcd(r,b,s)} d^(k-1) H(k-1, (4rs-b^2)/d^2),
    with the constant term set to 1.
    """
    if weight % 2 or weight < 4:
        raise ValueError("weight must be even and >= 4")
    prefactor = 2 / (zeta_at_one_minus(weight) * zeta_at_one_minus(2 * weight - 2))

    def rule(canon: tuple[int, int, int]) -> Fraction:
        r, b, s = canon
        if r == 0 and s == 0:
            return Fraction(1)
        content = HalfIntegralForm(r, b, s).content()
        det4 = 4 * r * s - b * b
        acc = sum(
            (
                d ** (weight - 1) * cohen_class_number(weight - 1, det4 // (d * d))
                for d in divisors(content)
            ),
            Fraction(0),
        )
        return prefactor * acc

    return SiegelExpansion(weight, max_trace, rule=rule)


def _check_cuspidal(candidate: SiegelExpansion, what: str) -> None:
    for e in range(candidate.max_trace + 1):
        value = candidate.coefficient((e, 0, 0))
        if value != 0:
            raise ValueError(
                f"{what} is not cuspidal at truncation: a(({e},0,0)) = {value}"
            )


def _normalize_at_identity(candidate: SiegelExpansion, what: str) -> SiegelExpansion:
    a_id = candidate.coefficient(HalfIntegralForm.identity())
    if a_id == 0:
        raise ValueError(f"{what}: coefficient at the identity vanishes")
    return candidate.scale(Fraction(1) / a_id)


def cusp_form_10(max_trace: int) -> SiegelExpansion:
    """The weight-10 cusp eigenform, scaled so the identity coefficient is 1.

    Built as the product of the weight 4 and 6 Eisenstein series minus the
    weight 10 one; cuspidality on rank <= 1 classes is verified up to the
    truncation before normalizing.
    """
    if max_trace < 2:
        raise ValueError("max_trace must be >= 2")
    candidate = eisenstein(4, max_trace) * eisenstein(6, max_trace) - eisenstein(
        10, max_trace
    )
    _check_cuspidal(candidate, "weight-10 candidate")
    return _normalize_at_identity(candidate, "weight-10 candidate")


def cusp_form_12(max_trace: int) -> SiegelExpansion:
    """The weight-12 cusp eigenform, scaled so the identity coefficient is 1.

    Solves for the combination of E4^3, E6^2 and E12 whose coefficients at
    (0,0,0) and (1,0,0) vanish; raises if that linear system is degenerate
    or if the result fails cuspidality at the truncation.
    """
    if max_trace < 2:
        raise ValueError("max_trace must be >= 2")
    e4 = eisenstein(4, max_trace)
    basis = [
        e4 * e4 * e4,
        eisenstein(6, max_trace) * eisenstein(6, max_trace),
        eisenstein(12, max_trace),
    ]
    row0 = [f.coefficient((0, 0, 0)) for f in basis]
    row1 = [f.coefficient((1, 0, 0)) for f in basis]
    # kernel of the 2x3 system, spanned by the cross product of the rows
    c = (
        row0[1] * row1[2] - row0[2] * row1[1],
        row0[2] * row1[0] - row0[0] * row1[2],
        row0[0] * row1[1] - row0[1] * row1[0],
    )
    if not any(c):
        raise ValueError("weight-12 system is degenerate (solution space dimension != 1)")
    candidate = basis[0].scale(c[0]) + basis[1].scale(c[1]) + basis[2].scale(c[2])
    _check_cuspidal(candidate, "weight-12 candidate")
    return _normalize_at_identity(candidate, "weight-12 candidate")


def _fraction_string(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _parse_fraction(text: str) -> Fraction:
    parts = str(text).split("/")
    if len(parts) == 1:
        num, den = parts[0], "1"
    elif len(parts) == 2:
        num, den = parts
    else:
        raise ExpansionFileError(f"bad fraction {text!r}")
    try:
        numerator, denominator = int(num), int(den)
    except ValueError:
        raise ExpansionFileError(f"bad fraction {text!r}") from None
    if denominator <= 0:
        raise ExpansionFileError(f"bad fraction {text!r}: denominator must be positive")
    return Fraction(numerator, denominator)


def write_expansion(path, expansion: SiegelExpansion) -> None:
    """Serialize every stored class to JSON; exact round-trip with read."""
    payload = {
        "format_version": FORMAT_VERSION,
        "weight": expansion.weight,
        "max_trace": expansion.max_trace,
        "coeffs": [
            {"r": n.r, "b": n.b, "s": n.s, "a": _fraction_string(value)}
            for n, value in expansion.items()
        ],
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, separators=(",", ":"))
        handle.write("\n")


def read_expansion(path) -> SiegelExpansion:
    """Load an expansion written by write_expansion, validating the format."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except json.JSONDecodeError as err:
        raise ExpansionFileError(f"not valid JSON: {err}") from None
    if not isinstance(payload, dict):
        raise ExpansionFileError("top-level value must be an object")
    if payload.get("format_version") != FORMAT_VERSION:
        raise ExpansionFileError(
            f"unsupported format_version {payload.get('format_version')!r}"
        )
    weight = payload.get("weight")
    max_trace = payload.get("max_trace")
    if not isinstance(weight, int) or weight < 1:
        raise ExpansionFileError(f"bad weight {weight!r}")
    if not isinstance(max_trace, int) or max_trace < 0:
        raise ExpansionFileError(f"bad max_trace {max_trace!r}")
    rows = payload.get("coeffs")
    if not isinstance(rows, list):
        raise ExpansionFileError("coeffs must be a list")
    coeffs: dict[tuple[int, int, int], Fraction] = {}
    for row in rows:
        if not isinstance(row, dict) or not {"r", "b", "s", "a"} <= set(row):
            raise ExpansionFileError(f"bad coefficient record {row!r}")
        key = (row["r"], row["b"], row["s"])
        if not all(isinstance(x, int) for x in key):
            raise ExpansionFileError(f"bad index {key!r}")
        if not is_reduced(key):
            raise ExpansionFileError(f"non-canonical key {key!r}")
        if key[0] + key[2] > max_trace:
            raise ExpansionFileError(f"key {key!r} exceeds max_trace {max_trace}")
        if key in coeffs:
            raise ExpansionFileError(f"duplicate key {key!r}")
        coeffs[key] = _parse_fraction(row["a"])
    expected = [tuple(n) for n in enumerate_reduced(max_trace)]
    if sorted(coeffs) != sorted(expected):
        missing = sorted(set(expected) - set(coeffs))
        raise ExpansionFileError(f"incomplete class list; first missing: {missing[:3]}")
    return SiegelExpansion(weight, max_trace, coeffs=coeffs)
