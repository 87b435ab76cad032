"""Hecke operators acting on expansion coefficients.

The general evaluation sums over triples (alpha, beta, gamma) summing to
delta and over a coset set R(p^beta) of determinant-1 matrices whose first
rows represent the projective classes of coprime pairs mod p^beta, with
weight p^((k-2)beta + (2k-3)gamma) and divisibility conditions selecting
which transformed indices contribute.  The specialized fast paths evaluate
the same quantity through reduced closed forms and must agree bit for bit.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator, Mapping, NamedTuple, Optional

from .arith import is_prime
from .fourier import SiegelExpansion, TruncationExceeded
from .quadform import HalfIntegralForm, UnimodularMatrix, _reduce_triple, enumerate_reduced, transform

__all__ = [
    "CosetSet",
    "DEFAULT_MAX_DELTA",
    "HeckeIndex",
    "apply_hecke",
    "coset_set",
    "divides_all",
    "first_rows_equivalent",
    "hecke_coefficient",
    "hecke_coefficient_coprime_s",
    "hecke_coefficient_order1",
    "hecke_coefficient_order2",
    "hecke_coefficient_scalar_index",
    "required_source_trace",
    "source_indices",
]

# source-index demand grows like p^delta * trace; keep desk scale by default
DEFAULT_MAX_DELTA = 4


class HeckeIndex(NamedTuple):
    """Prime power index p^delta of a Hecke operator."""

    p: int
    delta: int


class CosetSet(NamedTuple):
    """Determinant-1 representatives whose first rows cover the coprime-pair
    classes mod p^beta exactly once."""

    p: int
    beta: int
    members: tuple[UnimodularMatrix, ...]


@lru_cache(maxsize=None)
def coset_set(p: int, beta: int) -> CosetSet:
    """R(p^beta): the identity for beta = 0, else rows (1, u) for u < p^beta
    completed as [[1,u],[0,1]] plus rows (cp, 1) completed as [[cp,1],[-1,0]]."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if beta < 0:
        raise ValueError("beta must be >= 0")
    if beta == 0:
        return CosetSet(p, 0, (UnimodularMatrix.identity(),))
    members = [UnimodularMatrix(1, u, 0, 1) for u in range(p**beta)]
    members += [UnimodularMatrix(c * p, 1, -1, 0) for c in range(p ** (beta - 1))]
    return CosetSet(p, beta, tuple(members))


def first_rows_equivalent(p: int, beta: int, row_a, row_b) -> bool:
    """Whether two coprime pairs fall in the same class mod p^beta, i.e.
    some unit a sends one to the other componentwise."""
    q = p**beta
    if q == 1:
        return True
    u1, u2 = row_a
    v1, v2 = row_b
    for a in range(1, q):
        if a % p and (a * u1 - v1) % q == 0 and (a * u2 - v2) % q == 0:
            return True
    return False


def divides_all(x: int, *values: int) -> int:
    """1 if x divides every argument, else 0."""
    return int(all(v % x == 0 for v in values))


def _check_index(p: int, delta: int, max_delta: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if delta < 1:
        raise ValueError("delta must be >= 1")
    if delta > max_delta:
        raise ValueError(f"delta={delta} exceeds the configured cap {max_delta}")


def _check_form(n) -> tuple[int, int, int]:
    r, b, s = n
    if r < 0 or s < 0 or 4 * r * s < b * b:
        raise ValueError(f"{tuple(n)} is not positive semi-definite")
    return r, b, s


def _terms(
    p: int,
    delta: int,
    n: tuple[int, int, int],
    cosets: Optional[Mapping[int, CosetSet]] = None,
) -> Iterator[tuple[int, int, tuple[int, int, int]]]:
    """Yield (beta, gamma, source index) for every contributing summand."""
    for beta in range(delta + 1):
        members = (cosets[beta] if cosets is not None else coset_set(p, beta)).members
        for gamma in range(delta + 1 - beta):
            alpha = delta - beta - gamma
            pbg = p ** (beta + gamma)
            pg = p**gamma
            pa = p**alpha
            pb = p**beta
            for u in members:
                ru, bu, su = transform(n, u)
                if ru % pbg or bu % pg or su % pg:
                    continue
                src = (pa * (ru // pbg), pa * (bu // pg), pa * (su // pg) * pb)
                # the divisibility conditions are exactly the integrality
                # conditions, so the source must land back in the index set
                assert src[0] >= 0 and src[2] >= 0 and 4 * src[0] * src[2] >= src[1] ** 2
                yield beta, gamma, src


def source_indices(
    index, n, max_delta: int = DEFAULT_MAX_DELTA
) -> list[HalfIntegralForm]:
    """Every coefficient index of the source expansion that the evaluation
    at n reads, deduplicated and sorted."""
    p, delta = index
    _check_index(p, delta, max_delta)
    n = _check_form(n)
    return sorted({HalfIntegralForm(*src) for _, _, src in _terms(p, delta, n)})


def required_source_trace(index, n, max_delta: int = DEFAULT_MAX_DELTA) -> int:
    """Smallest source truncation that can answer the evaluation at n; there
    is no closed bound, so it is computed from the actual demand."""
    p, delta = index
    _check_index(p, delta, max_delta)
    n = _check_form(n)
    return max(_canonical_trace(src) for _, _, src in _terms(p, delta, n))


def _checked_sources(
    expansion: SiegelExpansion,
    p: int,
    delta: int,
    n: tuple[int, int, int],
    cosets: Optional[Mapping[int, CosetSet]],
) -> list[tuple[int, int, tuple[int, int, int]]]:
    terms = list(_terms(p, delta, n, cosets))
    missing = {src for _, _, src in terms if _canonical_trace(src) > expansion.max_trace}
    if missing:
        raise TruncationExceeded(missing, expansion.max_trace)
    return terms


def _canonical_trace(triple: tuple[int, int, int]) -> int:
    canon, _ = _reduce_triple(*triple)
    return canon[0] + canon[2]


def hecke_coefficient(
    expansion: SiegelExpansion,
    index,
    n,
    cosets: Optional[Mapping[int, CosetSet]] = None,
    max_delta: int = DEFAULT_MAX_DELTA,
) -> Fraction:
    """Coefficient of T(p^delta) expansion at index n, by the triple sum.

    Raises TruncationExceeded listing the missing source indices when the
    expansion is too short to answer exactly.
    """
    p, delta = index
    _check_index(p, delta, max_delta)
    n = _check_form(n)
    k = expansion.weight
    total = Fraction(0)
    for beta, gamma, src in _checked_sources(expansion, p, delta, n, cosets):
        total += p ** ((k - 2) * beta + (2 * k - 3) * gamma) * expansion.coefficient(src)
    return total


def hecke_coefficient_coprime_s(expansion: SiegelExpansion, index, n) -> Fraction:
    """Fast path for indices whose s entry is not divisible by p: only the
    row-(1, u) cosets with gamma = 0 survive."""
    p, delta = index
    _check_index(p, delta, DEFAULT_MAX_DELTA)
    r, b, s = _check_form(n)
    if s % p == 0:
        raise ValueError("requires s not divisible by p")
    k = expansion.weight
    pd = p**delta
    total = expansion.coefficient((pd * r, pd * b, pd * s))
    for beta in range(1, delta + 1):
        q = p**beta
        w = p ** ((k - 2) * beta)
        scale = p ** (delta - beta)
        for u in range(q):
            t = r + b * u + s * u * u
            if t % q == 0:
                total += w * expansion.coefficient(
                    (scale * (t // q), scale * (b + 2 * s * u), scale * s * q)
                )
    return total


def hecke_coefficient_scalar_index(expansion: SiegelExpansion, index, m: int) -> Fraction:
    """Fast path for the index m * identity with gcd(m, p) = 1; the
    correction depends only on p mod 4."""
    p, delta = index
    _check_index(p, delta, DEFAULT_MAX_DELTA)
    if m < 1 or gcd(m, p) != 1:
        raise ValueError("m must be a positive integer coprime to p")
    k = expansion.weight
    total = expansion.coefficient(HalfIntegralForm.scalar(m * p**delta))
    if p % 4 == 1:
        for beta in range(1, delta + 1):
            total += (
                2
                * p ** ((k - 2) * beta)
                * expansion.coefficient(HalfIntegralForm.scalar(m * p ** (delta - beta)))
            )
    elif p == 2:
        total += p ** (k - 2) * expansion.coefficient(
            HalfIntegralForm.scalar(m * p ** (delta - 1))
        )
    return total


def hecke_coefficient_order1(expansion: SiegelExpansion, p: int, n) -> Fraction:
    """Closed form of the delta = 1 coefficient at an arbitrary index."""
    _check_index(p, 1, DEFAULT_MAX_DELTA)
    r, b, s = _check_form(n)
    k = expansion.weight
    total = expansion.coefficient((p * r, p * b, p * s))
    block = Fraction(0)
    for u in range(p):
        t = r + b * u + s * u * u
        if t % p == 0:
            block += expansion.coefficient((t // p, b + 2 * s * u, s * p))
    if s % p == 0:
        block += expansion.coefficient((r * p, b, s // p))
    total += p ** (k - 2) * block
    if divides_all(p, r, b, s):
        total += p ** (2 * k - 3) * expansion.coefficient((r // p, b // p, s // p))
    return total


def hecke_coefficient_order2(expansion: SiegelExpansion, p: int, n) -> Fraction:
    """Closed form of the delta = 2 coefficient at an arbitrary index."""
    _check_index(p, 2, DEFAULT_MAX_DELTA)
    r, b, s = _check_form(n)
    k = expansion.weight
    p2 = p * p
    total = expansion.coefficient((p2 * r, p2 * b, p2 * s))
    if divides_all(p, r, b, s):
        total += p ** (2 * k - 3) * expansion.coefficient((r, b, s))
    if divides_all(p2, r, b, s):
        total += p ** (4 * k - 6) * expansion.coefficient((r // p2, b // p2, s // p2))
    block = Fraction(0)
    for u in range(p):
        t = r + b * u + s * u * u
        if t % p == 0:
            block += expansion.coefficient((t, p * (b + 2 * s * u), s * p2))
    if s % p == 0:
        block += expansion.coefficient((p2 * r, p * b, s))
    total += p ** (k - 2) * block
    block = Fraction(0)
    for u in range(p2):
        t = r + b * u + s * u * u
        if t % p2 == 0:
            block += expansion.coefficient((t // p2, b + 2 * s * u, s * p2))
    for u in range(p):
        t = b * u * p + s
        if t % p2 == 0:
            block += expansion.coefficient((r * p2, 2 * r * u * p + b, r * u * u + t // p2))
    total += p ** (2 * k - 4) * block
    block = Fraction(0)
    if b % p == 0 and s % p == 0:
        for u in range(p):
            t = r + b * u + s * u * u
            if t % p2 == 0:
                block += expansion.coefficient((t // p2, (b + 2 * s * u) // p, s))
    if divides_all(p, r, b) and s % p2 == 0:
        block += expansion.coefficient((r, b // p, s // p2))
    total += p ** (3 * k - 5) * block
    return total


def apply_hecke(
    expansion: SiegelExpansion, index, max_delta: int = DEFAULT_MAX_DELTA
) -> SiegelExpansion:
    """Apply T(p^delta) to a whole expansion.

    The output truncation is the largest bound such that every source index
    demanded by every class inside it is available, computed by demand
    analysis rather than guessed; the result is materialized.
    """
    p, delta = index
    _check_index(p, delta, max_delta)
    classes = enumerate_reduced(expansion.max_trace)
    out_trace = 0
    for n in classes:
        available = all(
            _canonical_trace(src) <= expansion.max_trace
            for _, _, src in _terms(p, delta, tuple(n))
        )
        if not available:
            out_trace = n.trace() - 1
            break
        out_trace = n.trace()
    coeffs = {
        tuple(n): hecke_coefficient(expansion, (p, delta), n, max_delta=max_delta)
        for n in enumerate_reduced(out_trace)
    }
    return SiegelExpansion(expansion.weight, out_trace, coeffs=coeffs)
