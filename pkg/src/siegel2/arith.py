"""Exact scalar arithmetic: Bernoulli numbers, zeta and Dirichlet L-values at
non-positive integers, Kronecker symbols, and Cohen's class number function H.

Every value is an int or a fractions.Fraction; nothing here ever rounds.
All functions are pure, and the memo tables behind the lru_cache decorators
are append-only caches of immutable values, so concurrent use is safe.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt
from typing import NamedTuple

__all__ = [
    "FundamentalDecomposition",
    "bernoulli",
    "bernoulli_polynomial",
    "cohen_class_number",
    "dirichlet_l_at_one_minus",
    "divisor_sigma",
    "divisors",
    "factor",
    "fundamental_decomposition",
    "generalized_bernoulli",
    "is_fundamental_discriminant",
    "is_prime",
    "kronecker_symbol",
    "moebius",
    "zeta_at_one_minus",
]


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n, with the convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    # sum_{j=0}^{n} C(n+1, j) B_j = 0
    acc = Fraction(0)
    for j in range(n):
        acc += comb(n + 1, j) * bernoulli(j)
    return -acc / (n + 1)


def bernoulli_polynomial(n: int, x: Fraction) -> Fraction:
    """Value of the degree-n Bernoulli polynomial at x."""
    x = Fraction(x)
    return sum(
        (comb(n, j) * bernoulli(j) * x ** (n - j) for j in range(n + 1)),
        Fraction(0),
    )


def zeta_at_one_minus(n: int) -> Fraction:
    """Riemann zeta at 1 - n for n >= 2, namely -B_n / n."""
    if n < 2:
        raise ValueError("zeta_at_one_minus requires n >= 2")
    return -bernoulli(n) / n


def kronecker_symbol(d: int, n: int) -> int:
    """Kronecker symbol (d/n), completely multiplicative in n."""
    if n == 0:
        return 1 if d in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if d < 0:
            result = -result
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    # Jacobi symbol (d/n) for odd n >= 1 by quadratic reciprocity
    a = d % n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@lru_cache(maxsize=None)
def factor(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as sorted (prime, exponent) pairs."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    """All positive divisors of n >= 1, sorted."""
    out = [1]
    for p, e in factor(n):
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def moebius(n: int) -> int:
    f = factor(n)
    if any(e > 1 for _, e in f):
        return 0
    return (-1) ** len(f)


def divisor_sigma(k: int, n: int) -> int:
    """Sum of k-th powers of the divisors of n."""
    return sum(d**k for d in divisors(n))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factor(n) == ((n, 1),)


def _squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factor(n))


def is_fundamental_discriminant(d: int) -> bool:
    """True for d = 1, d ≡ 1 mod 4 squarefree, or d = 4m with m ≡ 2,3 mod 4 squarefree."""
    if d == 1:
        return True
    if d % 4 == 1:
        return _squarefree(abs(d))
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(abs(m))
    return False


class FundamentalDecomposition(NamedTuple):
    """A discriminant split as ``discriminant * conductor**2``."""

    discriminant: int
    conductor: int


def fundamental_decomposition(m: int) -> FundamentalDecomposition:
    """Split m ≡ 0, 1 mod 4, m != 0, as D * f^2 with D fundamental (or 1)."""
    if m == 0:
        raise ValueError("m must be nonzero")
    if m % 4 not in (0, 1):
        raise ValueError("m must be 0 or 1 mod 4")
    s = -1 if m < 0 else 1
    for p, e in factor(abs(m)):
        if e % 2 == 1:
            s *= p
    d = s if s % 4 == 1 else 4 * s
    fsq, rem = divmod(m, d)
    f = isqrt(fsq)
    assert rem == 0 and f * f == fsq
    return FundamentalDecomposition(d, f)


@lru_cache(maxsize=None)
def generalized_bernoulli(n: int, d: int) -> Fraction:
    """Generalized Bernoulli number attached to the Kronecker character of d.

    Computed as f^(n-1) * sum_{a=0}^{f-1} chi_d(a) B_n(a/f) with f = |d|.
    For d = 1 this is plain B_n, so the B_1 = -1/2 convention carries over.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    f = abs(d)
    acc = Fraction(0)
    for a in range(f):
        chi = kronecker_symbol(d, a)
        if chi:
            acc += chi * bernoulli_polynomial(n, Fraction(a, f))
    return f ** (n - 1) * acc


def dirichlet_l_at_one_minus(r: int, d: int) -> Fraction:
    """L(1 - r, chi_d) = -B_{r,chi_d} / r for r >= 1 and fundamental d."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return -generalized_bernoulli(r, d) / r


@lru_cache(maxsize=None)
def cohen_class_number(r: int, n: int) -> Fraction:
    """Cohen's generalized class number H(r, n) for r >= 1, n >= 0.

    H(r, 0) is zeta(1 - 2r).  For (-1)^r n ≡ 0, 1 mod 4 write
    (-1)^r n = D f^2 with D fundamental; the value is
    L(1-r, chi_D) * sum_{d | f} mu(d) chi_D(d) d^(r-1) sigma_{2r-1}(f/d).
    Outside those congruence classes H(r, n) = 0.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return zeta_at_one_minus(2 * r)
    m = n if r % 2 == 0 else -n
    if m % 4 not in (0, 1):
        return Fraction(0)
    d, f = fundamental_decomposition(m)
    acc = 0
    for q in divisors(f):
        mu = moebius(q)
        if mu:
            chi = kronecker_symbol(d, q)
            if chi:
                acc += mu * chi * q ** (r - 1) * divisor_sigma(2 * r - 1, f // q)
    return dirichlet_l_at_one_minus(r, d) * acc
