"""Half-integral binary quadratic forms and the GL2(Z) action on them.

A form (r, b, s) stands for the symmetric matrix [[r, b/2], [b/2, s]], so b
is always twice the off-diagonal entry.  Forms here are positive
semi-definite (4rs - b^2 >= 0 with r, s >= 0); they index the Fourier
expansions in the fourier module.  Reduction picks one canonical
representative per GL2(Z) class together with the determinant sign of a
reducing matrix, which is what makes coefficient lookup well defined at any
weight parity.
"""

from __future__ import annotations

from math import gcd, isqrt
from typing import Iterator, NamedTuple

__all__ = [
    "HalfIntegralForm",
    "ReducedClass",
    "UnimodularMatrix",
    "enumerate_forms",
    "enumerate_reduced",
    "is_reduced",
    "reduce_form",
    "sts_matrix",
    "transform",
    "two_squares",
]


class HalfIntegralForm(NamedTuple):
    """Integer triple (r, b, s) for the matrix [[r, b/2], [b/2, s]]."""

    r: int
    b: int
    s: int

    def trace(self) -> int:
        return self.r + self.s

    def det4(self) -> int:
        """4 * determinant of the underlying matrix, i.e. 4rs - b^2."""
        return 4 * self.r * self.s - self.b * self.b

    def content(self) -> int:
        """gcd(r, b, s); zero only for the zero form."""
        return gcd(self.r, self.b, self.s)

    def is_valid(self) -> bool:
        return self.r >= 0 and self.s >= 0 and self.det4() >= 0

    def rank(self) -> int:
        if self.r == 0 and self.b == 0 and self.s == 0:
            return 0
        return 1 if self.det4() == 0 else 2

    def scale(self, m: int) -> "HalfIntegralForm":
        return HalfIntegralForm(m * self.r, m * self.b, m * self.s)

    @classmethod
    def zero(cls) -> "HalfIntegralForm":
        return cls(0, 0, 0)

    @classmethod
    def identity(cls) -> "HalfIntegralForm":
        return cls(1, 0, 1)

    @classmethod
    def scalar(cls, m: int) -> "HalfIntegralForm":
        """m times the identity matrix."""
        return cls(m, 0, m)


class UnimodularMatrix(NamedTuple):
    """Integer matrix [[u1, u2], [u3, u4]] with determinant +-1."""

    u1: int
    u2: int
    u3: int
    u4: int

    def det(self) -> int:
        return self.u1 * self.u4 - self.u2 * self.u3

    def is_valid(self) -> bool:
        return self.det() in (1, -1)

    def compose(self, other: "UnimodularMatrix") -> "UnimodularMatrix":
        """Matrix product self @ other."""
        a, b, c, d = self
        e, f, g, h = other
        return UnimodularMatrix(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    @classmethod
    def identity(cls) -> "UnimodularMatrix":
        return cls(1, 0, 0, 1)


class ReducedClass(NamedTuple):
    """Canonical representative of a GL2(Z) class plus a reducing determinant."""

    canonical: HalfIntegralForm
    sign: int


def transform(n, u) -> HalfIntegralForm:
    """The form of U N tU; same GL2(Z) class as N when det(U) = +-1."""
    r, b, s = n
    u1, u2, u3, u4 = u
    return HalfIntegralForm(
        r * u1 * u1 + b * u1 * u2 + s * u2 * u2,
        2 * r * u1 * u3 + b * (u1 * u4 + u2 * u3) + 2 * s * u2 * u4,
        r * u3 * u3 + b * u3 * u4 + s * u4 * u4,
    )


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        return -old_r, -old_x, -old_y
    return old_r, old_x, old_y


_REDUCE_CACHE: dict[tuple[int, int, int], tuple[tuple[int, int, int], int]] = {}


def _reduce_triple(r: int, b: int, s: int) -> tuple[tuple[int, int, int], int]:
    key = (r, b, s)
    cached = _REDUCE_CACHE.get(key)
    if cached is not None:
        return cached
    if r < 0 or s < 0 or 4 * r * s < b * b:
        raise ValueError(f"{key} is not positive semi-definite")
    sign = 1
    if 4 * r * s == b * b:
        if r == 0 and s == 0:
            result = ((0, 0, 0), 1)
        else:
            # rank 1: send a primitive kernel vector to the second basis vector
            if r == 0 and b == 0:
                x0, y0 = 1, 0
            else:
                g = gcd(b, 2 * r)
                x0, y0 = b // g, -2 * r // g
            g, a, c = _ext_gcd(y0, -x0)
            assert g == 1
            e = r * a * a + b * a * c + s * c * c
            result = ((e, 0, 0), 1)
    else:
        # Gauss reduction; r >= 1 throughout since the form is definite
        while True:
            if not (-r < b <= r):
                t = (r - b) // (2 * r)
                s = r * t * t + b * t + s
                b = b + 2 * t * r
            if r > s:
                r, b, s = s, -b, r
                continue
            break
        if b < 0:
            b = -b
            sign = -sign
        result = ((r, b, s), sign)
    _REDUCE_CACHE[key] = result
    return result


def reduce_form(n) -> ReducedClass:
    """Canonical GL2(Z) representative of n and the reducing determinant.

    Canonical forms are (0,0,0); (e,0,0) with e > 0 for rank 1; and
    0 <= b <= r <= s with 4rs > b^2 for rank 2.
    """
    canon, sign = _reduce_triple(*n)
    return ReducedClass(HalfIntegralForm(*canon), sign)


def is_reduced(n) -> bool:
    """True when n is one of the canonical representatives."""
    r, b, s = n
    if b == 0 and s == 0 and r >= 0:
        return True
    return 0 <= b <= r <= s and 4 * r * s > b * b


def _iter_forms(max_trace: int) -> Iterator[tuple[int, int, int]]:
    for r in range(max_trace + 1):
        for s in range(max_trace + 1 - r):
            m = isqrt(4 * r * s)
            for b in range(-m, m + 1):
                yield (r, b, s)


def enumerate_forms(max_trace: int) -> list[HalfIntegralForm]:
    """Every (r, b, s) with r, s >= 0, r + s <= max_trace and b^2 <= 4rs,
    ordered lexicographically by (r + s, r, b)."""
    if max_trace < 0:
        raise ValueError("max_trace must be >= 0")
    forms = sorted(_iter_forms(max_trace), key=lambda t: (t[0] + t[2], t[0], t[1]))
    return [HalfIntegralForm(*t) for t in forms]


def enumerate_reduced(max_trace: int) -> list[HalfIntegralForm]:
    """The canonical representatives with trace <= max_trace, in
    enumerate_forms order."""
    if max_trace < 0:
        raise ValueError("max_trace must be >= 0")
    out = [(0, 0, 0)]
    out += [(e, 0, 0) for e in range(1, max_trace + 1)]
    for r in range(1, max_trace // 2 + 1):
        for s in range(r, max_trace + 1 - r):
            for b in range(r + 1):
                if 4 * r * s > b * b:
                    out.append((r, b, s))
    out.sort(key=lambda t: (t[0] + t[2], t[0], t[1]))
    return [HalfIntegralForm(*t) for t in out]


def two_squares(p: int, beta: int) -> tuple[int, int]:
    """Positive (x, y) with x^2 + y^2 = p^beta, x odd, y even, p dividing
    neither, for p ≡ 1 mod 4.

    The base case is exhaustive search; higher powers come from the
    Gaussian-norm recursion, always keeping the branch prime to p.
    """
    if p % 4 != 1:
        raise ValueError("p must be a prime congruent to 1 mod 4")
    if beta < 1:
        raise ValueError("beta must be >= 1")
    x1 = y1 = 0
    for x in range(1, isqrt(p) + 1, 2):
        y = isqrt(p - x * x)
        if y * y == p - x * x:
            x1, y1 = x, y
            break
    else:
        raise ValueError(f"{p} is not a sum of two squares; is it prime?")
    x, y = x1, y1
    for _ in range(beta - 1):
        c1, d1 = abs(x1 * x + y1 * y), abs(y1 * x - x1 * y)
        c2, d2 = abs(x1 * x - y1 * y), abs(y1 * x + x1 * y)
        x, y = (c1, d1) if c1 % p else (c2, d2)
    assert x * x + y * y == p**beta and x % 2 == 1 and y % 2 == 0
    assert x % p and y % p
    return x, y


def sts_matrix(p: int, beta: int, u: int) -> UnimodularMatrix:
    """An integral S with det(S) = 1 and S tS = [[(1+u^2)/p^beta, u], [u, p^beta]].

    Requires p ≡ 1 mod 4 and u^2 ≡ -1 mod p^beta.  Exactly one of the two
    candidate matrices built from the two-squares decomposition is integral.
    """
    q = p**beta
    if (u * u + 1) % q:
        raise ValueError(f"u^2 must be -1 mod {q}")
    x, y = two_squares(p, beta)
    for top in (((u * y + x), (u * x - y), y, x), ((u * y - x), -(u * x + y), y, -x)):
        a, b, c, d = top
        if a % q == 0 and b % q == 0:
            s = UnimodularMatrix(a // q, b // q, c, d)
            assert s.det() == 1
            assert _gram(s) == ((u * u + 1) // q, u, u, q)
            return s
    raise AssertionError("neither candidate matrix is integral")


def _gram(s: UnimodularMatrix) -> tuple[int, int, int, int]:
    a, b, c, d = s
    return (a * a + b * b, a * c + b * d, a * c + b * d, c * c + d * d)
