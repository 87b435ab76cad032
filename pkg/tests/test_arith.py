from fractions import Fraction
from math import comb, gcd

import pytest

from siegel2 import (
    bernoulli,
    bernoulli_polynomial,
    cohen_class_number,
    dirichlet_l_at_one_minus,
    divisor_sigma,
    divisors,
    factor,
    fundamental_decomposition,
    generalized_bernoulli,
    is_fundamental_discriminant,
    is_prime,
    kronecker_symbol,
    moebius,
    zeta_at_one_minus,
)


def bernoulli_oracle(n):
    """B_n by the explicit double sum, independent of the recurrence."""
    total = Fraction(0)
    for k in range(n + 1):
        inner = 0
        for v in range(k + 1):
            inner += (-1) ** v * comb(k, v) * v**n
        total += Fraction(inner, k + 1)
    return total


class TestBernoulli:
    def test_golden(self):
        assert bernoulli(0) == 1
        assert bernoulli(1) == Fraction(-1, 2)
        assert bernoulli(2) == Fraction(1, 6)
        assert bernoulli(12) == Fraction(-691, 2730)

    def test_odd_vanish(self):
        for n in range(3, 25, 2):
            assert bernoulli(n) == 0

    def test_against_double_sum(self):
        for n in range(25):
            assert bernoulli(n) == bernoulli_oracle(n), n

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            bernoulli(-1)

    def test_polynomial_at_zero_is_bernoulli(self):
        for n in range(15):
            assert bernoulli_polynomial(n, Fraction(0)) == bernoulli(n)

    def test_polynomial_values(self):
        assert bernoulli_polynomial(3, Fraction(1, 4)) == Fraction(3, 64)
        assert bernoulli_polynomial(3, Fraction(3, 4)) == Fraction(-3, 64)


class TestZeta:
    def test_golden(self):
        assert zeta_at_one_minus(2) == Fraction(-1, 12)
        assert zeta_at_one_minus(4) == Fraction(1, 120)
        assert zeta_at_one_minus(6) == Fraction(-1, 252)

    def test_small_argument_rejected(self):
        for n in (1, 0, -3):
            with pytest.raises(ValueError):
                zeta_at_one_minus(n)


class TestKronecker:
    def test_golden(self):
        assert kronecker_symbol(-4, 3) == -1
        assert kronecker_symbol(-4, 2) == 0
        assert kronecker_symbol(-3, 2) == -1

    def test_mod_four_character(self):
        for n in range(1, 40, 2):
            expected = 1 if n % 4 == 1 else -1
            assert kronecker_symbol(-4, n) == expected

    def test_zero_argument(self):
        assert kronecker_symbol(1, 0) == 1
        assert kronecker_symbol(-1, 0) == 1
        assert kronecker_symbol(5, 0) == 0

    def test_completely_multiplicative(self):
        for d in (-8, -4, -3, 1, 5, 8, 13):
            for m in range(-12, 13):
                for n in range(-12, 13):
                    assert kronecker_symbol(d, m * n) == kronecker_symbol(
                        d, m
                    ) * kronecker_symbol(d, n)

    def test_periodic_for_fundamental(self):
        for d in (-8, -4, -3, -7, 5, 8, 13):
            for n in range(1, 3 * abs(d)):
                assert kronecker_symbol(d, n) == kronecker_symbol(d, n + abs(d))


class TestElementary:
    def test_factor(self):
        assert factor(12) == ((2, 2), (3, 1))
        assert factor(1) == ()
        assert factor(97) == ((97, 1),)

    def test_moebius(self):
        assert moebius(6) == 1
        assert moebius(30) == -1
        assert moebius(4) == 0
        assert moebius(1) == 1

    def test_divisor_sigma(self):
        assert divisor_sigma(5, 2) == 33
        assert divisor_sigma(0, 12) == 6
        assert divisor_sigma(1, 6) == 12

    def test_divisors(self):
        assert divisors(12) == [1, 2, 3, 4, 6, 12]
        assert divisors(1) == [1]

    def test_is_prime(self):
        assert [n for n in range(2, 30) if is_prime(n)] == [
            2, 3, 5, 7, 11, 13, 17, 19, 23, 29,
        ]
        assert not is_prime(1)


def fundamental_by_definition(d):
    def squarefree(n):
        return all(n % (q * q) for q in range(2, int(abs(n) ** 0.5) + 1))

    if d % 4 == 1:
        return d == 1 or squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and squarefree(m)
    return False


class TestFundamental:
    def test_predicate_matches_definition(self):
        for d in range(-60, 61):
            if d == 0:
                continue
            assert is_fundamental_discriminant(d) == fundamental_by_definition(d), d

    def test_decomposition_golden(self):
        assert fundamental_decomposition(-4) == (-4, 1)
        assert fundamental_decomposition(-12) == (-3, 2)
        assert fundamental_decomposition(-16) == (-4, 2)
        assert fundamental_decomposition(8) == (8, 1)
        assert fundamental_decomposition(9) == (1, 3)
        assert fundamental_decomposition(1) == (1, 1)

    def test_decomposition_reconstructs(self):
        for m in range(-80, 81):
            if m == 0 or m % 4 not in (0, 1):
                continue
            d, f = fundamental_decomposition(m)
            assert is_fundamental_discriminant(d)
            assert d * f * f == m

    def test_decomposition_rejects(self):
        for m in (0, 2, 3, 6, -2, -9):
            if m != 0 and m % 4 in (0, 1):
                continue
            with pytest.raises(ValueError):
                fundamental_decomposition(m)


class TestGeneralizedBernoulli:
    def test_golden(self):
        assert generalized_bernoulli(3, -4) == Fraction(3, 2)
        assert generalized_bernoulli(3, -3) == Fraction(2, 3)
        assert generalized_bernoulli(1, 1) == Fraction(-1, 2)

    def test_non_fundamental_rejected(self):
        with pytest.raises(ValueError):
            generalized_bernoulli(3, -12)
        with pytest.raises(ValueError):
            generalized_bernoulli(3, 9)

    def test_l_values(self):
        assert dirichlet_l_at_one_minus(3, -4) == Fraction(-1, 2)
        assert dirichlet_l_at_one_minus(3, -3) == Fraction(-2, 9)
        assert dirichlet_l_at_one_minus(2, 1) == Fraction(-1, 12)
        assert dirichlet_l_at_one_minus(2, 1) == zeta_at_one_minus(2)


def hurwitz_oracle(n):
    """Hurwitz class number by enumerating reduced positive forms of
    discriminant -n, weights 1/2 for (t,0,t) and 1/3 for (t,t,t)."""
    total = Fraction(0)
    a = 1
    while 3 * a * a <= n:
        for b in range(-a + 1, a + 1):
            num = b * b + n
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if a == b == c:
                total += Fraction(1, 3)
            elif a == c and b == 0:
                total += Fraction(1, 2)
            else:
                total += 1
        a += 1
    return total


class TestCohenClassNumber:
    def test_golden(self):
        assert cohen_class_number(3, 0) == Fraction(-1, 252)
        assert cohen_class_number(3, 4) == Fraction(-1, 2)
        assert cohen_class_number(3, 2) == 0
        assert cohen_class_number(3, 3) == Fraction(-2, 9)

    def test_zero_outside_congruence_classes(self):
        for r in range(1, 6):
            for n in range(1, 60):
                if ((-1) ** r * n) % 4 in (2, 3):
                    assert cohen_class_number(r, n) == 0, (r, n)

    def test_r1_matches_hurwitz_oracle(self):
        for n in range(1, 60):
            if n % 4 in (0, 3):
                assert cohen_class_number(1, n) == hurwitz_oracle(n), n

    def test_r1_spot_values(self):
        assert cohen_class_number(1, 3) == Fraction(1, 3)
        assert cohen_class_number(1, 4) == Fraction(1, 2)
        assert cohen_class_number(1, 7) == 1
        assert cohen_class_number(1, 8) == 1
        assert cohen_class_number(1, 11) == 1
        assert cohen_class_number(1, 23) == 3

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            cohen_class_number(0, 4)
        with pytest.raises(ValueError):
            cohen_class_number(2, -1)
