import random
from itertools import product
from math import isqrt

import pytest

from siegel2 import (
    HalfIntegralForm,
    UnimodularMatrix,
    enumerate_forms,
    enumerate_reduced,
    is_reduced,
    reduce_form,
    sts_matrix,
    transform,
    two_squares,
)

GENERATORS = (
    UnimodularMatrix(1, 1, 0, 1),
    UnimodularMatrix(0, 1, -1, 0),
    UnimodularMatrix(1, 0, 0, -1),
)


def random_form(rng, bound=5):
    r = rng.randint(0, bound)
    s = rng.randint(0, bound)
    m = isqrt(4 * r * s)
    return (r, rng.randint(-m, m), s)


def random_unimodular(rng, length=6):
    u = UnimodularMatrix.identity()
    for _ in range(length):
        u = u.compose(rng.choice(GENERATORS))
    return u


class TestTransform:
    def test_golden(self):
        assert transform((1, 0, 1), (0, 1, -1, 0)) == (1, 0, 1)
        assert transform((1, 1, 1), (1, 1, 0, 1)) == (3, 3, 1)
        assert transform((1, 0, 1), (1, 0, 1, 1)) == (1, 2, 2)

    def test_identity_fixes(self):
        for n in enumerate_forms(4):
            assert transform(n, UnimodularMatrix.identity()) == n

    def test_action_property(self):
        rng = random.Random(11)
        for _ in range(300):
            n = random_form(rng)
            u = random_unimodular(rng)
            v = random_unimodular(rng)
            assert transform(transform(n, u), v) == transform(n, v.compose(u))

    def test_stays_semidefinite(self):
        rng = random.Random(12)
        for _ in range(200):
            n = random_form(rng)
            u = random_unimodular(rng)
            assert transform(n, u).is_valid()


def equivalent_by_brute_force(n, target, bound=10):
    """Search all unimodular U with entries <= bound for U n tU = target."""
    rng = range(-bound, bound + 1)
    for u1, u2, u3, u4 in product(rng, rng, rng, rng):
        if abs(u1 * u4 - u2 * u3) != 1:
            continue
        if tuple(transform(n, (u1, u2, u3, u4))) == tuple(target):
            return True
    return False


class TestReduce:
    def test_golden(self):
        assert reduce_form((0, 0, 0)) == ((0, 0, 0), 1)
        assert reduce_form((1, 2, 1)).canonical == (1, 0, 0)
        assert reduce_form((5, 4, 1)).canonical == (1, 0, 1)

    def test_golden_by_brute_force(self):
        assert equivalent_by_brute_force((1, 2, 1), (1, 0, 0), bound=4)
        assert equivalent_by_brute_force((5, 4, 1), (1, 0, 1), bound=10)

    def test_output_is_canonical(self):
        rng = random.Random(13)
        for _ in range(400):
            canon, sign = reduce_form(random_form(rng, bound=8))
            assert is_reduced(canon)
            assert sign in (1, -1)

    def test_idempotent(self):
        for n in enumerate_reduced(8):
            assert reduce_form(n).canonical == n

    def test_invariant_under_generator_words(self):
        words = {UnimodularMatrix.identity()}
        frontier = [UnimodularMatrix.identity()]
        for _ in range(6):
            frontier = [
                w.compose(g)
                for w in frontier
                for g in GENERATORS
                if w.compose(g) not in words
            ]
            words.update(frontier)
        forms = enumerate_forms(10)
        for n in forms:
            canon = reduce_form(n).canonical
            for u in words:
                assert reduce_form(transform(n, u)).canonical == canon

    def test_rank1_minimum(self):
        # rank-1 classes reduce to (e,0,0) with e the minimal nonzero value
        assert reduce_form((0, 0, 5)).canonical == (5, 0, 0)
        assert reduce_form((4, 4, 1)).canonical == (1, 0, 0)
        assert reduce_form((2, 4, 2)).canonical == (2, 0, 0)
        assert reduce_form((4, 0, 0)).canonical == (4, 0, 0)
        assert reduce_form((9, 6, 1)).canonical == (1, 0, 0)

    def test_rejects_invalid(self):
        for bad in ((1, 5, 1), (-1, 0, 0), (0, 1, 0), (1, 3, 2)):
            with pytest.raises(ValueError):
                reduce_form(bad)


class TestEnumerate:
    def test_small_golden(self):
        assert [tuple(n) for n in enumerate_forms(0)] == [(0, 0, 0)]
        assert [tuple(n) for n in enumerate_forms(1)] == [(0, 0, 0), (0, 0, 1), (1, 0, 0)]

    def test_trace_two_count_is_ten(self):
        forms = enumerate_forms(2)
        assert len(forms) == 10
        assert HalfIntegralForm(1, -2, 1) in forms
        assert HalfIntegralForm(1, 2, 1) in forms

    def test_against_full_scan_oracle(self):
        top = 8
        oracle = set()
        for r in range(top + 1):
            for s in range(top + 1):
                for b in range(-2 * top, 2 * top + 1):
                    if r + s <= top and b * b <= 4 * r * s:
                        oracle.add((r, b, s))
        forms = enumerate_forms(top)
        assert set(map(tuple, forms)) == oracle
        assert len(forms) == len(oracle)
        keys = [(n.trace(), n.r, n.b) for n in forms]
        assert keys == sorted(keys)

    def test_reduced_subset(self):
        for top in (0, 1, 5, 9):
            expected = [n for n in enumerate_forms(top) if is_reduced(n)]
            assert enumerate_reduced(top) == expected

    def test_every_class_has_one_canonical(self):
        canon = {tuple(reduce_form(n).canonical) for n in enumerate_forms(6)}
        assert canon <= set(map(tuple, enumerate_reduced(6)))


class TestTwoSquares:
    def test_golden(self):
        assert two_squares(5, 1) == (1, 2)
        assert two_squares(5, 2) == (3, 4)
        assert two_squares(13, 1) == (3, 2)

    def test_literal_conditions(self):
        for p in (5, 13, 17, 29):
            for beta in range(1, 5):
                x, y = two_squares(p, beta)
                assert x * x + y * y == p**beta
                assert x % 2 == 1 and y % 2 == 0
                assert x % p and y % p
                assert x > 0 and y > 0

    def test_rejects_wrong_residue(self):
        for p in (2, 3, 7, 11):
            with pytest.raises(ValueError):
                two_squares(p, 1)


class TestStsMatrix:
    @staticmethod
    def gram(s):
        return (
            s.u1 * s.u1 + s.u2 * s.u2,
            s.u1 * s.u3 + s.u2 * s.u4,
            s.u3 * s.u3 + s.u4 * s.u4,
        )

    def test_golden(self):
        s = sts_matrix(5, 1, 2)
        assert s.det() == 1 and self.gram(s) == (1, 2, 5)
        s = sts_matrix(5, 1, 3)
        assert s.det() == 1 and self.gram(s) == (2, 3, 5)
        s = sts_matrix(13, 1, 5)
        assert s.det() == 1 and self.gram(s) == (2, 5, 13)

    def test_all_valid_u(self):
        for p in (5, 13):
            for beta in (1, 2, 3):
                q = p**beta
                roots = [u for u in range(q) if (u * u + 1) % q == 0]
                assert len(roots) == 2
                for u in roots:
                    s = sts_matrix(p, beta, u)
                    assert s.det() == 1
                    assert self.gram(s) == ((1 + u * u) // q, u, q)

    def test_rejects_bad_u(self):
        with pytest.raises(ValueError):
            sts_matrix(5, 1, 1)

    def test_rejects_bad_prime(self):
        with pytest.raises(ValueError):
            sts_matrix(3, 1, 1)
