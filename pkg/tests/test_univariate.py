import math
import unittest
from fractions import Fraction

import numpy as np
from sympy import Poly, ZZ
from sympy import discriminant as sympy_discriminant

from toric_elimination.univariate import (
    DEGENERATE,
    T,
    THETA,
    cauchy_root_bound,
    coefficients,
    discriminant,
    first_subresultant,
    first_subresultant_parametric,
    height,
    mignotte_bound,
    modp_distinct_roots,
    modp_roots,
    normalize,
    rational_roots,
    real_root_count,
    squarefree_part,
    sylvester_resultant,
    unipoly,
)


def poly(expr):
    return Poly(expr, T, domain=ZZ)


class TestBasics(unittest.TestCase):
    def test_coefficients_lowest_degree_first(self):
        f = unipoly([2, -3, 1])
        self.assertEqual(f, poly(T**2 - 3 * T + 2))
        self.assertEqual(coefficients(f), [2, -3, 1])
        self.assertEqual(coefficients(poly(0)), [])

    def test_normalize(self):
        self.assertEqual(normalize(poly(-6 * T + 12)), poly(T - 2))

    def test_height(self):
        self.assertAlmostEqual(height(poly(T**2 - 144)), math.log(144))

    def test_squarefree_part(self):
        f = poly((T - 1) ** 2 * (T + 2))
        self.assertEqual(squarefree_part(f), poly(T**2 + T - 2))
        with self.assertRaises(ValueError):
            squarefree_part(poly(0))


class TestDiscriminant(unittest.TestCase):
    def test_cubic(self):
        self.assertEqual(discriminant(poly(T**3 - T + 1)), -23)
        self.assertEqual(discriminant(poly(T**2 - 2)), 8)

    def test_agrees_with_resultant_of_derivative(self):
        for expr in (T**2 + 1, 3 * T**3 - T + 7, 2 * T**4 - 5 * T**2 + T - 1, T**5 - T - 1):
            f = poly(expr)
            D = f.degree()
            expected, remainder = divmod(
                (-1) ** (D * (D - 1) // 2) * sylvester_resultant(f, f.diff()), int(f.LC())
            )
            self.assertEqual(remainder, 0)
            self.assertEqual(discriminant(f), expected)
            self.assertEqual(discriminant(f), int(sympy_discriminant(expr, T)))

    def test_repeated_root_gives_zero(self):
        self.assertEqual(discriminant(poly((T - 3) ** 2 * (T + 1))), 0)

    def test_constant_is_rejected(self):
        with self.assertRaises(ValueError):
            discriminant(poly(5))


class TestSubresultants(unittest.TestCase):
    def test_quadratics(self):
        pair = first_subresultant(poly(T**2 + 1), poly(T**2 + T + 3))
        self.assertEqual(pair.root(), Fraction(-2))

    def test_root_of_common_linear_factor(self):
        f = poly((T - 1) * (T**2 + 1))
        g = poly((T - 1) * (T**2 + T + 5))
        common = f.gcd(g)
        self.assertEqual(common.degree(), 1)
        self.assertEqual(first_subresultant(f, g).root(), Fraction(1))

    def test_common_quadratic_factor_degenerates(self):
        f = poly((T - 1) * (T - 2) * (T - 5))
        g = poly((T - 1) * (T - 2) * (T + 4))
        pair = first_subresultant(f, g)
        self.assertEqual((pair.R0, pair.R1), (0, 0))
        with self.assertRaises(ZeroDivisionError):
            pair.root()

    def test_low_degree_is_rejected(self):
        with self.assertRaises(ValueError):
            first_subresultant(poly(T - 1), poly(T**2))

    def test_parametric_matches_specializations(self):
        f = poly(T**3 - 3 * T + 1)
        g = Poly(T**2 + THETA * T - 3 + THETA**2, T, THETA, domain=ZZ)
        pair = first_subresultant_parametric(f, g)
        for value in range(-2, 4):
            specialized = poly(T**2 + value * T - 3 + value**2)
            expected = first_subresultant(f, specialized)
            self.assertEqual(pair.R0.eval(value), expected.R0)
            self.assertEqual(pair.R1.eval(value), expected.R1)


class TestRootCounting(unittest.TestCase):
    def test_real_roots(self):
        self.assertEqual(real_root_count(poly(T**3 - T)), 3)
        self.assertEqual(real_root_count(poly(T**2 + 1)), 0)
        self.assertEqual(real_root_count(poly((T - 1) ** 2 * (T + 1))), 2)
        self.assertEqual(real_root_count(poly(7)), 0)

    def test_rational_roots(self):
        self.assertEqual(rational_roots(poly(2 * T**2 - 3 * T + 1)), [Fraction(1, 2), Fraction(1)])
        self.assertEqual(rational_roots(poly(T**2 - 2)), [])
        self.assertEqual(rational_roots(poly(6 * T**3 + T**2 - T)), [Fraction(-1, 2), Fraction(0), Fraction(1, 3)])

    def test_roots_mod_small_primes(self):
        f = poly(T**2 + 1)
        self.assertEqual(modp_roots(f, 5), [2, 3])
        self.assertEqual(modp_distinct_roots(f, 5), 2)
        self.assertEqual(modp_distinct_roots(f, 3), 0)
        self.assertEqual(modp_distinct_roots(f, 2), 1)

    def test_vanishing_reduction_is_degenerate(self):
        self.assertIs(modp_distinct_roots(poly(3 * T + 3), 3), DEGENERATE)
        self.assertIs(modp_roots(poly(3 * T + 3), 3), DEGENERATE)

    def test_roots_mod_large_prime(self):
        self.assertEqual(modp_roots(poly(T**2 - 4), 10007), [2, 10005])
        self.assertEqual(modp_distinct_roots(poly(T**2 - 4), 10007), 2)

    def test_counts_agree_with_enumeration(self):
        rng = np.random.default_rng(3)
        for p in (2, 3, 7, 31, 97):
            for _ in range(5):
                coeffs = [int(c) for c in rng.integers(-20, 21, size=5)]
                coeffs[-1] = coeffs[-1] or 1
                f = unipoly(coeffs)
                expected = [r for r in range(p) if int(f.eval(r)) % p == 0]
                if all(c % p == 0 for c in coeffs):
                    continue
                self.assertEqual(modp_distinct_roots(f, p), len(expected))
                self.assertEqual(modp_roots(f, p), expected)


class TestClassicalBounds(unittest.TestCase):
    def test_mignotte(self):
        self.assertAlmostEqual(mignotte_bound(2, 3), math.sqrt(3) * 12)

    def test_cauchy_bounds_every_root(self):
        f = poly(T**2 - 3 * T + 2)
        self.assertEqual(cauchy_root_bound(f), 4.0)
        self.assertTrue(all(abs(r) <= cauchy_root_bound(f) for r in rational_roots(f)))


if __name__ == "__main__":
    unittest.main()
