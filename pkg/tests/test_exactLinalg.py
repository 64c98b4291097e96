import math
import unittest
from itertools import permutations

import numpy as np
from sympy import Matrix, symbols

from toric_elimination import InterpolationError
from toric_elimination.exact_linalg import (
    ParamMatrix,
    det_exact,
    det_mod_p,
    det_parametric,
    hadamard_bound,
)


def cofactor_determinant(M):
    size = len(M)
    total = 0
    for perm in permutations(range(size)):
        inversions = sum(1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j])
        term = (-1) ** inversions
        for i, j in enumerate(perm):
            term *= M[i][j]
        total += term
    return total


class TestDeterminants(unittest.TestCase):
    def test_agrees_with_cofactor_expansion(self):
        rng = np.random.default_rng(7)
        for size in range(1, 7):
            for _ in range(5):
                M = rng.integers(-9, 10, size=(size, size)).tolist()
                self.assertEqual(det_exact(M), cofactor_determinant(M))

    def test_zero_pivot_needs_a_row_swap(self):
        self.assertEqual(det_exact([[0, 1], [1, 0]]), -1)
        self.assertEqual(det_exact([[0, 0], [1, 2]]), 0)

    def test_huge_entries_stay_exact(self):
        big = 10**40
        M = [[big, 1], [1, big]]
        self.assertEqual(det_exact(M), big * big - 1)

    def test_non_square_is_rejected(self):
        with self.assertRaises(ValueError):
            det_exact([[1, 2, 3], [4, 5, 6]])

    def test_modular_determinant(self):
        M = [[2, 3, 5], [7, 11, 13], [17, 19, 23]]
        exact = int(Matrix(M).det())
        for p in (3, 101, 2**31 - 1, 2**61 - 1):
            self.assertEqual(det_mod_p(M, p), exact % p)

    def test_modulus_must_be_prime(self):
        with self.assertRaises(ValueError):
            det_mod_p([[1]], 15)

    def test_hadamard_bound(self):
        M = [[3, 4], [1, 0]]
        self.assertAlmostEqual(hadamard_bound(M), 5.0)
        self.assertLessEqual(abs(det_exact(M)), hadamard_bound(M))


class TestRandomDeterminants(unittest.TestCase):
    primes = (2, 3, 5, 7, 97, 101, 65537, 2**31 - 1, 2**61 - 1)

    def test_modular_agrees_with_exact(self):
        rng = np.random.default_rng(21)
        for k in range(50):
            size = int(rng.integers(1, 7))
            M = [[int(x) for x in row] for row in rng.integers(-50, 51, size=(size, size))]
            p = self.primes[k % len(self.primes)]
            self.assertEqual(det_mod_p(M, p), det_exact(M) % p)

    def test_pencil_coefficients_respect_the_row_norm_bound(self):
        # det(A + sB) where B has only N' nonzero rows
        rng = np.random.default_rng(22)
        s = symbols("s")
        for _ in range(20):
            N = int(rng.integers(2, 7))
            N_prime = int(rng.integers(1, N + 1))
            A = rng.integers(-9, 10, size=(N, N))
            B = np.zeros((N, N), dtype=np.int64)
            B[:N_prime] = rng.integers(-9, 10, size=(N_prime, N))
            v = max(1.0, max(math.hypot(*row) for row in A.tolist()))
            w = max(math.hypot(*row) for row in B.tolist())
            entries = [
                [{k: int(c) for k, c in (((0,), a), ((1,), b)) if c} for a, b in zip(ra, rb)]
                for ra, rb in zip(A, B)
            ]
            pencil = det_parametric(ParamMatrix.from_dense(entries, ("s",)), [N_prime])
            expected = (Matrix(A.tolist()) + s * Matrix(B.tolist())).det()
            self.assertEqual((pencil.as_expr() - expected).expand(), 0)
            for (j,), c in pencil.as_dict().items():
                bound = math.comb(N_prime, j) * v ** (N - j) * (v + w) ** j
                self.assertLessEqual(abs(int(c)), bound * (1 + 1e-9))

    def test_parametric_agrees_with_instantiation(self):
        rng = np.random.default_rng(23)
        for _ in range(10):
            N = int(rng.integers(1, 4))
            entries = [
                [
                    {k: int(c) for k, c in zip(((0, 0), (1, 0), (0, 1)), rng.integers(-4, 5, size=3)) if c}
                    for _ in range(N)
                ]
                for _ in range(N)
            ]
            M = ParamMatrix.from_dense(entries, ("s", "u0"))
            result = det_parametric(M, [N, N])
            for point in rng.integers(-6, 7, size=(5, 2)):
                point = tuple(int(x) for x in point)
                value = result.eval(dict(zip(result.gens, point)))
                self.assertEqual(int(value), det_exact(M.instantiate(point)))


class TestParametricDeterminant(unittest.TestCase):
    def test_single_parameter(self):
        s = symbols("s")
        M = ParamMatrix.from_dense([[{(1,): 1}, {(0,): 1}], [{(0,): 1}, {(1,): 1}]], ("s",))
        self.assertEqual(det_parametric(M, [2]).as_expr(), s**2 - 1)

    def test_two_parameters(self):
        s, u0 = symbols("s u0")
        M = ParamMatrix.from_dense(
            [[{(1, 0): 1, (0, 0): 2}, {(0, 1): 1}], [{(0, 1): 1}, {(1, 0): 3}]],
            ("s", "u0"),
        )
        result = det_parametric(M, [2, 2]).as_expr()
        self.assertEqual((result - (3 * s**2 + 6 * s - u0**2)).expand(), 0)

    def test_low_cap_is_detected(self):
        M = ParamMatrix.from_dense([[{(1,): 1}, {}], [{}, {(1,): 1}]], ("s",))
        with self.assertRaises(InterpolationError):
            det_parametric(M, [1])

    def test_specialize(self):
        M = ParamMatrix.from_dense(
            [[{(1, 0): 1}, {(0, 1): 1}], [{(0, 0): 1}, {(1, 0): 1}]],
            ("s", "u0"),
        )
        fixed = M.specialize(1, 5)
        self.assertEqual(fixed.params, ("s",))
        self.assertEqual(det_exact(fixed.instantiate((2,))), 4 - 5)

    def test_row_degrees(self):
        M = ParamMatrix.from_dense([[{(2,): 1}, {(0,): 1}], [{(0,): 1}, {(1,): 4}]], ("s",))
        self.assertEqual(M.row_degrees(0), [2, 1])


if __name__ == "__main__":
    unittest.main()
