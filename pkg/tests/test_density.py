import math
import os
import unittest
from dataclasses import replace

from flaky import flaky
from sympy import Poly, ZZ, primepi

from toric_elimination import BudgetExceededError, ExecutionConfig
from toric_elimination.density import (
    REPORT_DIGIT_LIMIT,
    T0,
    THEOREM_T_THRESHOLD,
    bad_prime_set,
    brute_force_roots,
    chebotarev_check,
    compute_aF,
    compute_AF,
    count_Nf,
    count_NF,
    density_constants,
    has_root_mod,
    koiran_test,
    nullstellensatz_bound,
    paper_report,
    prime_window_count,
    primes_in_window,
    simple_sieve,
)
from toric_elimination.polynomials import parse_system
from toric_elimination.rur import compute_rur, feasibility_check
from toric_elimination.univariate import T

DATA = os.path.join(os.path.dirname(__file__), "data")


def poly(expr):
    return Poly(expr, T, domain=ZZ)


class TestSieve(unittest.TestCase):
    def test_simple_sieve(self):
        self.assertEqual(simple_sieve(30).tolist(), [2, 3, 5, 7, 11, 13, 17, 19, 23, 29])
        self.assertEqual(len(simple_sieve(1)), 0)

    def test_open_window(self):
        self.assertEqual(primes_in_window(16, 54).tolist(), [17, 19, 23, 29, 31, 37, 41, 43, 47, 53])
        self.assertEqual(primes_in_window(0, 11).tolist(), [2, 3, 5, 7])
        self.assertEqual(primes_in_window(7, 7).tolist(), [])

    def test_window_matches_prime_counting(self):
        lo, hi = 10**6, 10**6 + 5000
        self.assertEqual(len(primes_in_window(lo, hi)), int(primepi(hi - 1) - primepi(lo)))

    def test_budget(self):
        with self.assertRaises(BudgetExceededError):
            primes_in_window(0, 1000, budget=100)


class TestConstants(unittest.TestCase):
    def test_aF(self):
        expected = 1 + 16 * (math.log(3) + math.log(2) + 64 * math.log(2))
        self.assertAlmostEqual(compute_aF(1, 2, 1, 1, math.log(3)), expected)
        self.assertAlmostEqual(compute_aF(1, 1, 1, 1, 0.0), 1 + 16 * 64 * math.log(2))
        self.assertAlmostEqual(nullstellensatz_bound(1, 2, 1, 1, math.log(3)), expected - 1)

    def test_aF_is_monotone(self):
        base = compute_aF(3, 3, 24, 243, math.log(144))
        self.assertTrue(math.isfinite(base))
        self.assertLess(base, compute_aF(3, 3, 24, 244, math.log(144)))
        self.assertLess(base, compute_aF(3, 4, 24, 243, math.log(144)))

    def test_AF(self):
        constants = compute_AF(1, 0.0, 0.0, 1)
        self.assertAlmostEqual(constants.B_F, 72 * math.sqrt(3) * (1 + math.sqrt(2)))
        self.assertAlmostEqual(constants.C_F, 2.0)
        self.assertAlmostEqual(constants.D_F, 25.0)
        B, C, D = constants.B_F, constants.C_F, constants.D_F
        expected = math.ceil(
            1296 * B**2 * math.log(B) ** 4 + 36 * C**2 * math.log(C) ** 2 + 2 * D * math.log(D)
        )
        self.assertEqual(constants.A_F, expected)
        self.assertGreater(compute_AF(2, 0.0, 0.0, 1).A_F, 4 * constants.A_F)

    def test_constants_without_a_representation_use_the_bounds(self):
        F = parse_system("x1^2 - 2\nx2 - 1")
        bounded = density_constants(F)
        observed = density_constants(F, compute_rur(F))
        self.assertGreater(bounded.inputs["log_disc_g"], 0.0)
        self.assertGreaterEqual(bounded.inputs["log_disc_g"], observed.inputs["log_disc_g"])
        self.assertGreaterEqual(bounded.inputs["sum_log_ai"], observed.inputs["sum_log_ai"])
        self.assertGreaterEqual(bounded.C_F, observed.C_F)
        self.assertGreaterEqual(bounded.D_F, observed.D_F)
        self.assertGreaterEqual(bounded.A_F, observed.A_F)
        self.assertEqual(bounded.B_F, observed.B_F)

    def test_theorem_constants(self):
        self.assertEqual(THEOREM_T_THRESHOLD, 4963041)
        self.assertAlmostEqual(T0, 1296 * ((1 + math.log(3)) / 3 + math.log(1296)))

    def test_certificates_stay_below_the_bound(self):
        # the difference of the two equations is a unit, so no prime is bad
        for text in ("x1\nx1 - 1", "x1 - 2\nx1 - 3", "x1 - 5\nx1 - 6"):
            F = parse_system(text)
            self.assertLessEqual(math.log(1), nullstellensatz_bound(1, 2, 1, 1, math.log(6)))
            self.assertEqual(bad_prime_set(F, 1, 50), [])

    def test_bad_primes_divide_the_certificate(self):
        # x1 - 1 and x1 + 5 meet exactly modulo the divisors of 6
        F = parse_system("x1 - 1\nx1 + 5")
        primes = bad_prime_set(F, 6, 50)
        self.assertEqual(primes, [2, 3])
        self.assertLessEqual(len(primes), compute_aF(1, 2, 1, 1, math.log(5)))


class TestPrimeWindows(unittest.TestCase):
    def test_tiny_window(self):
        window = prime_window_count(2, 2)
        self.assertEqual(window.count, 10)
        self.assertFalse(window.lemma_applies)
        self.assertEqual((window.lo, window.hi), (16, 54))

    def test_lemma_bound(self):
        window = prime_window_count(150, 150)
        self.assertTrue(window.lemma_applies)
        self.assertEqual(window.lemma_bound, math.floor(150**3 / (12 * 2 * math.log(150))))
        self.assertGreaterEqual(window.count, window.lemma_bound)
        self.assertTrue(window.holds)

    def test_further_pairs(self):
        for A, t in ((149, 149), (150, 160), (200, 150), (160, 170)):
            window = prime_window_count(A, t)
            self.assertTrue(window.lemma_applies)
            self.assertGreaterEqual(window.count, window.lemma_bound)

    def test_budget(self):
        with self.assertRaises(BudgetExceededError):
            prime_window_count(150, 150, budget=1000)


class TestReductionCounts(unittest.TestCase):
    def test_count_Nf(self):
        self.assertEqual(count_Nf(poly(T**2 + 1), 10), 3)
        self.assertEqual(count_Nf(poly(T - 1), 10), 4)
        self.assertEqual(count_Nf(poly(T**2 + 1), 100), 23)

    def test_chebotarev(self):
        record = chebotarev_check(poly(T**2 + 1), 1, 100)
        self.assertEqual((record.pi_t, record.N_f), (25, 23))
        self.assertEqual(record.lhs, 2.0)
        self.assertTrue(record.holds)
        self.assertAlmostEqual(record.rhs, 20 * (2 * math.log(100) + math.log(4)) + 2 * math.log(4))

    def test_chebotarev_sweep(self):
        cases = [
            (T - 1, 1),
            (T**2 + 1, 1),
            (T**2 - 2, 1),
            (T**3 - 2, 1),
            (T**3 - T - 1, 1),
            ((T**2 - 2) * (T**2 - 3), 2),
            ((T - 1) * (T**2 + 1), 2),
            (T**4 + 1, 1),
            (T**2 + T + 1, 1),
            ((T - 1) * (T - 2) * (T - 3), 3),
        ]
        for expr, i_f in cases:
            for t in (100, 1000):
                record = chebotarev_check(poly(expr), i_f, t)
                self.assertTrue(record.holds, msg=f"{expr} at t = {t}")
                self.assertGreater(record.slack, 0)

    def test_chebotarev_needs_square_free(self):
        with self.assertRaises(ValueError):
            chebotarev_check(poly((T - 1) ** 2), 1, 100)

    def test_brute_force_roots(self):
        F = parse_system("x1*x2 - 1\nx1 - x2")
        self.assertEqual(brute_force_roots(F, 5), 2)
        self.assertEqual(brute_force_roots(F, 2), 1)
        with self.assertRaises(BudgetExceededError):
            brute_force_roots(F, 101, budget=100)

    def test_count_NF(self):
        F = parse_system("x1 - 2")
        self.assertEqual(count_NF(F, compute_rur(F), 10).count, 4)
        G = parse_system("x1^2\nx1")
        self.assertEqual(count_NF(G, feasibility_check(G).rur, 10).count, 4)
        H = parse_system("x1 - 2\nx1 - 3")
        self.assertEqual(count_NF(H, feasibility_check(H).rur, 100).count, 0)

    def test_search_at_a_bad_prime_respects_the_budget(self):
        F = parse_system("x1 - 2\nx2 - 3")
        r = replace(compute_rur(F), a_i=[7, 1])
        self.assertTrue(has_root_mod(F, r, 7))
        with self.assertRaises(BudgetExceededError):
            has_root_mod(F, r, 7, budget=10)

    def test_count_NF_of_a_feasible_system_is_positive(self):
        F = parse_system("x1^2 - 2\nx2 - 1")
        self.assertGreater(count_NF(F, compute_rur(F), 30).count, 0)


class TestBadPrimes(unittest.TestCase):
    # each system has no complex root but meets modulo the listed primes
    cases = [
        ("x1 - 1\nx1 + 5", 6, [2, 3]),
        ("x1\nx1 - 6", 6, [2, 3]),
        ("x1 - 1\nx1 - 11", 10, [2, 5]),
        ("x1\nx1 - 15", 15, [3, 5]),
        ("x1\nx1 - 35", 35, [5, 7]),
        ("x1 - x2\nx1 + x2 - 1\nx2 - 2", 3, [3]),
        ("x1*x2 - 1\nx1 - 2\nx2 - 3", 5, [5]),
    ]

    def test_bad_prime_sets(self):
        for text, certificate, expected in self.cases:
            with self.subTest(system=text):
                F = parse_system(text)
                self.assertFalse(feasibility_check(F).feasible)
                primes = bad_prime_set(F, certificate, 50)
                self.assertEqual(primes, expected)
                self.assertTrue(all(certificate % p == 0 for p in primes))

    def test_good_primes_have_no_root(self):
        for text, _, expected in self.cases:
            F = parse_system(text)
            for p in (11, 13, 17):
                if p not in expected:
                    self.assertEqual(brute_force_roots(F, p), 0)

    @flaky(max_runs=3)
    def test_window_primes_avoid_the_bad_primes(self):
        config = ExecutionConfig(window_constant=150, t_range=(20, 30), max_window_primes=10)
        for text, _, _ in self.cases[:5]:
            verdict = koiran_test(parse_system(text), config)
            self.assertFalse(verdict.feasible)
            self.assertIsNone(verdict.witness_prime)


class TestKoiranTest(unittest.TestCase):
    config = ExecutionConfig(window_constant=150, t_range=(20, 30), max_window_primes=20)

    @flaky(max_runs=3)
    def test_root_modulo_every_prime(self):
        verdict = koiran_test(parse_system("x1^2\nx1"), self.config)
        self.assertTrue(verdict.feasible)
        self.assertEqual(verdict.primes_examined, 1)
        lo, hi = verdict.window
        self.assertTrue(lo < verdict.witness_prime < hi)

    @flaky(max_runs=3)
    def test_inconsistent_system(self):
        verdict = koiran_test(parse_system("x1 - 2\nx1 - 3"), self.config)
        self.assertFalse(verdict.feasible)
        self.assertEqual(verdict.primes_examined, 20)

    @flaky(max_runs=3)
    def test_feasible_system_with_irrational_roots(self):
        verdict = koiran_test(parse_system("x1^2 - 2\nx2 - 1"), self.config)
        self.assertTrue(verdict.feasible)

    def test_window_is_seeded(self):
        first = koiran_test(parse_system("x1 - 2\nx1 - 3"), self.config)
        second = koiran_test(parse_system("x1 - 2\nx1 - 3"), self.config)
        self.assertEqual((first.t, first.window), (second.t, second.window))
        self.assertTrue(20 <= first.t <= 30)


class TestWindowReport(unittest.TestCase):
    def test_largest_prime_has_at_most_55_digits(self):
        report = paper_report()
        self.assertEqual(report["digits"], 55)
        self.assertLessEqual(report["digits"], REPORT_DIGIT_LIMIT)
        self.assertTrue(report["digits_within_limit"])
        self.assertEqual(report["largest_prime_bound"], 8 * 10**20 * (10**7 + 2 * 10**11 + 1) ** 3 - 1)

    def test_report_mode_searches_nothing(self):
        with open(os.path.join(DATA, "system1.txt"), encoding="utf-8") as handle:
            F = parse_system(handle.read())
        verdict = koiran_test(F, ExecutionConfig(density_mode="paper-report"))
        self.assertIsNone(verdict.feasible)
        self.assertEqual(verdict.report["digits"], 55)
        self.assertTrue(math.isfinite(verdict.report["a_F"]))


if __name__ == "__main__":
    unittest.main()
