import unittest
from fractions import Fraction

from toric_elimination import SystemParseError
from toric_elimination.polynomials import (
    PolySystem,
    SparsePoly,
    evaluate,
    height_stats,
    parse_system,
)


class TestParseSystem(unittest.TestCase):
    def test_parses_terms_and_signs(self):
        system = parse_system("3*x1^2 - x2 + 7\n")
        f = system[0]
        self.assertEqual(system.nvars, 2)
        self.assertEqual(f.coefficient((2, 0)), 3)
        self.assertEqual(f.coefficient((0, 1)), -1)
        self.assertEqual(f.coefficient((0, 0)), 7)
        self.assertEqual(len(f), 3)

    def test_comments_and_blank_lines_are_skipped(self):
        system = parse_system("# header\n\nx1 - 1  # first\nx2\n")
        self.assertEqual(system.m, 2)

    def test_nvars_can_exceed_the_indices_used(self):
        system = parse_system("x1 - 2", nvars=3)
        self.assertEqual(system.nvars, 3)
        self.assertEqual(system[0].coefficient((1, 0, 0)), 1)

    def test_like_terms_are_combined(self):
        f = parse_system("x1*x2 + 2*x2*x1 - x1")[0]
        self.assertEqual(f.coefficient((1, 1)), 3)

    def test_zero_line_gives_zero_polynomial(self):
        self.assertTrue(parse_system("x1 - x1")[0].is_zero())

    def test_rational_coefficient_is_rejected_with_position(self):
        with self.assertRaises(SystemParseError) as context:
            parse_system("x1 + 1\n1/2*x1 + 1")
        self.assertEqual(context.exception.line, 2)
        self.assertEqual(context.exception.column, 1)

    def test_variable_outside_range_is_rejected(self):
        with self.assertRaises(SystemParseError):
            parse_system("x3 + 1", nvars=2)

    def test_dangling_operator_is_rejected(self):
        with self.assertRaises(SystemParseError):
            parse_system("x1 +")

    def test_empty_input_is_rejected(self):
        with self.assertRaises(SystemParseError):
            parse_system("# nothing\n")

    def test_text_round_trip(self):
        text = "x1^7*x2^8*x3^9 + 2*x1 - 3*x2^2 + 144"
        system = parse_system(text)
        self.assertEqual(parse_system(system.to_text(), nvars=3), system)


class TestSparsePoly(unittest.TestCase):
    def test_canonical_form_drops_zero_terms(self):
        f = SparsePoly.from_dict(2, {(1, 0): 2, (0, 1): 0, (0, 0): -1})
        self.assertEqual(f.support(), frozenset({(1, 0), (0, 0)}))

    def test_negative_exponent_is_rejected(self):
        with self.assertRaises(ValueError):
            SparsePoly.from_dict(1, {(-1,): 1})

    def test_ring_arithmetic(self):
        x = SparsePoly.variable(2, 0)
        y = SparsePoly.variable(2, 1)
        product = (x + y) * (x - y)
        self.assertEqual(product, x**2 - y**2)
        self.assertEqual((x * 3).coefficient((1, 0)), 3)

    def test_exact_evaluation(self):
        f = parse_system("2*x1^2 - x2 + 1")[0]
        self.assertEqual(evaluate(f, (Fraction(1, 2), 3)), Fraction(-3, 2))

    def test_evaluation_checks_arity(self):
        f = parse_system("x1 + x2")[0]
        with self.assertRaises(ValueError):
            f.evaluate((1,))


class TestPolySystem(unittest.TestCase):
    def test_mixed_arity_is_rejected(self):
        with self.assertRaises(ValueError):
            PolySystem.of(SparsePoly.variable(1, 0), SparsePoly.variable(2, 0))

    def test_height_stats(self):
        system = parse_system("144 + 2*x1 - 3*x2^2\n-51 + x1*x2")
        stats = height_stats(system)
        self.assertEqual(stats.D, 2)
        self.assertEqual(stats.k, 5)
        self.assertEqual(stats.m, 2)
        self.assertEqual(stats.n, 2)
        self.assertEqual(stats.mu, 3)
        self.assertEqual(stats.c, 144)
        self.assertAlmostEqual(stats.sigma, 4.969813299576001)


if __name__ == "__main__":
    unittest.main()
