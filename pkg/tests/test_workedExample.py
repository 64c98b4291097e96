import os
import unittest

from toric_elimination import ExecutionConfig
from toric_elimination.polynomials import parse_system
from toric_elimination.resultant_engine import monomial_reduction
from toric_elimination.rur import count_roots
from toric_elimination.univariate import coefficients, normalize

FULL_ENV_VAR = "TORIC_ELIM_FULL"
SYSTEM1 = os.path.join(os.path.dirname(__file__), "data", "system1.txt")


def load_system1():
    with open(SYSTEM1, encoding="utf-8") as handle:
        return parse_system(handle.read())


class TestSmallProductOfCoordinates(unittest.TestCase):
    # roots (2, 3, ±√5), so x1*x2*x3 = ±6√5
    system = "x1 - 2\nx2 - 3\nx3^2 - 5"

    def test_product_of_coordinates(self):
        h = normalize(monomial_reduction(parse_system(self.system), (1, 1, 1)))
        self.assertEqual(coefficients(h), [-180, 0, 1])

    def test_root_counts(self):
        counts = count_roots(parse_system(self.system))
        self.assertEqual((counts.complex, counts.real, counts.rational), (2, 2, 0))


# minutes to hours of determinant evaluation
@unittest.skipUnless(os.environ.get(FULL_ENV_VAR), f"set {FULL_ENV_VAR} to run the full pipeline")
class TestWorkedExample(unittest.TestCase):
    config = ExecutionConfig.from_environment()

    def test_product_of_coordinates(self):
        h = normalize(monomial_reduction(load_system1(), (1, 1, 1), self.config))
        self.assertEqual(h.degree(), 145)
        self.assertEqual(h.LC(), 268435456)
        magnitudes = {abs(int(c)) for c in h.all_coeffs()}
        for quoted in (138160373760, 30953963520, 2947435596503653060289376000, 48803823903916800, 8681150210659989300):
            self.assertIn(quoted, magnitudes)

    def test_root_counts(self):
        counts = count_roots(load_system1(), self.config)
        self.assertEqual((counts.complex, counts.real, counts.rational), (145, 11, 0))


if __name__ == "__main__":
    unittest.main()
