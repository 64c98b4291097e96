"""
Exact determinants of integer matrices and of matrices whose entries are integer
polynomials in one or two parameters.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from sympy import Poly, ZZ, isprime, symbols

from .exceptions import InterpolationError

logger = logging.getLogger(__name__)

IntMatrix = List[List[int]]

# largest modulus whose products still fit a signed 64-bit integer
_NUMPY_MODULUS_LIMIT = 2**31


def _square_size(M: Sequence[Sequence[int]]) -> int:
    size = len(M)
    if size == 0 or any(len(row) != size for row in M):
        raise ValueError("determinant of a non-square matrix")
    return size


def det_exact(M: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) elimination over the integers."""
    size = _square_size(M)
    A = [[int(x) for x in row] for row in M]
    sign = 1
    previous = 1
    for k in range(size - 1):
        if A[k][k] == 0:
            for r in range(k + 1, size):
                if A[r][k]:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = A[k][k]
        pivot_row = A[k]
        for i in range(k + 1, size):
            row = A[i]
            lead = row[k]
            for j in range(k + 1, size):
                row[j] = (row[j] * pivot - lead * pivot_row[j]) // previous
        previous = pivot
    return sign * A[size - 1][size - 1]


def det_mod_p(M: Sequence[Sequence[int]], p: int) -> int:
    size = _square_size(M)
    if not isprime(p):
        raise ValueError(f"modulus {p} is not prime")
    if p < _NUMPY_MODULUS_LIMIT:
        return _det_mod_p_numpy(M, size, p)
    A = [[int(x) % p for x in row] for row in M]
    det = 1
    for k in range(size):
        pivot_row = next((r for r in range(k, size) if A[r][k]), None)
        if pivot_row is None:
            return 0
        if pivot_row != k:
            A[k], A[pivot_row] = A[pivot_row], A[k]
            det = -det
        det = det * A[k][k] % p
        inverse = pow(A[k][k], -1, p)
        for i in range(k + 1, size):
            factor = A[i][k] * inverse % p
            if factor:
                A[i] = [(a - factor * b) % p for a, b in zip(A[i], A[k])]
    return det % p


def _det_mod_p_numpy(M, size: int, p: int) -> int:
    A = np.array([[int(x) % p for x in row] for row in M], dtype=np.int64)
    det = 1
    for k in range(size):
        nonzero = np.nonzero(A[k:, k])[0]
        if nonzero.size == 0:
            return 0
        r = k + int(nonzero[0])
        if r != k:
            A[[k, r]] = A[[r, k]]
            det = -det
        pivot = int(A[k, k])
        det = det * pivot % p
        inverse = pow(pivot, -1, p)
        factors = (A[k + 1 :, k] * inverse) % p
        A[k + 1 :, k:] = (A[k + 1 :, k:] - np.outer(factors, A[k, k:]) % p) % p
    return det % p


def hadamard_bound(M: Sequence[Sequence[int]]) -> float:
    """Product of the Euclidean row norms; may be ``inf`` for huge matrices."""
    _square_size(M)
    log_bound = log_hadamard_bound(M)
    if log_bound == -math.inf:
        return 0.0
    try:
        return math.exp(log_bound)
    except OverflowError:
        return math.inf


def log_hadamard_bound(M: Sequence[Sequence[int]]) -> float:
    total = 0.0
    for row in M:
        squares = sum(int(x) * int(x) for x in row)
        if squares == 0:
            return -math.inf
        total += 0.5 * math.log(squares)
    return total


ParamPolynomial = Dict[Tuple[int, ...], int]


@dataclass
class ParamMatrix:
    """Square matrix whose entries are integer polynomials in ``params``.

    Rows are stored sparsely as ``{column: {parameter exponents: coefficient}}``.
    """

    size: int
    rows: List[Dict[int, ParamPolynomial]]
    params: Tuple[str, ...] = ("s", "u0")

    def __post_init__(self):
        if len(self.rows) != self.size:
            raise ValueError(f"expected {self.size} rows, got {len(self.rows)}")
        for row in self.rows:
            for column, entry in row.items():
                if not 0 <= column < self.size:
                    raise ValueError(f"column {column} outside a {self.size}x{self.size} matrix")
                if any(len(e) != len(self.params) for e in entry):
                    raise ValueError("entry exponent length differs from the parameter count")

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[Mapping]], params: Sequence[str]):
        rows = [
            {j: dict(entry) for j, entry in enumerate(row) if entry} for row in entries
        ]
        return cls(len(rows), rows, tuple(params))

    def instantiate(self, values: Sequence[int]) -> IntMatrix:
        matrix = [[0] * self.size for _ in range(self.size)]
        for i, row in enumerate(self.rows):
            target = matrix[i]
            for column, entry in row.items():
                target[column] = sum(
                    c * math.prod(v**e for v, e in zip(values, exponent))
                    for exponent, c in entry.items()
                )
        return matrix

    def specialize(self, index: int, value: int) -> "ParamMatrix":
        """Fix parameter ``index`` to ``value``, keeping the other parameters."""
        rows = []
        for row in self.rows:
            new_row = {}
            for column, entry in row.items():
                reduced: ParamPolynomial = {}
                for exponent, c in entry.items():
                    rest = exponent[:index] + exponent[index + 1 :]
                    reduced[rest] = reduced.get(rest, 0) + c * value ** exponent[index]
                reduced = {e: c for e, c in reduced.items() if c}
                if reduced:
                    new_row[column] = reduced
            rows.append(new_row)
        return ParamMatrix(self.size, rows, self.params[:index] + self.params[index + 1 :])

    def row_degrees(self, index: int) -> List[int]:
        """Largest degree of parameter ``index`` in each row."""
        return [
            max((e[index] for entry in row.values() for e in entry), default=0) for row in self.rows
        ]


def evaluate_determinants(matrices: Sequence[IntMatrix], max_workers: Optional[int] = None) -> List[int]:
    """Determinants of independent matrices, optionally on a process pool."""
    if max_workers and len(matrices) > 1:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            chunk = max(1, len(matrices) // (4 * max_workers))
            return list(pool.map(det_exact, matrices, chunksize=chunk))
    return [det_exact(m) for m in matrices]


def _interpolate_range(values: Sequence) -> List[Fraction]:
    """Monomial coefficients of the polynomial taking ``values[x]`` at x = 0, 1, ..."""
    differences = [Fraction(v) for v in values]
    count = len(differences)
    for level in range(1, count):
        for i in range(count - 1, level - 1, -1):
            differences[i] = (differences[i] - differences[i - 1]) / level
    coefficients = [Fraction(0)] * count
    for i in range(count - 1, -1, -1):
        # Horner step on the Newton form: multiply by (x - i) and add the divided difference
        shifted = [Fraction(0)] + coefficients[:-1]
        coefficients = [s - i * c for s, c in zip(shifted, coefficients)]
        coefficients[0] += differences[i]
    return coefficients


def _evaluate_polynomial(coefficients: Mapping[Tuple[int, ...], int], point: Sequence[int]) -> int:
    return sum(c * math.prod(v**e for v, e in zip(point, exponent)) for exponent, c in coefficients.items())


def det_parametric(
    M: ParamMatrix, degree_caps: Sequence[int], max_workers: Optional[int] = None
) -> Poly:
    """Exact determinant polynomial of ``M`` by evaluation on the grid ``0..cap`` per parameter.

    An extra evaluation at ``cap + 1`` in every parameter checks the caps.
    """
    caps = [int(c) for c in degree_caps]
    if len(caps) != len(M.params):
        raise ValueError(f"expected {len(M.params)} degree caps, got {len(caps)}")
    if not M.params:
        value = det_exact(M.instantiate(()))
        return Poly(value, symbols("t"), domain=ZZ)

    grid = list(product(*(range(c + 1) for c in caps)))
    logger.debug("interpolating a %dx%d determinant on %d points", M.size, M.size, len(grid))
    values = evaluate_determinants([M.instantiate(point) for point in grid], max_workers)
    table = dict(zip(grid, values))

    # tensor interpolation, one parameter at a time
    current = {point: Fraction(v) for point, v in table.items()}
    for axis in range(len(caps) - 1, -1, -1):
        grouped: Dict[Tuple, List[Fraction]] = {}
        for point in sorted(current):
            grouped.setdefault(point[:axis] + point[axis + 1 :], []).append(current[point])
        current = {}
        for rest, column in grouped.items():
            for degree, c in enumerate(_interpolate_range(column)):
                current[rest[:axis] + (degree,) + rest[axis:]] = c
    result: Dict[Tuple[int, ...], int] = {}
    for exponent, c in current.items():
        if c.denominator != 1:
            raise InterpolationError(f"non-integral coefficient {c} at {exponent}")
        if c:
            result[exponent] = int(c)

    check_point = tuple(c + 1 for c in caps)
    if _evaluate_polynomial(result, check_point) != det_exact(M.instantiate(check_point)):
        raise InterpolationError(f"determinant degree exceeds the caps {caps}")

    gens = symbols(" ".join(M.params)) if len(M.params) > 1 else (symbols(M.params[0]),)
    if not result:
        return Poly(0, *gens, domain=ZZ)
    return Poly.from_dict(result, *gens, domain=ZZ)
