"""
Exact univariate polynomial toolkit.

Polynomials are sympy :class:`~sympy.Poly` objects in one generator over ``ZZ``
(``QQ`` for intermediate quotients). Arithmetic over Z/pZ goes through
:mod:`sympy.polys.galoistools` on dense coefficient lists.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from sympy import Poly, QQ, Rational, ZZ, sturm, symbols
from sympy.polys.galoistools import (
    gf_degree,
    gf_eval,
    gf_factor_sqf,
    gf_from_int_poly,
    gf_gcd,
    gf_pow_mod,
    gf_sub,
)

from .exact_linalg import ParamMatrix, det_exact, det_parametric

logger = logging.getLogger(__name__)

T = symbols("t")
THETA = symbols("theta")

DEGENERATE = None
"""Outcome of :func:`modp_distinct_roots` when f vanishes identically mod p"""

# below this modulus roots are found by evaluating at every residue
_BRUTE_FORCE_MODULUS = 2000


def unipoly(coeffs: Sequence[int], gen=T, domain=ZZ) -> Poly:
    """Polynomial from coefficients listed lowest degree first."""
    return Poly(list(reversed(list(coeffs))) or [0], gen, domain=domain)


def coefficients(f: Poly) -> List[int]:
    """Integer coefficients, lowest degree first; empty for the zero polynomial."""
    if f.is_zero:
        return []
    return [int(c) for c in reversed(f.all_coeffs())]


def height(f: Poly) -> float:
    return max((math.log(abs(int(c))) for c in f.coeffs() if c), default=0.0)


def normalize(f: Poly) -> Poly:
    """Primitive integer multiple with positive leading coefficient."""
    if f.get_domain() != ZZ:
        f = f.clear_denoms(convert=True)[1]
    if f.is_zero:
        return f
    f = f.primitive()[1]
    return -f if f.LC() < 0 else f


def squarefree_part(f: Poly) -> Poly:
    if f.is_zero:
        raise ValueError("square-free part of the zero polynomial")
    if f.degree() <= 0:
        return Poly(1, *f.gens, domain=ZZ)
    return normalize(f.exquo(f.gcd(f.diff())))


def discriminant(f: Poly) -> int:
    """Discriminant from the (2D-1)x(2D-1) matrix of f and f'."""
    D = f.degree()
    if D < 1:
        raise ValueError("discriminant of a constant polynomial")
    alpha = coefficients(f)
    derivative = [i * alpha[i] for i in range(1, D + 1)]
    size = 2 * D - 1
    rows = []
    for shift in range(D - 1):
        rows.append([0] * shift + alpha + [0] * (size - shift - D - 1))
    for shift in range(D):
        rows.append([0] * shift + derivative + [0] * (size - shift - D))
    determinant = det_exact(rows)
    signed = (-1) ** (D * (D - 1) // 2) * determinant
    quotient, remainder = divmod(signed, alpha[D])
    if remainder:
        raise ArithmeticError("leading coefficient does not divide the discriminant determinant")
    return quotient


def sylvester_resultant(f: Poly, g: Poly) -> int:
    """Res(f, g) as the determinant of the Sylvester matrix."""
    d1, d2 = f.degree(), g.degree()
    if d1 < 0 or d2 < 0:
        raise ValueError("resultant with the zero polynomial")
    if d1 + d2 == 0:
        return 1
    size = d1 + d2
    f_row = [int(c) for c in f.all_coeffs()]
    g_row = [int(c) for c in g.all_coeffs()]
    rows = [[0] * s + f_row + [0] * (size - s - d1 - 1) for s in range(d2)]
    rows += [[0] * s + g_row + [0] * (size - s - d2 - 1) for s in range(d1)]
    return det_exact(rows)


@dataclass(frozen=True)
class SubresultantPair:
    R0: object
    R1: object

    def polynomial(self, gen=T) -> Poly:
        """``R0 + R1 * t`` for integer pairs."""
        return Poly([self.R1, self.R0], gen, domain=ZZ)

    def root(self) -> Fraction:
        if self.R1 == 0:
            raise ZeroDivisionError("first subresultant has no t term")
        return Fraction(-int(self.R0), int(self.R1))


def _subresultant_rows(f_rows: Sequence, g_rows: Sequence, zero=0):
    """Bordered Sylvester rows with columns ordered by decreasing power of t."""
    d1 = len(f_rows) - 1
    d2 = len(g_rows) - 1
    width = d1 + d2 - 1
    rows = []
    for shift in range(d1 - 1):
        rows.append([zero] * shift + list(g_rows) + [zero] * (width - shift - d2 - 1))
    for shift in range(d2 - 1):
        rows.append([zero] * shift + list(f_rows) + [zero] * (width - shift - d1 - 1))
    return rows


def _drop_column(rows, column):
    return [row[:column] + row[column + 1 :] for row in rows]


def first_subresultant(f: Poly, g: Poly) -> SubresultantPair:
    """``R0 + R1 t`` is the first subresultant of ``f`` and ``g``.

    R1 deletes the last column of the bordered matrix and R0 the second-to-last.
    """
    d1, d2 = f.degree(), g.degree()
    if d1 < 2 or d2 < 2:
        raise ValueError(f"first subresultant needs degrees >= 2, got {d1} and {d2}")
    rows = _subresultant_rows([int(c) for c in f.all_coeffs()], [int(c) for c in g.all_coeffs()])
    width = len(rows[0])
    return SubresultantPair(
        R0=det_exact(_drop_column(rows, width - 2)),
        R1=det_exact(_drop_column(rows, width - 1)),
    )


def first_subresultant_parametric(
    f: Poly, g: Poly, max_workers: Optional[int] = None
) -> SubresultantPair:
    """First subresultant of ``f(t)`` and ``g(t, theta)``; R0 and R1 are polynomials in theta.

    ``f`` has integer coefficients in ``t`` only; ``g`` is a polynomial in ``(t, theta)``.
    """
    d1 = f.degree()
    d2 = g.degree(T)
    if d1 < 2 or d2 < 2:
        raise ValueError(f"first subresultant needs degrees >= 2, got {d1} and {d2}")
    f_rows = [{(0,): int(c)} if c else {} for c in f.all_coeffs()]
    g_by_power = [dict() for _ in range(d2 + 1)]
    t_index = g.gens.index(T)
    theta_index = 1 - t_index
    for monomial, c in g.as_dict().items():
        g_by_power[d2 - monomial[t_index]][(monomial[theta_index],)] = int(c)
    rows = _subresultant_rows(f_rows, g_by_power, zero={})
    width = len(rows[0])
    results = []
    for column in (width - 2, width - 1):
        dense = _drop_column(rows, column)
        matrix = ParamMatrix.from_dense(dense, ("theta",))
        cap = sum(matrix.row_degrees(0))
        results.append(det_parametric(matrix, [cap], max_workers).as_expr())
    R0, R1 = (Poly(r, THETA, domain=ZZ) for r in results)
    return SubresultantPair(R0=R0, R1=R1)


def _sign_changes(values: Sequence) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def real_root_count(f: Poly) -> int:
    """Distinct real roots, counted with a Sturm sequence."""
    if f.is_zero:
        raise ValueError("real roots of the zero polynomial")
    if f.degree() <= 0:
        return 0
    sequence = sturm(f.as_expr(), f.gen)
    sequence = [Poly(s, f.gen, domain=QQ) for s in sequence]
    at_plus = [s.LC() for s in sequence]
    at_minus = [s.LC() * (-1) ** s.degree() for s in sequence]
    return _sign_changes(at_minus) - _sign_changes(at_plus)


def rational_roots(f: Poly) -> List[Fraction]:
    """All rational roots.

    A rational root p/q in lowest terms has q dividing the leading coefficient a, so
    a times the root is an integer; each isolated real root is refined until at most
    one such candidate remains and that candidate is tested exactly.
    """
    if f.is_zero:
        raise ValueError("rational roots of the zero polynomial")
    g = squarefree_part(f)
    if g.degree() <= 0:
        return []
    lead = abs(int(g.LC()))
    eps = Rational(1, 4 * lead)
    roots = []
    for (lo, hi), _ in g.intervals(eps=eps):
        lo_scaled = math.ceil(Fraction(int(lo.p), int(lo.q)) * lead)
        hi_scaled = math.floor(Fraction(int(hi.p), int(hi.q)) * lead)
        for numerator in range(lo_scaled, hi_scaled + 1):
            candidate = Fraction(numerator, lead)
            if g.eval(Rational(candidate.numerator, candidate.denominator)) == 0:
                roots.append(candidate)
    return sorted(set(roots))


def _reduce_mod(f: Poly, p: int) -> List[int]:
    return gf_from_int_poly([int(c) for c in f.all_coeffs()], p)


def _linear_part_mod(fp: List[int], p: int) -> List[int]:
    x = [1, 0]
    power = gf_pow_mod(x, p, fp, p, ZZ)
    return gf_gcd(fp, gf_sub(power, x, p, ZZ), p, ZZ)


def modp_distinct_roots(f: Poly, p: int) -> Optional[int]:
    """Number of distinct roots of f in Z/pZ, or ``DEGENERATE`` when f is 0 mod p."""
    fp = _reduce_mod(f, p)
    if not fp:
        return DEGENERATE
    if len(fp) == 1:
        return 0
    return gf_degree(_linear_part_mod(fp, p))


def modp_roots(f: Poly, p: int) -> Optional[List[int]]:
    fp = _reduce_mod(f, p)
    if not fp:
        return DEGENERATE
    if len(fp) == 1:
        return []
    if p <= _BRUTE_FORCE_MODULUS:
        return [r for r in range(p) if gf_eval(fp, r, p, ZZ) == 0]
    linear = _linear_part_mod(fp, p)
    if gf_degree(linear) <= 0:
        return []
    _, factors = gf_factor_sqf(linear, p, ZZ)
    return sorted(int(-factor[1] % p) for factor in factors)


def mignotte_bound(D: int, c: float) -> float:
    if D < 0 or c < 0:
        raise ValueError("Mignotte bound needs D >= 0 and c >= 0")
    return math.sqrt(D + 1) * 2.0**D * c


def cauchy_root_bound(f: Poly) -> float:
    if f.is_zero or f.degree() < 1:
        raise ValueError("Cauchy bound needs a polynomial of positive degree")
    alpha = coefficients(f)
    lead = abs(alpha[-1])
    return float(1 + Fraction(max(abs(a) for a in alpha[:-1]), lead))


def disc_of_squarefree_bound(D: int, Dprime: int, c: float) -> float:
    """Bound on log|disc g| for the square-free part g, of degree D', of a degree-D polynomial."""
    if c < 1:
        raise ValueError("need D >= D' >= 1 and c >= 1")
    return log_disc_of_squarefree_bound(D, Dprime, math.log(c))


def log_disc_of_squarefree_bound(D: int, Dprime: int, log_c: float) -> float:
    """:func:`disc_of_squarefree_bound` with the coefficient size given as ``log c``."""
    if not D >= Dprime >= 1 or log_c < 0:
        raise ValueError("need D >= D' >= 1 and log c >= 0")
    return Dprime * (D * math.log(2) + math.log(Dprime + 1) + log_c)
