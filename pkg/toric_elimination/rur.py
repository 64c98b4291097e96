"""
Rational univariate representations of the roots of a square system.

Every point is written as ``(h_1(theta)/a_1, ..., h_n(theta)/a_n)`` at the roots
``theta`` of the square-free eliminant. Points are then checked exactly against
the system, which discards roots brought in by extraneous matrix factors.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Poly, QQ, Rational, ZZ

from .bounds import BoundReport, check, rur_denominator_bound
from .exceptions import EliminationError, InfiniteRootSetError, PerturbationError
from .execution_config import DefaultExecutionConfig, ExecutionConfig
from .polynomials import PolySystem, evaluate
from .polytope import normalized_volume, q_polytope
from .resultant_engine import UnivariateReduction, square_up, univariate_reduction
from .univariate import (
    T,
    THETA,
    coefficients,
    first_subresultant_parametric,
    height,
    normalize,
    rational_roots,
    real_root_count,
    squarefree_part,
    unipoly,
)

logger = logging.getLogger(__name__)

Branch = Tuple[Poly, Poly]


@dataclass
class RurData:
    u: Tuple[int, ...]
    h: Poly
    """The eliminant, as a polynomial in theta"""
    h_i: List[Poly]
    a_i: List[int]
    verified_factor: Poly
    V_F: int = 1
    branches: Dict[int, List[Tuple[int, int]]] = field(default_factory=dict)
    """Per coordinate, the ``(lambda, factor degree)`` pieces the modulus was split into"""
    reduction: Optional[UnivariateReduction] = field(default=None, repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.h_i)

    def points_at(self, theta) -> Tuple[Fraction, ...]:
        """Exact coordinates at a rational ``theta``."""
        theta = Fraction(theta)
        value = Rational(theta.numerator, theta.denominator)
        points = []
        for p, a in zip(self.h_i, self.a_i):
            result = p.eval(value)
            points.append(Fraction(int(result.p), int(result.q)) / a)
        return tuple(points)


def _as_theta(f: Poly, domain=QQ) -> Poly:
    return unipoly(coefficients(f), gen=THETA, domain=ZZ).set_domain(domain)


def _as_t(f: Poly) -> Poly:
    return unipoly(coefficients(f), gen=T)


def _theta(domain=QQ) -> Poly:
    return Poly(THETA, THETA, domain=domain)


def _squarefree_or_one(f: Poly) -> Poly:
    return squarefree_part(f) if f.degree() > 0 else Poly(1, f.gen, domain=ZZ)


def _linear_root(f: Poly) -> Fraction:
    c0, c1 = coefficients(f)
    return Fraction(-c0, c1)


def _coordinate(
    reduction: UnivariateReduction, i: int, modulus: Poly, lam: int, limit: int, record: List
) -> List[Branch]:
    """Branches ``(factor, zeta_i mod factor)`` covering ``modulus``."""
    if modulus.degree() <= 0:
        return []
    if lam > limit:
        logger.warning("coordinate %d undetermined on a factor of degree %d", i + 1, modulus.degree())
        record.append((lam, modulus.degree()))
        return [(modulus, Poly(0, THETA, domain=QQ))]
    if reduction.u[i] == lam:
        # a zero weight would expose roots at infinity
        return _coordinate(reduction, i, modulus, lam + 1, limit + 1, record)
    minus =tuple(w - lam if j == i else w for j, w in enumerate(reduction.u))
    plus = tuple(w + lam if j == i else w for j, w in enumerate(reduction.u))
    q_minus = _as_t(_squarefree_or_one(reduction.eliminant(minus)))
    q_star = _as_t(_squarefree_or_one(reduction.eliminant(plus)))
    theta = _theta()
    scale = Rational(1, lam)
    if q_minus.degree() == 1:
        root = _linear_root(q_minus)
        value = (theta - Rational(root.numerator, root.denominator)).mul_ground(scale)
        record.append((lam, modulus.degree()))
        return [(modulus, value.rem(modulus))]
    if q_star.degree() == 1:
        root = _linear_root(q_star)
        value = (Rational(root.numerator, root.denominator) - theta).mul_ground(scale)
        record.append((lam, modulus.degree()))
        return [(modulus, value.rem(modulus))]
    if q_minus.degree() < 1 or q_star.degree() < 1:
        return _coordinate(reduction, i, modulus, lam + 1, limit, record)

    reflected = Poly(q_star.as_expr().subs(T, 2 * THETA - T), T, THETA, domain=ZZ)
    pair = first_subresultant_parametric(q_minus, reflected, reduction.eliminator.config.max_workers)
    r0 = pair.R0.set_domain(QQ).rem(modulus)
    r1 = pair.R1.set_domain(QQ).rem(modulus)
    degenerate = r1.gcd(modulus)
    generic = modulus.exquo(degenerate)
    branches: List[Branch] = []
    if generic.degree() > 0:
        inverse = r1.rem(generic).invert(generic)
        value = (theta + r0 * inverse).mul_ground(scale).rem(generic)
        record.append((lam, generic.degree()))
        branches.append((generic, value))
    if degenerate.degree() > 0:
        logger.info("coordinate %d degenerate on a factor of degree %d at lambda %d", i + 1, degenerate.degree(), lam)
        branches.extend(_coordinate(reduction, i, degenerate, lam + 1, limit, record))
    return branches


def _combine(branches: Sequence[Branch], modulus: Poly) -> Poly:
    """Chinese remaindering of values given on coprime factors of ``modulus``."""
    total = Poly(0, THETA, domain=QQ)
    for factor, value in branches:
        cofactor = modulus.exquo(factor)
        if cofactor.degree() > 0:
            idempotent = (cofactor * cofactor.rem(factor).invert(factor)).rem(modulus)
        else:
            idempotent = Poly(1, THETA, domain=QQ)
        total += value * idempotent
    return total.rem(modulus)


def _integral(g: Poly) -> Tuple[int, Poly]:
    """Least positive ``a`` with ``a * g`` integral, and that product."""
    if g.is_zero:
        return 1, Poly(0, THETA, domain=ZZ)
    denominator, integral = g.clear_denoms(convert=True)
    return int(denominator), integral


def compute_rur(
    F: PolySystem,
    config: ExecutionConfig = DefaultExecutionConfig,
    reduction: Optional[UnivariateReduction] = None,
) -> RurData:
    if F.m != F.nvars:
        raise ValueError(f"a rational univariate representation needs a square system, got {F.m}x{F.nvars}")
    if reduction is None:
        reduction = univariate_reduction(F, config)
    n = F.nvars
    h = _as_theta(reduction.h, ZZ)
    u = reduction.u
    if h.degree() <= 0:
        zero = Poly(0, THETA, domain=ZZ)
        return RurData(u, h, [zero] * n, [1] * n, Poly(1, THETA, domain=ZZ), reduction.V_F, {}, reduction)
    modulus = squarefree_part(h).set_domain(QQ)
    if n == 1:
        # theta = u_1 * zeta_1
        g_list = [_theta().mul_ground(Rational(1, u[0]))]
        branches = {0: [(1, modulus.degree())]}
    else:
        limit = 2 + reduction.V_F**2
        g_list = []
        branches = {}
        for i in range(n):
            record: List[Tuple[int, int]] = []
            g_list.append(_combine(_coordinate(reduction, i, modulus, 1, limit, record), modulus))
            branches[i] = record
    a_i, h_i = [], []
    for g in g_list:
        a, integral = _integral(g)
        a_i.append(a)
        h_i.append(integral)
    data = RurData(u, h, h_i, a_i, Poly(1, THETA, domain=ZZ), reduction.V_F, branches, reduction)
    data.verified_factor = verify_roots(F, data)
    logger.info("verified factor of degree %d out of %d", data.verified_factor.degree(), modulus.degree())
    return data


def verify_roots(F: PolySystem, r: RurData) -> Poly:
    """Largest factor of the square-free eliminant whose roots give points of ``F``."""
    if r.h.degree() <= 0:
        return Poly(1, THETA, domain=ZZ)
    v = squarefree_part(r.h).set_domain(QQ)
    coordinates = [
        p.set_domain(QQ).mul_ground(Rational(1, a)).rem(v) for p, a in zip(r.h_i, r.a_i)
    ]
    powers: Dict[Tuple[int, int], Poly] = {}

    def power(i: int, e: int) -> Poly:
        if e == 0:
            return Poly(1, THETA, domain=QQ)
        if (i, e) not in powers:
            powers[(i, e)] = (power(i, e - 1) * coordinates[i]).rem(v)
        return powers[(i, e)]

    for f in F:
        if v.degree() <= 0:
            break
        value = Poly(0, THETA, domain=QQ)
        for exponent, coeff in f.terms:
            term = Poly(coeff, THETA, domain=QQ)
            for i, e in enumerate(exponent):
                if e:
                    term = (term * power(i, e)).rem(v)
            value += term
        value = value.rem(v)
        if not value.is_zero:
            v = v.gcd(value)
    return normalize(v) if v.degree() > 0 else Poly(1, THETA, domain=ZZ)


@dataclass
class FeasibilityResult:
    feasible: bool
    rur: Optional[RurData]
    verified_factor: Poly
    system: PolySystem
    """The square system whose eliminant was computed"""


def _nonzero(F: PolySystem) -> List:
    return [f for f in F if not f.is_zero()]


def feasibility_check(
    F: PolySystem,
    config: ExecutionConfig = DefaultExecutionConfig,
    against: Optional[PolySystem] = None,
) -> FeasibilityResult:
    """Decide whether F has a complex root; points are verified against ``against`` (F by default)."""
    against = against or F
    polys = _nonzero(F)
    if not polys:
        return FeasibilityResult(True, None, Poly(THETA, THETA, domain=ZZ), F)
    system = PolySystem(tuple(polys))
    n, m = system.nvars, system.m
    if m <= n:
        squared = [square_up(system, ())] if m < n else [system]
    else:
        V_F = normalized_volume(q_polytope(system)).normalized_volume
        size = m * V_F + 1 + n * config.square_up_attempts
        S = range(1, size + 1)
        squared = [square_up(system, S, offset=k * n) for k in range(config.square_up_attempts)]
    error: Optional[EliminationError] = None
    for candidate in squared:
        try:
            rur = compute_rur(candidate, config)
        except PerturbationError as failure:
            logger.info("square system rejected: %s", failure)
            error = failure
            continue
        verified = verify_roots(against, rur)
        rur.verified_factor = verified
        return FeasibilityResult(verified.degree() > 0, rur, verified, candidate)
    raise error


@dataclass(frozen=True)
class RootCounts:
    complex: int
    real: int
    rational: int


def count_roots(F: PolySystem, config: ExecutionConfig = DefaultExecutionConfig, check_dimension: bool = False) -> RootCounts:
    """Distinct complex, real and rational roots of a system with finitely many roots.

    Systems with fewer equations than unknowns, and any system when ``check_dimension``
    is set, go through the dimension algorithm first.
    """
    if F.is_zero():
        raise InfiniteRootSetError("every polynomial is zero")
    if check_dimension or len(_nonzero(F)) < F.nvars:
        from .dimension import compute_dimension

        dim = compute_dimension(F, config).dim
        if dim > 0:
            raise InfiniteRootSetError(f"the zero set has dimension {dim}")
        if dim < 0:
            return RootCounts(0, 0, 0)
    result = feasibility_check(F, config)
    verified = result.verified_factor
    if verified.degree() <= 0:
        return RootCounts(0, 0, 0)
    real = real_root_count(verified)
    rational = 0
    for theta in rational_roots(verified):
        point = result.rur.points_at(theta)
        if all(evaluate(f, point) == 0 for f in F):
            rational += 1
        else:
            logger.warning("rational root %s does not give a point of the system", theta)
    return RootCounts(verified.degree(), real, rational)


def rur_height_report(r: RurData) -> BoundReport:
    """Largest of ``log a_i`` and the heights of the ``h_i`` against the denominator bound."""
    sigma_h = height(r.h)
    observed = max(
        [math.log(a) for a in r.a_i] + [height(p) for p in r.h_i if not p.is_zero], default=0.0
    )
    return check(rur_denominator_bound(max(r.V_F, 1), sigma_h), observed)
