"""
Reductions modulo primes: explicit constants of the prime-density theorem, prime
windows ``(A t^3, A (t+1)^3)``, root counts of reductions and a window-search
feasibility test.

The Chebotarev-type inequality holds under the generalized Riemann hypothesis,
which is assumed and never checked.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Poly, primepi, primerange

from .bounds import hF_height_bound, rur_denominator_bound
from .exceptions import BudgetExceededError
from .execution_config import DefaultExecutionConfig, ExecutionConfig
from .polynomials import PolySystem, SparsePoly, height_stats
from .polytope import normalized_volume, q_polytope
from .rur import RurData, feasibility_check
from .univariate import (
    DEGENERATE,
    discriminant,
    log_disc_of_squarefree_bound,
    modp_distinct_roots,
    modp_roots,
    squarefree_part,
)

logger = logging.getLogger(__name__)

THEOREM_T_THRESHOLD = 4963041
"""Smallest t for which the window theorem is stated"""

T0 = 1296 * ((1 + math.log(3)) / 3 + math.log(1296))

REPORT_WINDOW_CONSTANT = 8 * 10**20
REPORT_T_RANGE = (10**7, 10**7 + 2 * 10**11)
REPORT_DIGIT_LIMIT = 55

# the lemma on window prime counts needs A, t > e^5
_LEMMA_THRESHOLD = math.exp(5)
_SQRT3_ONE_PLUS_SQRT2 = math.sqrt(3) * (1 + math.sqrt(2))


def simple_sieve(limit: int) -> np.ndarray:
    """Primes up to ``limit`` inclusive."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def primes_in_window(lo: int, hi: int, budget: Optional[int] = None) -> np.ndarray:
    """Primes in the open interval ``(lo, hi)`` by a segmented sieve."""
    start, stop = lo + 1, hi
    width = stop - start
    if width <= 0:
        return np.array([], dtype=np.int64)
    if budget is not None and width > budget:
        raise BudgetExceededError(f"window of width {width} exceeds the budget {budget}")
    if stop >= 2**62:
        raise BudgetExceededError(f"window end {stop} is beyond the sieve range")
    is_prime = np.ones(width, dtype=bool)
    if start < 2:
        is_prime[: min(width, 2 - start)] = False
    for p in simple_sieve(math.isqrt(stop - 1)):
        p = int(p)
        first = max(p * p, -(-start // p) * p)
        if first < stop:
            is_prime[first - start :: p] = False
    return np.nonzero(is_prime)[0].astype(np.int64) + start


@dataclass(frozen=True)
class DensityConstants:
    A_F: int
    B_F: float
    C_F: float
    D_F: float
    a_F: Optional[float] = None
    t0: float = T0
    threshold: int = THEOREM_T_THRESHOLD
    inputs: Dict[str, float] = field(default_factory=dict)


def compute_aF(n: int, m: int, D: int, V_F: int, sigma: float) -> float:
    return 1 + 2 * (n + 1) ** 3 * D * V_F * (
        sigma + math.log(m) + 2 ** (2 * n + 4) * D * math.log(D + 1)
    )


def nullstellensatz_bound(n: int, m: int, D: int, V_F: int, sigma: float) -> float:
    """Bound on log a for a certificate ``g_1 f_1 + ... + g_m f_m = a`` of an infeasible system."""
    return compute_aF(n, m, D, V_F, sigma) - 1


def compute_AF(V_F: int, log_disc_g: float, sum_log_ai: float, n: int) -> DensityConstants:
    B = 72 * _SQRT3_ONE_PLUS_SQRT2 * V_F
    C = 24 * _SQRT3_ONE_PLUS_SQRT2 * log_disc_g + 2
    D = 12 * V_F * (log_disc_g + sum_log_ai + n) + 13
    A = math.ceil(
        1296 * B**2 * math.log(B) ** 4 + 36 * C**2 * math.log(C) ** 2 + 2 * D * math.log(D)
    )
    inputs = dict(V_F=V_F, log_disc_g=log_disc_g, sum_log_ai=sum_log_ai, n=n)
    return DensityConstants(A_F=A, B_F=B, C_F=C, D_F=D, inputs=inputs)


def density_constants(F: PolySystem, rur: Optional[RurData] = None) -> DensityConstants:
    """Both constants for F.

    The discriminant and denominators come from the verified factor when a representation
    is given; without one they are replaced by their a priori bounds.
    """
    stats = height_stats(F)
    V_F = normalized_volume(q_polytope(F)).normalized_volume
    if rur is not None and rur.verified_factor.degree() > 0:
        log_disc = math.log(abs(discriminant(rur.verified_factor)))
        sum_log_a = sum(math.log(a) for a in rur.a_i)
    elif rur is None and stats.mu:
        sigma_h = max(hF_height_bound(stats, V_F).value, 0.0)
        log_disc = log_disc_of_squarefree_bound(V_F, V_F, sigma_h)
        sum_log_a = stats.n * max(rur_denominator_bound(V_F, sigma_h).value, 0.0)
    else:
        # no root to separate, or the zero system
        log_disc, sum_log_a = 0.0, 0.0
    constants = compute_AF(V_F, log_disc, sum_log_a, stats.n)
    a_F = compute_aF(stats.n, stats.m, stats.D, V_F, stats.sigma)
    inputs = dict(constants.inputs, m=stats.m, D=stats.D, sigma=stats.sigma)
    return DensityConstants(constants.A_F, constants.B_F, constants.C_F, constants.D_F, a_F, inputs=inputs)


@dataclass(frozen=True)
class PrimeWindow:
    A: int
    t: int
    lo: int
    hi: int
    count: int
    lemma_bound: int
    lemma_applies: bool

    @property
    def holds(self) -> bool:
        return not self.lemma_applies or self.count >= self.lemma_bound


def window_bounds(A: int, t: int) -> Tuple[int, int]:
    return A * t**3, A * (t + 1) ** 3


def lemma_bound(A: int, t: int) -> int:
    return math.floor(A * t**2 / (12 * (math.log(t) + math.log(A))))


def prime_window_count(A: int, t: int, budget: int = DefaultExecutionConfig.budget) -> PrimeWindow:
    if A < 1 or t < 1:
        raise ValueError(f"window needs A >= 1 and t >= 1, got A={A}, t={t}")
    lo, hi = window_bounds(A, t)
    count = len(primes_in_window(lo, hi, budget))
    applies = A > _LEMMA_THRESHOLD and t > _LEMMA_THRESHOLD
    bound = lemma_bound(A, t) if A > 1 or t > 1 else 0
    window = PrimeWindow(A, t, lo, hi, count, bound, applies)
    if not window.holds:
        logger.warning("window (%d, %d) has %d primes, below the lemma bound %d", lo, hi, count, bound)
    return window


def count_Nf(f: Poly, t: int) -> int:
    """Distinct roots of the reductions of f modulo every prime up to t."""
    if f.is_zero:
        raise ValueError("root count of the zero polynomial")
    total = 0
    for p in primerange(2, t + 1):
        roots = modp_distinct_roots(f, int(p))
        if roots is not DEGENERATE:
            total += roots
    return total


@dataclass(frozen=True)
class ChebotarevRecord:
    i_f: int
    t: int
    pi_t: int
    N_f: int
    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs < self.rhs

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs


def chebotarev_check(f: Poly, i_f: int, t: int) -> ChebotarevRecord:
    if f.degree() < 1:
        raise ValueError("the inequality needs a polynomial of positive degree")
    if squarefree_part(f).degree() != f.degree():
        raise ValueError("the inequality needs a square-free polynomial")
    D = f.degree()
    log_disc = math.log(abs(discriminant(f)))
    pi_t = int(primepi(t))
    N_f = count_Nf(f, t)
    rhs = 2 * math.sqrt(t) * (D * math.log(t) + log_disc) + D * log_disc
    record = ChebotarevRecord(i_f, t, pi_t, N_f, float(abs(i_f * pi_t - N_f)), rhs)
    if not record.holds:
        logger.warning("GRH-conditional inequality violated (or bug) at t = %d", t)
    return record


def _power_mod(values: np.ndarray, exponent: int, p: int) -> np.ndarray:
    result = np.ones_like(values)
    base = values % p
    while exponent:
        if exponent & 1:
            result = result * base % p
        base = base * base % p
        exponent >>= 1
    return result


def _evaluate_mod(f: SparsePoly, grid: np.ndarray, p: int) -> np.ndarray:
    total = np.zeros(len(grid), dtype=np.int64)
    for exponent, coeff in f.terms:
        term = np.full(len(grid), coeff % p, dtype=np.int64)
        for j, e in enumerate(exponent):
            if e:
                term = term * _power_mod(grid[:, j], e, p) % p
        total = (total + term) % p
    return total


def brute_force_roots(F: PolySystem, p: int, budget: int = DefaultExecutionConfig.budget) -> int:
    """Number of points of ``(Z/pZ)^n`` at which every polynomial of F vanishes."""
    n = F.nvars
    if p**n > budget:
        raise BudgetExceededError(f"{p}^{n} points exceed the budget {budget}")
    axes = np.meshgrid(*([np.arange(p, dtype=np.int64)] * n), indexing="ij")
    grid = np.stack([axis.ravel() for axis in axes], axis=1)
    vanishing = np.ones(len(grid), dtype=bool)
    for f in F:
        vanishing &= _evaluate_mod(f, grid, p) == 0
    return int(vanishing.sum())


def bad_prime_set(
    F: PolySystem, certificate_a: Optional[int], limit: int, budget: int = DefaultExecutionConfig.budget
) -> List[int]:
    """Primes up to ``limit`` modulo which F has a root."""
    primes = [int(p) for p in primerange(2, limit + 1) if brute_force_roots(F, int(p), budget)]
    if certificate_a is not None:
        strays = [p for p in primes if certificate_a % p]
        if strays:
            logger.warning("primes %s do not divide the certificate %d", strays, certificate_a)
    return primes


@dataclass(frozen=True)
class NFRecord:
    count: int
    count_h: int
    """Root count of the verified factor alone"""
    excluded_primes: Tuple[int, ...]
    """Primes dividing a denominator, counted by exhaustive search"""
    correction_bound: float


def count_NF(
    F: PolySystem, r: RurData, t: int, budget: int = DefaultExecutionConfig.budget
) -> NFRecord:
    """Roots of F modulo the primes up to t, through its rational univariate representation."""
    verified = r.verified_factor
    count_h = count_Nf(verified, t)
    excluded = []
    total = 0
    for p in primerange(2, t + 1):
        p = int(p)
        if any(a % p == 0 for a in r.a_i):
            excluded.append(p)
            total += brute_force_roots(F, p, budget)
            continue
        roots = modp_distinct_roots(verified, p)
        total += 0 if roots is DEGENERATE else roots
    correction = r.V_F * sum(math.log(a) + 1 for a in r.a_i)
    return NFRecord(total, count_h, tuple(excluded), correction)


def _lift(r: RurData, theta: int, p: int) -> Tuple[int, ...]:
    return tuple(
        int(h.eval(theta)) * pow(a, -1, p) % p for h, a in zip(r.h_i, r.a_i)
    )


def _vanishes_mod(F: PolySystem, point: Sequence[int], p: int) -> bool:
    for f in F:
        total = 0
        for exponent, coeff in f.terms:
            term = coeff
            for x, e in zip(point, exponent):
                term = term * pow(x, e, p) % p
            total += term
        if total % p:
            return False
    return True


def has_root_mod(F: PolySystem, r: RurData, p: int, budget: int = DefaultExecutionConfig.budget) -> bool:
    """Whether F has a root modulo p found through the representation, or by search at bad primes."""
    if any(a % p == 0 for a in r.a_i):
        return brute_force_roots(F, p, budget) > 0
    roots = modp_roots(r.verified_factor, p)
    if roots is DEGENERATE:
        return False
    return any(_vanishes_mod(F, _lift(r, theta, p), p) for theta in roots)


@dataclass
class KoiranVerdict:
    feasible: Optional[bool]
    """``None`` in report mode, where no window is searched"""
    mode: str
    t: Optional[int] = None
    window: Optional[Tuple[int, int]] = None
    primes_examined: int = 0
    witness_prime: Optional[int] = None
    report: Dict[str, object] = field(default_factory=dict)


def paper_report(F: Optional[PolySystem] = None) -> Dict[str, object]:
    """Window constants of the theorem and the size of the largest prime it may pick."""
    t_max = REPORT_T_RANGE[1]
    largest = REPORT_WINDOW_CONSTANT * (t_max + 1) ** 3 - 1
    digits = len(str(largest))
    report: Dict[str, object] = dict(
        A=REPORT_WINDOW_CONSTANT,
        t_range=REPORT_T_RANGE,
        largest_prime_bound=largest,
        digits=digits,
        digits_within_limit=digits <= REPORT_DIGIT_LIMIT,
        t0=T0,
        threshold=THEOREM_T_THRESHOLD,
    )
    if F is not None:
        stats = height_stats(F)
        V_F = normalized_volume(q_polytope(F)).normalized_volume
        report["a_F"] = compute_aF(stats.n, stats.m, stats.D, V_F, stats.sigma)
    return report


def koiran_test(F: PolySystem, config: ExecutionConfig = DefaultExecutionConfig) -> KoiranVerdict:
    """Feasibility decided by searching one prime window for a prime modulo which F has a root."""
    if config.density_mode == "paper-report":
        return KoiranVerdict(None, config.density_mode, report=paper_report(F))
    rng = np.random.default_rng(config.seed)
    lo, hi = config.t_range
    t = int(rng.integers(lo, hi + 1))
    window = window_bounds(config.window_constant, t)
    primes = primes_in_window(*window, budget=config.budget)[: config.max_window_primes]
    outcome = feasibility_check(F, config)
    if outcome.rur is None:
        return KoiranVerdict(True, config.density_mode, t, window, 0, None)
    for examined, p in enumerate(primes, start=1):
        p = int(p)
        if has_root_mod(F, outcome.rur, p, config.budget):
            logger.info("F has a root modulo %d", p)
            return KoiranVerdict(True, config.density_mode, t, window, examined, p)
    return KoiranVerdict(False, config.density_mode, t, window, len(primes), None)
