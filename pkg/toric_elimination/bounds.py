"""
Explicit quantitative estimates: coefficient growth of the perturbed resultant,
heights of the univariate reduction and of root coordinates, matrix size constants.

Every bound is evaluated in log space so that the huge powers involved never
overflow, then compared with the computed quantity after the bound is inflated
by the factor ``SLACK``.
"""
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Dict, Optional, Sequence

from .polynomials import HeightStats

logger = logging.getLogger(__name__)

SLACK = 1 + 1e-9

_LOG_SLACK = math.log(SLACK)


@dataclass(frozen=True)
class BoundReport:
    name: str
    inputs: Dict[str, object] = field(default_factory=dict)
    value: float = math.inf
    """Bound in its natural units (a magnitude, or a logarithm for height bounds)"""
    log_scale: bool = False
    """When true ``value`` is the logarithm of a magnitude bound"""
    checked_against: Optional[float] = None
    holds: Optional[bool] = None

    @property
    def magnitude(self) -> float:
        if not self.log_scale:
            return self.value
        try:
            return math.exp(self.value)
        except OverflowError:
            return math.inf

    def check(self, observed) -> "BoundReport":
        """Record ``observed`` (in the same units as the bound, magnitudes as exact ints)."""
        return check(self, observed)


def check(report: BoundReport, observed) -> BoundReport:
    if report.log_scale:
        observed_log = math.log(abs(observed)) if observed else -math.inf
        holds = observed_log <= report.value + _LOG_SLACK
        recorded = observed_log
    else:
        holds = observed <= report.value * SLACK if report.value >= 0 else observed <= report.value
        recorded = float(observed)
    if not holds:
        logger.warning("%s bound violated: %s > %s", report.name, recorded, report.value)
    return replace(report, checked_against=recorded, holds=holds)


@dataclass(frozen=True)
class MatrixConstants:
    m_F: float
    """Bound on the size of the toric resultant matrix"""
    r_F: int
    """Bound on the degree in s of the perturbed determinant"""


def matrix_constants(n: int, V_F: int) -> MatrixConstants:
    if n < 1 or V_F < 1:
        raise ValueError("matrix constants need n >= 1 and V_F >= 1")
    m_F = math.exp(0.125) * math.exp(n) / math.sqrt(n + 1) * V_F
    return MatrixConstants(m_F=m_F, r_F=(n + 1) * V_F)


def log_growth_bound(m_F, V_F, i, norm_u, mu, c, c_star) -> float:
    if i < 0 or i > V_F:
        return -math.inf
    log_norm_term = 0.0
    if V_F - i:
        log_norm_term = (V_F - i) * math.log(norm_u) if norm_u > 0 else -math.inf
    return (
        13 / 12
        - 0.5 * math.log(math.pi)
        + 0.5 * math.log(m_F + 1)
        + (m_F - i / 2) * math.log(4)
        + log_norm_term
        + m_F * (0.5 * math.log(mu) + math.log(c + c_star))
        + math.log(math.comb(V_F, i))
    )


def growth_bound(m_F, V_F, i, norm_u, mu, c, c_star) -> BoundReport:
    """Bound on the coefficient of u0^i in the perturbed resultant."""
    return BoundReport(
        name="growth",
        inputs=dict(m_F=m_F, V_F=V_F, i=i, norm_u=norm_u, mu=mu, c=c, c_star=c_star),
        value=log_growth_bound(m_F, V_F, i, norm_u, mu, c, c_star),
        log_scale=True,
    )


def _size_expression(stats: HeightStats, V_F: int, log_root_two_factor: float, over_determined: Optional[bool]):
    m_F = matrix_constants(stats.n, V_F).m_F
    if over_determined is None:
        over_determined = stats.m > stats.n
    c = stats.c
    if over_determined:
        m = stats.m
        log_k = math.log(m * (m * V_F + 1) ** (m - 1) * c + 1)
    else:
        log_k = math.log(c + 1)
    return (
        13 / 6
        - math.log(math.pi)
        + 0.5 * math.log(m_F + 1)
        + V_F * math.log(2)
        + m_F * math.log(4)
        + V_F * log_root_two_factor
        + m_F * 0.5 * math.log(stats.mu)
        + m_F * log_k
    )


def root_size_bound(stats: HeightStats, V_F: int, over_determined: Optional[bool] = None) -> BoundReport:
    """Bound on |log|x_i|| for a chosen point on every component of the zero set.

    ``over_determined`` selects the m > n form; by default it follows ``stats``.
    """
    value = _size_expression(stats, V_F, 0.5 * math.log(2), over_determined)
    return BoundReport(
        name="root_size",
        inputs=dict(n=stats.n, m=stats.m, V_F=V_F, mu=stats.mu, c=stats.c),
        value=value,
    )


def hF_height_bound(stats: HeightStats, V_F: int) -> BoundReport:
    """Bound on the height of the univariate reduction h_F."""
    n = stats.n
    log_factor = 0.5 * math.log(n) + n * math.log(math.comb(V_F, 2) + 1)
    return BoundReport(
        name="hF_height",
        inputs=dict(n=n, m=stats.m, V_F=V_F, mu=stats.mu, c=stats.c),
        value=_size_expression(stats, V_F, log_factor, None),
    )


def rur_denominator_bound(V_F: int, sigma_h: float) -> BoundReport:
    """Bound on log a_i and on the heights of the h_i of a rational univariate representation."""
    inner = math.log(V_F) + 4 * math.log(V_F + 1) + V_F * math.log(64) + 2 * sigma_h
    value = V_F * ((V_F - 1) * inner + sigma_h) + sigma_h + math.log(V_F)
    return BoundReport(name="rur_denominator", inputs=dict(V_F=V_F, sigma_h=sigma_h), value=value)


def u_height_check(u: Sequence[int], n: int, D: int, epsilon: int, V_F: int) -> BoundReport:
    search_bound = 1 + math.comb(V_F, 2)
    report = BoundReport(
        name="u_height",
        inputs=dict(
            n=n,
            D=D,
            epsilon=epsilon,
            log_weights=[math.log(1 + abs(x)) for x in u],
            n_squared_log_D=n * n * math.log(max(D, 2)),
        ),
        value=float(search_bound),
    )
    return check(report, epsilon)
