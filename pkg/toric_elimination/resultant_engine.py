"""
Toric resultant matrices, the perturbed resultant ``Pert`` and univariate reduction.

A :class:`ResultantMatrixPlan` records which multiple ``x^a f_i`` fills each row of
a resultant matrix. Plans come from a mixed subdivision of the lifted supports
(Canny-Emiris row content) and fall back to the dense Macaulay construction when
every lifting tried is degenerate.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog
from sympy import Matrix, Poly, ZZ, symbols

from .bounds import (
    BoundReport,
    check,
    growth_bound,
    hF_height_bound,
    matrix_constants,
    u_height_check,
)
from .exact_linalg import ParamMatrix, ParamPolynomial, det_exact, det_mod_p, det_parametric
from .exceptions import (
    InvariantViolation,
    PerturbationError,
    SegmentConditionError,
    SubdivisionError,
)
from .execution_config import DefaultExecutionConfig, ExecutionConfig
from .polynomials import ExponentVector, PolySystem, SparsePoly, height_stats
from .polytope import convex_hull, minkowski_sum, normalized_volume, q_polytope
from .univariate import height, normalize, squarefree_part

logger = logging.getLogger(__name__)

U0 = symbols("u0")

SUBDIVISION = "subdivision"
DENSE = "dense"

# prime modulus of the random nonsingularity test of subdivision plans
_TEST_MODULUS = 2**31 - 1
# value of u0 at which a perturbation system is tested
_TEST_U0 = 2**61 - 1
_LIFTING_RANGE = 2**10
_LP_TOLERANCE = 1e-7


def _unit(n: int, i: int) -> ExponentVector:
    return tuple(1 if j == i else 0 for j in range(n))


def _add(a: Sequence[int], b: Sequence[int]) -> ExponentVector:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Sequence[int], b: Sequence[int]) -> ExponentVector:
    return tuple(x - y for x, y in zip(a, b))


def _transversal_rank(directions: Sequence[List[ExponentVector]], n: int) -> int:
    """Largest number of independent directions taken from distinct families (Rado)."""
    families = len(directions)
    best = families
    for size in range(families + 1):
        for J in combinations(range(families), size):
            vectors = [list(d) for j in J for d in directions[j]]
            rank = Matrix(vectors).rank() if vectors else 0
            best = min(best, rank + families - size)
    return min(best, n)


@dataclass(frozen=True)
class SupportTuple:
    """Supports of the n+1 polynomials whose toric resultant is formed."""

    supports: Tuple[Tuple[ExponentVector, ...], ...]
    n: int

    def __post_init__(self):
        supports = tuple(tuple(sorted({tuple(int(x) for x in a) for a in A})) for A in self.supports)
        object.__setattr__(self, "supports", supports)
        if any(not A for A in supports):
            raise ValueError("every support must be nonempty")
        if any(len(a) != self.n for A in supports for a in A):
            raise ValueError(f"exponent vectors must have length {self.n}")
        directions = [[_sub(a, A[0]) for a in A[1:]] for A in supports]
        if _transversal_rank(directions, self.n) < self.n:
            raise SegmentConditionError(
                "no choice of one segment per support spans the ambient space"
            )

    @classmethod
    def of(cls, supports: Sequence[Sequence[Sequence[int]]], n: int) -> "SupportTuple":
        return cls(tuple(tuple(tuple(a) for a in A) for A in supports), n)


@dataclass(frozen=True)
class ResultantMatrixPlan:
    rows: Tuple[Tuple[int, ExponentVector], ...]
    """``(polynomial index, multiplier exponent)`` for every row"""
    columns: Tuple[ExponentVector, ...]
    supports: Tuple[Tuple[ExponentVector, ...], ...]
    kind: str = SUBDIVISION
    seed: Optional[int] = None

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def last_index(self) -> int:
        return len(self.supports) - 1

    @property
    def last_rows(self) -> int:
        """Number of rows filled by the last polynomial."""
        return sum(1 for i, _ in self.rows if i == self.last_index)

    @cached_property
    def column_index(self) -> Dict[ExponentVector, int]:
        return {c: j for j, c in enumerate(self.columns)}

    def entries(self, coefficients: Sequence[Mapping[ExponentVector, object]]) -> List[Dict[int, object]]:
        """Sparse rows ``{column: coefficient}`` for per-polynomial coefficient maps."""
        if len(coefficients) != len(self.supports):
            raise ValueError(f"expected {len(self.supports)} coefficient maps, got {len(coefficients)}")
        for i, terms in enumerate(coefficients):
            outside = set(terms) - set(self.supports[i])
            if outside:
                raise ValueError(f"polynomial {i} has terms {sorted(outside)} outside its support")
        rows = []
        for i, multiplier in self.rows:
            rows.append(
                {
                    self.column_index[_add(multiplier, a)]: c
                    for a, c in coefficients[i].items()
                    if c
                }
            )
        return rows

    def instantiate(self, coefficients: Sequence[Mapping[ExponentVector, int]]) -> List[List[int]]:
        matrix = [[0] * self.size for _ in range(self.size)]
        for target, row in zip(matrix, self.entries(coefficients)):
            for j, c in row.items():
                target[j] = int(c)
        return matrix

    def param_matrix(
        self, coefficients: Sequence[Mapping[ExponentVector, ParamPolynomial]], params=("s", "u0")
    ) -> ParamMatrix:
        return ParamMatrix(self.size, self.entries(coefficients), tuple(params))


def _lattice_points_of_shifted_sum(supports, delta) -> List[ExponentVector]:
    total = convex_hull(supports[0])
    for A in supports[1:]:
        total = minkowski_sum(total, convex_hull(A))
    n = total.dim_ambient
    lows = [min(v[j] for v in total.vertices) for j in range(n)]
    highs = [max(v[j] for v in total.vertices) for j in range(n)]
    points = []
    for p in product(*(range(lo, hi + 2) for lo, hi in zip(lows, highs))):
        if total.contains([x - d for x, d in zip(p, delta)]):
            points.append(tuple(p))
    return points


def _mixed_cell(point, delta, supports, liftings) -> List[List[ExponentVector]]:
    """Summands of the lifted-subdivision cell containing ``point - delta``."""
    n = len(point)
    columns = [(i, a) for i, A in enumerate(supports) for a in A]
    cost = [liftings[i][a] for i, a in columns]
    A_eq = np.zeros((n + len(supports), len(columns)))
    for k, (i, a) in enumerate(columns):
        A_eq[:n, k] = a
        A_eq[n + i, k] = 1.0
    b_eq = np.array([float(x - d) for x, d in zip(point, delta)] + [1.0] * len(supports))
    result = linprog(cost, A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs-ds")
    if result.status != 0:
        raise SubdivisionError(f"cell search failed at {point}: {result.message}")
    cell: List[List[ExponentVector]] = [[] for _ in supports]
    for k, weight in enumerate(result.x):
        if weight > _LP_TOLERANCE:
            i, a = columns[k]
            cell[i].append(a)
    return cell


def _subdivision_plan(A_bar: SupportTuple, seed: int) -> ResultantMatrixPlan:
    n = A_bar.n
    supports = A_bar.supports
    rng = np.random.default_rng(seed)
    liftings = [{a: int(rng.integers(0, _LIFTING_RANGE)) for a in A} for A in supports]
    delta = [Fraction(int(rng.integers(1, 1000)), 10007 + j) for j in range(n)]
    columns = _lattice_points_of_shifted_sum(supports, delta)
    column_set = set(columns)
    last = len(supports) - 1
    rows = []
    for p in columns:
        cell = _mixed_cell(p, delta, supports, liftings)
        if sum(len(F) - 1 for F in cell) != n:
            raise SubdivisionError(f"cell at {p} is not fine")
        vertices = [i for i in range(last) if len(cell[i]) == 1]
        i = vertices[-1] if vertices else last
        if len(cell[i]) != 1:
            raise SubdivisionError(f"cell at {p} has no vertex summand")
        multiplier = _sub(p, cell[i][0])
        if any(_add(multiplier, a) not in column_set for a in supports[i]):
            raise SubdivisionError(f"row of polynomial {i} at {p} leaves the column set")
        rows.append((i, multiplier))
    plan = ResultantMatrixPlan(tuple(rows), tuple(columns), supports, SUBDIVISION, seed)
    generic = [{a: int(rng.integers(1, _TEST_MODULUS)) for a in A} for A in supports]
    if det_mod_p(plan.instantiate(generic), _TEST_MODULUS) == 0:
        raise SubdivisionError("matrix is singular for generic coefficients")
    return plan


def _dense_plan(A_bar: SupportTuple) -> ResultantMatrixPlan:
    """Macaulay matrix of the homogenized polynomials, written in affine exponents."""
    n = A_bar.n
    degrees = [max(1, max(sum(a) for a in A)) for A in A_bar.supports]
    d = sum(di - 1 for di in degrees) + 1
    columns = sorted(
        (alpha for alpha in product(range(d + 1), repeat=n) if sum(alpha) <= d),
        key=lambda alpha: (sum(alpha), alpha),
    )
    rows = []
    for alpha in columns:
        for i in range(n):
            if alpha[i] >= degrees[i]:
                rows.append((i, tuple(x - degrees[i] if j == i else x for j, x in enumerate(alpha))))
                break
        else:
            rows.append((n, tuple(alpha)))
    return ResultantMatrixPlan(tuple(rows), tuple(columns), A_bar.supports, DENSE)


def build_matrix(A_bar: SupportTuple, config: ExecutionConfig = DefaultExecutionConfig) -> ResultantMatrixPlan:
    if len(A_bar.supports) != A_bar.n + 1:
        raise ValueError(f"a resultant matrix needs {A_bar.n + 1} supports, got {len(A_bar.supports)}")
    for attempt in range(config.lifting_attempts):
        try:
            plan = _subdivision_plan(A_bar, config.seed + attempt)
        except SubdivisionError as error:
            logger.info("lifting %d rejected: %s", attempt, error)
            continue
        logger.debug("subdivision plan of size %d with %d last rows", plan.size, plan.last_rows)
        return plan
    logger.warning("every lifting was degenerate, using the dense Macaulay plan")
    return _dense_plan(A_bar)


def eval_resultant(plan: ResultantMatrixPlan, coeffs: Sequence) -> int:
    """Determinant of the plan filled with integer coefficients.

    ``coeffs`` holds one :class:`SparsePoly` or ``{exponent: int}`` map per polynomial.
    It vanishes when the polynomials share a root in the torus, and may also vanish
    spuriously through the extraneous factor of the matrix.
    """
    maps = [c.as_dict() if isinstance(c, SparsePoly) else dict(c) for c in coeffs]
    return det_exact(plan.instantiate(maps))


def perturbation_support(F: PolySystem) -> FrozenSet[ExponentVector]:
    n = F.nvars
    points = {(0,) * n}
    points.update(_unit(n, i) for i in range(n))
    for support in F.supports():
        points.update(support)
    return frozenset(points)


def perturbation_system(F: PolySystem, seed: int = 0, attempt: int = 0) -> PolySystem:
    """Polynomials supported on the common perturbation support.

    One unknown uses all-ones coefficients; otherwise identical rows would share a
    hypersurface of roots, so coefficients are small seeded positive integers.
    """
    n = F.nvars
    support = sorted(perturbation_support(F))
    if n == 1 and attempt == 0:
        return PolySystem.of(SparsePoly.from_dict(1, {a: 1 for a in support}))
    rng = np.random.default_rng(seed + attempt)
    return PolySystem(
        tuple(
            SparsePoly.from_dict(n, {a: int(rng.integers(1, 10)) for a in support})
            for _ in range(n)
        )
    )


@dataclass(frozen=True)
class PertConfig:
    F: PolySystem
    F_star: PolySystem
    u: Tuple[int, ...] = ()
    mono: Optional[ExponentVector] = None
    """When set the added polynomial is ``u0 - x^mono`` instead of ``u0 - u.x``"""

    def __post_init__(self):
        if self.F.m != self.F.nvars:
            raise ValueError(f"Pert needs a square system, got {self.F.m} polynomials in {self.F.nvars} unknowns")
        if self.mono is None and len(self.u) != self.F.nvars:
            raise ValueError(f"expected {self.F.nvars} weights, got {len(self.u)}")
        if self.mono is not None and (len(self.mono) != self.F.nvars or not any(self.mono)):
            raise SegmentConditionError("the added monomial must be a nonzero exponent vector")

    @property
    def linear_or_monomial(self) -> str:
        return "linear" if self.mono is None else "monomial"

    @property
    def A_last(self) -> FrozenSet[ExponentVector]:
        n = self.F.nvars
        if self.mono is None:
            return frozenset({(0,) * n} | {_unit(n, i) for i in range(n)})
        return frozenset({(0,) * n, tuple(self.mono)})

    def last_terms(self) -> Dict[ExponentVector, int]:
        """Terms of the added polynomial besides ``u0``."""
        n = self.F.nvars
        if self.mono is None:
            return {_unit(n, i): -w for i, w in enumerate(self.u) if w}
        return {tuple(self.mono): -1}

    def support_tuple(self) -> SupportTuple:
        A_star = sorted(perturbation_support(self.F))
        return SupportTuple.of([A_star] * self.F.nvars + [sorted(self.A_last)], self.F.nvars)

    def param_coefficients(self) -> List[Dict[ExponentVector, ParamPolynomial]]:
        maps = []
        for f, g in zip(self.F, self.F_star):
            entry: Dict[ExponentVector, ParamPolynomial] = {}
            for a in f.support() | g.support():
                polynomial = {}
                if f.coefficient(a):
                    polynomial[(0, 0)] = f.coefficient(a)
                if g.coefficient(a):
                    polynomial[(1, 0)] = -g.coefficient(a)
                entry[a] = polynomial
            maps.append(entry)
        last = {a: {(0, 0): c} for a, c in self.last_terms().items()}
        last[(0,) * self.F.nvars] = {(0, 1): 1}
        maps.append(last)
        return maps

    def perturbation_coefficients(self, u0: int) -> List[Dict[ExponentVector, int]]:
        """Integer coefficients of ``(F*, u0 - ...)``, the leading part in s up to sign."""
        maps = [g.as_dict() for g in self.F_star]
        last = dict(self.last_terms())
        last[(0,) * self.F.nvars] = u0
        return maps + [last]


def _lowest_s_coefficient(det: Poly) -> Tuple[int, Poly]:
    terms = det.as_dict()
    order = min(e[0] for e in terms)
    lowest = {(e[1],): c for e, c in terms.items() if e[0] == order}
    return order, Poly.from_dict(lowest, U0, domain=ZZ)


def compute_pert(
    cfg: PertConfig,
    plan: Optional[ResultantMatrixPlan] = None,
    config: ExecutionConfig = DefaultExecutionConfig,
) -> Poly:
    """Lowest-degree coefficient in s of ``det M(F - s F*, u0 - ...)``, as a primitive polynomial in u0."""
    if plan is None:
        plan = build_matrix(cfg.support_tuple(), config)
    return _pert(cfg, plan, config)[1]


def _pert(cfg: PertConfig, plan: ResultantMatrixPlan, config: ExecutionConfig) -> Tuple[int, Poly]:
    if det_exact(plan.instantiate(cfg.perturbation_coefficients(_TEST_U0))) == 0:
        raise PerturbationError("the matrix of the perturbation system is singular")
    matrix = plan.param_matrix(cfg.param_coefficients())
    at_zero = det_parametric(matrix.specialize(0, 0), [plan.last_rows], config.max_workers)
    if not at_zero.is_zero:
        order, lowest = 0, Poly(at_zero.as_expr(), U0, domain=ZZ)
    else:
        s_rows = plan.size - plan.last_rows
        full = det_parametric(matrix, [s_rows, plan.last_rows], config.max_workers)
        if full.is_zero:
            raise PerturbationError("the perturbed determinant vanishes identically")
        order, lowest = _lowest_s_coefficient(full)
    logger.debug("Pert found at s-order %d with u0-degree %d", order, lowest.degree())
    return order, normalize(lowest)


def growth_report(h: Poly, cfg: PertConfig, plan: ResultantMatrixPlan, V_F: int) -> BoundReport:
    """Growth bound at the coefficient of ``h`` closest to violating it."""
    m_F = max(matrix_constants(cfg.F.nvars, V_F).m_F, plan.size)
    norm_u = math.hypot(*cfg.u) if cfg.mono is None else 1.0
    mu = max(len(A) for A in plan.supports)
    c = max(f.max_coefficient() for f in cfg.F)
    c_star = max(g.max_coefficient() for g in cfg.F_star)
    worst = None
    for (i,), coeff in h.as_dict().items():
        report = check(growth_bound(m_F, V_F, i, norm_u, mu, c, c_star), int(coeff))
        if worst is None or report.checked_against - report.value > worst.checked_against - worst.value:
            worst = report
    return worst


class PerturbedEliminator:
    """Eliminants ``h_u`` of one square system, sharing a matrix plan across weights ``u``."""

    def __init__(self, F: PolySystem, config: ExecutionConfig = DefaultExecutionConfig, mono=None):
        if F.m != F.nvars:
            raise ValueError(f"expected a square system, got {F.m} polynomials in {F.nvars} unknowns")
        self.F = F
        self.config = config
        self.mono = tuple(mono) if mono is not None else None
        self.V_F = normalized_volume(q_polytope(F)).normalized_volume
        self.F_star: Optional[PolySystem] = None
        self.perturbation_attempt: Optional[int] = None
        self.plan: Optional[ResultantMatrixPlan] = None
        self._cache: Dict[Tuple[int, ...], Poly] = {}
        self.reports: Dict[Tuple[int, ...], BoundReport] = {}

    def _pert_config(self, u, F_star) -> PertConfig:
        return PertConfig(self.F, F_star, tuple(u) if self.mono is None else (), self.mono)

    def _choose_perturbation(self, u):
        for attempt in range(self.config.perturbation_attempts):
            candidate = perturbation_system(self.F, self.config.seed, attempt)
            cfg = self._pert_config(u, candidate)
            if self.plan is None:
                self.plan = build_matrix(cfg.support_tuple(), self.config)
            if det_exact(self.plan.instantiate(cfg.perturbation_coefficients(_TEST_U0))):
                self.F_star = candidate
                self.perturbation_attempt = attempt
                logger.debug("perturbation system accepted at attempt %d", attempt)
                return
            logger.info("perturbation system %d gives a singular matrix", attempt)
        raise PerturbationError(
            f"no perturbation system out of {self.config.perturbation_attempts} keeps the matrix nonsingular"
        )

    def eliminant(self, u: Sequence[int] = ()) -> Poly:
        key = tuple(int(w) for w in u)
        if key not in self._cache:
            if self.F_star is None:
                self._choose_perturbation(key)
            cfg = self._pert_config(key, self.F_star)
            order, h = _pert(cfg, self.plan, self.config)
            r_F = matrix_constants(self.F.nvars, self.V_F).r_F
            if order > r_F:
                raise InvariantViolation(f"lowest s-degree {order} exceeds r_F = {r_F}")
            if h.degree() > self.V_F:
                raise InvariantViolation(f"eliminant degree {h.degree()} exceeds V_F = {self.V_F}")
            self.reports[key] = growth_report(h, cfg, self.plan, self.V_F)
            self._cache[key] = h
        return self._cache[key]

    @property
    def computed(self) -> Dict[Tuple[int, ...], Poly]:
        return dict(self._cache)


@dataclass
class UnivariateReduction:
    h: Poly
    u: Tuple[int, ...]
    epsilon: int
    V_F: int
    eliminator: PerturbedEliminator
    provenance: Dict[str, object] = field(default_factory=dict)
    bounds: Tuple[BoundReport, ...] = ()

    @property
    def shifted(self) -> Dict[Tuple[int, ...], Poly]:
        """Eliminants computed for weights other than ``u``."""
        return {w: h for w, h in self.eliminator.computed.items() if w != self.u}

    def eliminant(self, u: Sequence[int]) -> Poly:
        return self.eliminator.eliminant(u)


def _squarefree_degree(h: Poly) -> int:
    return squarefree_part(h).degree() if h.degree() > 0 else 0


def _collision_free(eliminator: PerturbedEliminator, u: Tuple[int, ...], base_degree: int) -> bool:
    """Whether no unit shift of ``u`` separates roots that ``u`` merges.

    Shifts that would zero a weight are skipped: with a zero weight, limit points
    escaping to infinity in that coordinate show up as spurious roots.
    """
    if base_degree <= 1 or eliminator.V_F <= 1:
        return True
    for i in range(len(u)):
        for sign in (-1, 1):
            if u[i] + sign == 0:
                continue
            shifted = tuple(w + sign if j == i else w for j, w in enumerate(u))
            if _squarefree_degree(eliminator.eliminant(shifted)) > base_degree:
                logger.debug("weights %s collide along coordinate %d", u, i + 1)
                return False
    return True


def univariate_reduction(F: PolySystem, config: ExecutionConfig = DefaultExecutionConfig) -> UnivariateReduction:
    """Eliminant h_F with weights ``u = (e, e^2, ..., e^n)`` for the first collision-free e."""
    if F.m != F.nvars:
        raise ValueError(
            f"univariate reduction needs a square system, got {F.m} polynomials in {F.nvars} unknowns; "
            "use square_up first"
        )
    eliminator = PerturbedEliminator(F, config)
    n = F.nvars
    V_F = eliminator.V_F
    limit = 1 + math.comb(V_F, 2)
    for epsilon in range(1, limit + 1):
        u = tuple(epsilon ** (i + 1) for i in range(n))
        h = eliminator.eliminant(u)
        if n > 1 and not _collision_free(eliminator, u, _squarefree_degree(h)):
            continue
        logger.info("weights %s accepted at epsilon %d", u, epsilon)
        stats = height_stats(F)
        reports = (
            eliminator.reports[u],
            check(hF_height_bound(stats, V_F), height(h)),
            u_height_check(u, n, stats.D, epsilon, V_F),
        )
        provenance = dict(
            epsilon=epsilon,
            plan_kind=eliminator.plan.kind,
            plan_size=eliminator.plan.size,
            last_rows=eliminator.plan.last_rows,
            perturbation_attempt=eliminator.perturbation_attempt,
            shifted_eliminants=len(eliminator.computed) - 1,
        )
        return UnivariateReduction(h, u, epsilon, V_F, eliminator, provenance, reports)
    raise InvariantViolation(f"no epsilon up to {limit} gives collision-free weights")


def monomial_reduction(
    F: PolySystem, mono: Sequence[int], config: ExecutionConfig = DefaultExecutionConfig
) -> Poly:
    """Eliminant whose roots are the values of ``x^mono`` at the toric roots of F."""
    if len(mono) != F.nvars:
        raise ValueError(f"monomial has {len(mono)} exponents, expected {F.nvars}")
    return PerturbedEliminator(F, config, mono=mono).eliminant()


def square_up(F: PolySystem, S: Sequence[int], offset: int = 0) -> PolySystem:
    """n polynomials whose zero set contains that of F, plus at most finitely many points."""
    n, m = F.nvars, F.m
    if m == n:
        return F
    if m < n:
        return F.append(*([F[m - 1]] * (n - m)))
    weights = sorted(set(int(e) for e in S))
    V_F = normalized_volume(q_polytope(F)).normalized_volume
    if len(weights) < m * V_F + 1:
        raise ValueError(f"S needs at least {m * V_F + 1} elements, got {len(weights)}")
    if offset + n > len(weights):
        raise ValueError(f"offset {offset} leaves fewer than {n} weights in S")
    rows = []
    for i in range(n):
        epsilon = weights[offset + i]
        combined = SparsePoly.constant(n, 0)
        for j, f in enumerate(F):
            combined = combined + f.scale(epsilon**j)
        rows.append(combined)
    return PolySystem(tuple(rows))
