"""
Lattice polytopes: convex hulls, normalized volumes, Minkowski sums and mixed volumes.

Qhull (through :class:`scipy.spatial.ConvexHull`) proposes the boundary
triangulation; every facet it reports is re-derived with an integer normal and
checked against all generators, so volumes and membership tests stay exact.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
from scipy.spatial import ConvexHull
from sympy import Matrix, ilcm, igcd

from .exact_linalg import det_exact
from .exceptions import InvariantViolation
from .polynomials import ExponentVector, PolySystem, SparsePoly

logger = logging.getLogger(__name__)

Inequality = Tuple[Tuple[int, ...], int]


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _primitive_integer_vector(vector: Sequence) -> Tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector in its direction."""
    fractions = [Fraction(int(v.p), int(v.q)) if hasattr(v, "p") else Fraction(v) for v in vector]
    scale = 1
    for f in fractions:
        scale = ilcm(scale, f.denominator)
    integers = [int(f * scale) for f in fractions]
    divisor = 0
    for x in integers:
        divisor = igcd(divisor, x)
    return tuple(x // divisor for x in integers) if divisor else tuple(integers)


@dataclass(frozen=True)
class LatticePolytope:
    points: Tuple[ExponentVector, ...]
    dim_ambient: int
    vertices: Tuple[ExponentVector, ...]
    affine_dim: int
    equations: Tuple[Inequality, ...]
    """Affine hull as ``normal . x == offset``"""
    coordinates: Tuple[int, ...]
    """Coordinates on which the projection of the affine hull is injective"""
    facets: Tuple[Inequality, ...]
    """``normal . x[coordinates] <= offset`` for every facet of the projected hull"""
    normalized_volume: int
    """Normalized volume inside the affine hull (the full one only when full-dimensional)"""

    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim_ambient

    def contains(self, point: Sequence) -> bool:
        if len(point) != self.dim_ambient:
            raise ValueError(f"point of length {len(point)} in a polytope of R^{self.dim_ambient}")
        point = [Fraction(x) for x in point]
        if any(_dot(normal, point) != offset for normal, offset in self.equations):
            return False
        projected = [point[i] for i in self.coordinates]
        return all(_dot(normal, projected) <= offset for normal, offset in self.facets)


@dataclass(frozen=True)
class VolumeResult:
    normalized_volume: int
    euclidean_volume: Fraction

    def __post_init__(self):
        if self.normalized_volume < 0:
            raise InvariantViolation("negative volume")


def _affine_frame(points: Sequence[ExponentVector]):
    base = points[0]
    n = len(base)
    differences = [[p[i] - base[i] for i in range(n)] for p in points[1:]]
    if not differences or not any(any(row) for row in differences):
        equations = tuple(
            (tuple(1 if j == i else 0 for j in range(n)), base[i]) for i in range(n)
        )
        return 0, (), equations
    matrix = Matrix(differences)
    _, pivots = matrix.rref()
    equations = []
    for vector in matrix.nullspace():
        normal = _primitive_integer_vector(list(vector))
        equations.append((normal, _dot(normal, base)))
    return len(pivots), tuple(pivots), tuple(equations)


def _full_dimensional_boundary(projected: List[Tuple[int, ...]], dim: int):
    """Exact facet inequalities, vertex indices and boundary simplices of a full-dimensional hull."""
    if dim == 1:
        values = [p[0] for p in projected]
        lo, hi = min(values), max(values)
        vertices = sorted({values.index(lo), values.index(hi)})
        facets = (((1,), hi), ((-1,), -lo))
        return facets, vertices, [[values.index(lo)], [values.index(hi)]]

    hull = ConvexHull(np.array(projected, dtype=float))
    facets = {}
    simplices = []
    for simplex in hull.simplices:
        corners = [projected[i] for i in simplex]
        rows = [[c[j] - corners[0][j] for j in range(dim)] for c in corners[1:]]
        kernel = Matrix(rows).nullspace()
        simplices.append(list(simplex))
        if len(kernel) != 1:
            # flat piece of a triangulated facet; it carries no volume
            continue
        normal = _primitive_integer_vector(list(kernel[0]))
        offset = _dot(normal, corners[0])
        values = [_dot(normal, q) for q in projected]
        if max(values) > offset:
            if min(values) < offset:
                raise InvariantViolation(f"hull facet {normal} does not support the point set")
            normal, offset = tuple(-x for x in normal), -offset
        facets[normal] = offset

    vertices = []
    for index in hull.vertices:
        point = projected[index]
        tight = [normal for normal, offset in facets.items() if _dot(normal, point) == offset]
        if tight and Matrix(tight).rank() == dim:
            vertices.append(int(index))
    return tuple(sorted(facets.items())), sorted(vertices), simplices


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    unique = sorted({tuple(int(x) for x in p) for p in points})
    if not unique:
        raise ValueError("convex hull of an empty point set")
    n = len(unique[0])
    if any(len(p) != n for p in unique):
        raise ValueError("points of different dimensions")

    dim, coordinates, equations = _affine_frame(unique)
    if dim == 0:
        return LatticePolytope(tuple(unique), n, (unique[0],), 0, equations, (), (), 1)

    projected = [tuple(p[i] for i in coordinates) for p in unique]
    facets, vertex_indices, simplices = _full_dimensional_boundary(projected, dim)

    apex = projected[vertex_indices[0]]
    volume = 0
    if dim == 1:
        volume = max(p[0] for p in projected) - min(p[0] for p in projected)
    else:
        for simplex in simplices:
            volume += abs(
                det_exact([[projected[i][j] - apex[j] for j in range(dim)] for i in simplex])
            )
    vertices = tuple(unique[i] for i in vertex_indices)
    return LatticePolytope(tuple(unique), n, vertices, dim, equations, coordinates, facets, volume)


def normalized_volume(P: LatticePolytope) -> VolumeResult:
    if not P.is_full_dimensional():
        return VolumeResult(0, Fraction(0))
    return VolumeResult(P.normalized_volume, Fraction(P.normalized_volume, math.factorial(P.dim_ambient)))


def newton_polytope(f: SparsePoly) -> LatticePolytope:
    if f.is_zero():
        raise ValueError("the zero polynomial has no Newton polytope")
    return convex_hull(f.support())


def q_polytope(F: PolySystem) -> LatticePolytope:
    """Hull of the origin, the unit vectors and every exponent vector of ``F``."""
    n = F.nvars
    points: Set[ExponentVector] = {(0,) * n}
    points.update(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
    for support in F.supports():
        points.update(support)
    return convex_hull(points)


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    if P.dim_ambient != Q.dim_ambient:
        raise ValueError(f"Minkowski sum of polytopes in R^{P.dim_ambient} and R^{Q.dim_ambient}")
    return convex_hull(
        tuple(a + b for a, b in zip(v, w)) for v in P.vertices for w in Q.vertices
    )


def _sum_volume(polytopes: Sequence[LatticePolytope]) -> int:
    total = polytopes[0]
    for P in polytopes[1:]:
        total = minkowski_sum(total, P)
    return normalized_volume(total).normalized_volume


def mixed_volume(polytopes: Sequence[LatticePolytope], max_workers: Optional[int] = None) -> int:
    """Normalized mixed volume by inclusion-exclusion over Minkowski sums.

    Each term is a normalized volume and the alternating sum is divided by ``n!``, so
    ``mixed_volume([P] * n)`` is the normalized volume ``n! Vol_n(P)``.
    """
    n = polytopes[0].dim_ambient if polytopes else 0
    if len(polytopes) != n or any(P.dim_ambient != n for P in polytopes):
        raise ValueError(f"mixed volume needs exactly n polytopes in R^n, got {len(polytopes)}")
    subsets = [S for size in range(1, n + 1) for S in combinations(range(n), size)]
    groups = [[polytopes[i] for i in S] for S in subsets]
    if max_workers:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            volumes = list(pool.map(_sum_volume, groups))
    else:
        volumes = [_sum_volume(g) for g in groups]
    total = sum((-1) ** (n - len(S)) * v for S, v in zip(subsets, volumes))
    result, remainder = divmod(total, math.factorial(n))
    if remainder or result < 0:
        raise InvariantViolation(f"inclusion-exclusion sum {total} is not a mixed volume")
    return result


def lattice_points(P: LatticePolytope) -> FrozenSet[ExponentVector]:
    """All integer points of ``P``, found by scanning the bounding box of its vertices."""
    n = P.dim_ambient
    lows = [min(v[i] for v in P.vertices) for i in range(n)]
    highs = [max(v[i] for v in P.vertices) for i in range(n)]
    grid = np.array(list(product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs)))), dtype=np.int64)
    inside = np.ones(len(grid), dtype=bool)
    for normal, offset in P.equations:
        inside &= grid @ np.array(normal, dtype=np.int64) == offset
    if P.coordinates:
        projected = grid[:, list(P.coordinates)]
        for normal, offset in P.facets:
            inside &= projected @ np.array(normal, dtype=np.int64) <= offset
    return frozenset(tuple(int(x) for x in row) for row in grid[inside])


def bezout_number(F: PolySystem) -> int:
    return math.prod(f.total_degree() for f in F)


def translate(P: LatticePolytope, shift: Sequence[int]) -> LatticePolytope:
    return convex_hull(tuple(a + b for a, b in zip(p, shift)) for p in P.vertices)
