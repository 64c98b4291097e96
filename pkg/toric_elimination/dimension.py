"""
Complex dimension of the zero set of a polynomial system.

Level i intersects the zero set with i affine hyperplanes and votes,
over a fixed sequence of probe points, on whether the intersection is nonempty.
The first level with a feasible majority is the dimension; level 0 decides
between a finite nonempty zero set and the empty set.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .execution_config import DefaultExecutionConfig, ExecutionConfig
from .polynomials import PolySystem, SparsePoly
from .rur import feasibility_check

logger = logging.getLogger(__name__)

EMPTY = -1


def _kronecker_points(r: int, degree: int) -> Iterator[Tuple[int, ...]]:
    base = degree + 1
    j = 1
    while True:
        yield tuple(j ** (base**e) for e in range(r))
        j += 1


def _seeded_points(r: int, k: int, seed: int) -> Iterator[Tuple[int, ...]]:
    rng = np.random.default_rng(seed)
    seen = set()
    while True:
        point = tuple(int(x) for x in rng.integers(1, 4 * k + 5, size=r))
        if point not in seen:
            seen.add(point)
            yield point


@dataclass(frozen=True)
class ProbeSequence:
    points: Tuple[Tuple[int, ...], ...]
    k: int
    r: int
    strategy: str = "seeded"
    seed: int = 0
    degree: int = 1

    def __len__(self) -> int:
        return len(self.points)

    def extended(self) -> Iterator[Tuple[int, ...]]:
        """The points of the sequence followed by further distinct points from the same generator."""
        if self.strategy == "kronecker":
            return _kronecker_points(self.r, self.degree)
        return _seeded_points(self.r, self.k, self.seed)


def probe_sequence(
    k: int, r: int, strategy: str = "seeded", seed: int = 0, degree: Optional[int] = None
) -> ProbeSequence:
    if k < 1 or r < 1:
        raise ValueError(f"probe sequences need k >= 1 and r >= 1, got k={k}, r={r}")
    degree = degree or 1
    if strategy == "kronecker":
        generator = _kronecker_points(r, degree)
    elif strategy == "seeded":
        generator = _seeded_points(r, k, seed)
    else:
        raise ValueError(f"unknown probe strategy {strategy!r}")
    points = tuple(next(generator) for _ in range(2 * k + 1))
    return ProbeSequence(points, k, r, strategy, seed, degree)


def linear_forms(n: int, i: int, probe_point: Sequence[int]) -> List[SparsePoly]:
    """``l_s = e_(s,1) x_1 + ... + e_(s,n) x_n + 1`` for s = 1..i.

    The constant term keeps the hyperplanes off the origin, which may itself be a root.
    """
    forms = []
    for s in range(i):
        weights = probe_point[n + s * n : n + (s + 1) * n]
        terms = {tuple(1 if j == c else 0 for j in range(n)): int(w) for c, w in enumerate(weights)}
        terms[(0,) * n] = 1
        forms.append(SparsePoly.from_dict(n, terms))
    return forms


def build_probe_system(F: PolySystem, i: int, probe_point: Sequence[int]) -> PolySystem:
    n = F.nvars
    if not 0 <= i <= n - 1:
        raise ValueError(f"level {i} outside 0..{n - 1}")
    if len(probe_point) != (i + 1) * n:
        raise ValueError(f"probe point has {len(probe_point)} entries, expected {(i + 1) * n}")
    pieces = list(F) + linear_forms(n, i, probe_point)
    rows = []
    for t in range(n):
        epsilon = int(probe_point[t])
        row = SparsePoly.constant(n, 0)
        for j, g in enumerate(pieces, start=1):
            row = row + g.scale(epsilon**j)
        rows.append(row)
    return PolySystem(tuple(rows))


@dataclass
class DimensionResult:
    dim: int
    witness: Dict[str, object] = field(default_factory=dict)
    """Vote tallies per level and the level-0 certificate"""

    @property
    def is_empty(self) -> bool:
        return self.dim == EMPTY


def _probe_systems(F: PolySystem, i: int, sequence: ProbeSequence, tallies: Dict[str, int]):
    """Probe systems in sequence order, skipping (and counting) those with a zero or repeated row."""
    n = F.nvars
    for point in sequence.extended():
        system = build_probe_system(F, i, point)
        if any(row.is_zero() for row in system) or len(set(point[:n])) < n:
            tallies["resampled"] += 1
            logger.info("probe point %s gives a degenerate system, drawing another", point)
            continue
        yield point, system


def _level_vote(F: PolySystem, i: int, config: ExecutionConfig) -> Dict[str, int]:
    k = F.k
    sequence = probe_sequence(
        k, (i + 1) * F.nvars, config.probe_strategy, config.seed + i, config.probe_degree
    )
    tallies = {"feasible": 0, "infeasible": 0, "resampled": 0}
    for point, system in _probe_systems(F, i, sequence, tallies):
        against = F.append(*linear_forms(F.nvars, i, point))
        outcome = feasibility_check(system, config, against=against)
        tallies["feasible" if outcome.feasible else "infeasible"] += 1
        if max(tallies["feasible"], tallies["infeasible"]) >= k + 1:
            break
    return tallies


def compute_dimension(F: PolySystem, config: ExecutionConfig = DefaultExecutionConfig) -> DimensionResult:
    n = F.nvars
    if F.is_zero():
        return DimensionResult(n, {"zero_system": True})
    F = PolySystem(tuple(f for f in F if not f.is_zero()))
    witness: Dict[str, object] = {}
    for i in range(n - 1, 0, -1):
        tallies = _level_vote(F, i, config)
        witness[f"level_{i}"] = tallies
        logger.info("level %d votes %s", i, tallies)
        if tallies["feasible"] > tallies["infeasible"]:
            return DimensionResult(i, witness)

    sequence = probe_sequence(F.k, n, config.probe_strategy, config.seed, config.probe_degree)
    tallies = {"resampled": 0}
    point, system = next(_probe_systems(F, 0, sequence, tallies))
    outcome = feasibility_check(system, config, against=F)
    witness["level_0"] = dict(tallies, probe=point, verified_degree=outcome.verified_factor.degree())
    return DimensionResult(0 if outcome.feasible else EMPTY, witness)
