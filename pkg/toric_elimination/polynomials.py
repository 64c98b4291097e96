"""
Exact sparse multivariate polynomials over the integers.

A polynomial is stored as its canonical list of ``(exponent vector, coefficient)``
terms, sorted in graded lexicographic order, largest first. Ring arithmetic is
delegated to sympy's sparse polynomial rings over ``ZZ``.
"""
import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from sympy import ZZ
from sympy.polys.rings import ring

from .exceptions import SystemParseError

logger = logging.getLogger(__name__)

ExponentVector = Tuple[int, ...]


def _grlex_key(exponent: ExponentVector):
    return (sum(exponent), exponent)


@lru_cache(maxsize=None)
def polynomial_ring(nvars: int):
    """The sympy ring ``ZZ[x1, ..., x_nvars]``, shared between polynomials of the same arity."""
    return ring(",".join(f"x{i + 1}" for i in range(nvars)), ZZ)[0]


@dataclass(frozen=True)
class SparsePoly:
    nvars: int
    terms: Tuple[Tuple[ExponentVector, int], ...] = ()

    @classmethod
    def from_dict(cls, nvars: int, terms: Mapping[Sequence[int], int]) -> "SparsePoly":
        if nvars < 1:
            raise ValueError(f"nvars must be positive, got {nvars}")
        cleaned: Dict[ExponentVector, int] = {}
        for exponent, coeff in terms.items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != nvars or any(e < 0 for e in exponent):
                raise ValueError(f"invalid exponent vector {exponent} for {nvars} variables")
            cleaned[exponent] = cleaned.get(exponent, 0) + int(coeff)
        items = sorted(
            ((e, c) for e, c in cleaned.items() if c), key=lambda t: _grlex_key(t[0]), reverse=True
        )
        return cls(nvars, tuple(items))

    @classmethod
    def constant(cls, nvars: int, value: int) -> "SparsePoly":
        return cls.from_dict(nvars, {(0,) * nvars: value})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: int = 1) -> "SparsePoly":
        return cls.from_dict(len(exponent), {tuple(exponent): coeff})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "SparsePoly":
        """The coordinate ``x_{index+1}``."""
        exponent = [0] * nvars
        exponent[index] = 1
        return cls.monomial(exponent)

    @classmethod
    def from_ring(cls, nvars: int, element) -> "SparsePoly":
        return cls.from_dict(nvars, {tuple(m): int(c) for m, c in element.items()})

    def as_dict(self) -> Dict[ExponentVector, int]:
        return dict(self.terms)

    def to_ring(self):
        return polynomial_ring(self.nvars).from_dict(self.as_dict())

    def support(self) -> FrozenSet[ExponentVector]:
        return frozenset(e for e, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e, _ in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def max_coefficient(self) -> int:
        return max((abs(c) for _, c in self.terms), default=0)

    def coefficient(self, exponent: Sequence[int]) -> int:
        return self.as_dict().get(tuple(exponent), 0)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        return SparsePoly.from_ring(self.nvars, self.to_ring() + other.to_ring())

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return SparsePoly.from_ring(self.nvars, self.to_ring() - other.to_ring())

    def __mul__(self, other) -> "SparsePoly":
        if isinstance(other, int):
            return self.scale(other)
        return SparsePoly.from_ring(self.nvars, self.to_ring() * other.to_ring())

    __rmul__ = __mul__

    def __neg__(self) -> "SparsePoly":
        return self.scale(-1)

    def __pow__(self, k: int) -> "SparsePoly":
        return SparsePoly.from_ring(self.nvars, self.to_ring() ** k)

    def scale(self, factor: int) -> "SparsePoly":
        return SparsePoly.from_dict(self.nvars, {e: factor * c for e, c in self.terms})

    def evaluate(self, point: Sequence) -> Fraction:
        return evaluate(self, point)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exponent, coeff in self.terms:
            factors = [
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exponent) if e
            ]
            magnitude = abs(coeff)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(magnitude)] + factors)
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"{'+' if coeff > 0 else '-'} {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class PolySystem:
    polys: Tuple[SparsePoly, ...]

    def __post_init__(self):
        if not self.polys:
            raise ValueError("a system needs at least one polynomial")
        if len({f.nvars for f in self.polys}) != 1:
            raise ValueError("all polynomials of a system must share the same variables")
        object.__setattr__(self, "polys", tuple(self.polys))

    @classmethod
    def of(cls, *polys: SparsePoly) -> "PolySystem":
        return cls(tuple(polys))

    @property
    def nvars(self) -> int:
        return self.polys[0].nvars

    @property
    def m(self) -> int:
        return len(self.polys)

    @property
    def k(self) -> int:
        """Total number of monomial terms, repetitions between polynomials included."""
        return sum(len(f) for f in self.polys)

    @property
    def degree(self) -> int:
        return max(f.total_degree() for f in self.polys)

    def supports(self) -> List[FrozenSet[ExponentVector]]:
        return [f.support() for f in self.polys]

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.polys)

    def append(self, *polys: SparsePoly) -> "PolySystem":
        return PolySystem(self.polys + tuple(polys))

    def to_text(self) -> str:
        return "\n".join(f.to_text() for f in self.polys) + "\n"

    def __iter__(self) -> Iterator[SparsePoly]:
        return iter(self.polys)

    def __len__(self) -> int:
        return len(self.polys)

    def __getitem__(self, index: int) -> SparsePoly:
        return self.polys[index]


@dataclass(frozen=True)
class HeightStats:
    sigma: float
    D: int
    k: int
    sparse_size: int
    m: int
    n: int
    mu: int
    """Largest number of terms of a single polynomial"""
    c: int
    """Largest coefficient in absolute value"""


def support(f: SparsePoly) -> FrozenSet[ExponentVector]:
    return f.support()


def evaluate(f: SparsePoly, point: Sequence) -> Fraction:
    if len(point) != f.nvars:
        raise ValueError(f"point has {len(point)} coordinates, expected {f.nvars}")
    values = [Fraction(v) for v in point]
    total = Fraction(0)
    for exponent, coeff in f.terms:
        term = Fraction(coeff)
        for value, e in zip(values, exponent):
            if e:
                term *= value**e
        total += term
    return total


def height_stats(system: PolySystem) -> HeightStats:
    coefficients = [c for f in system for _, c in f.terms]
    sigma = max((math.log(abs(c)) for c in coefficients), default=0.0)
    sparse_size = sum(
        abs(c).bit_length() + sum(e.bit_length() for e in exponent)
        for f in system
        for exponent, c in f.terms
    )
    return HeightStats(
        sigma=sigma,
        D=system.degree,
        k=system.k,
        sparse_size=sparse_size,
        m=system.m,
        n=system.nvars,
        mu=max(len(f) for f in system),
        c=max((abs(c) for c in coefficients), default=0),
    )


_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d*)?(?:[eE][-+]?\d+)?(?:/\d+)?)"
    r"|(?P<variable>x(?P<index>\d+))|(?P<operator>[-+*^])|(?P<other>\S))"
)


class _LineParser:
    """Recursive-descent parser of a single polynomial line."""

    def __init__(self, text: str, line: int, nvars: int):
        self.line = line
        self.nvars = nvars
        self.tokens = []
        for match in _TOKEN.finditer(text):
            if match.lastgroup is None:
                continue
            kind = match.lastgroup if match.lastgroup != "index" else "variable"
            self.tokens.append((kind, match.group(kind), match.start(kind) + 1, match))
        self.position = 0

    def error(self, message: str, column: Optional[int] = None) -> SystemParseError:
        if column is None:
            column = self.tokens[self.position][2] if self.position < len(self.tokens) else 0
        return SystemParseError(message, self.line, column)

    def peek(self):
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def take(self):
        token = self.peek()
        self.position += 1
        return token

    def integer(self, token) -> int:
        text = token[1]
        if not text.isdigit():
            raise self.error(f"non-integer coefficient {text!r}", token[2])
        return int(text)

    def parse(self) -> Dict[ExponentVector, int]:
        terms: Dict[ExponentVector, int] = {}
        sign = 1
        first = True
        while self.peek() is not None:
            token = self.peek()
            if token[0] == "operator" and token[1] in "+-":
                self.take()
                sign = 1 if token[1] == "+" else -1
            elif not first:
                raise self.error(f"expected '+' or '-', found {token[1]!r}")
            exponent, coeff = self.term()
            terms[exponent] = terms.get(exponent, 0) + sign * coeff
            first = False
        if first:
            raise self.error("empty polynomial")
        return terms

    def term(self) -> Tuple[ExponentVector, int]:
        exponent = [0] * self.nvars
        coeff = 1
        while True:
            token = self.take()
            if token is None:
                raise self.error("unexpected end of line")
            if token[0] == "number":
                coeff *= self.integer(token)
            elif token[0] == "variable":
                index = int(token[3].group("index"))
                if not 1 <= index <= self.nvars:
                    raise self.error(
                        f"variable x{index} outside x1..x{self.nvars}", token[2]
                    )
                power = 1
                following = self.peek()
                if following is not None and following[1] == "^":
                    self.take()
                    power_token = self.take()
                    if power_token is None or power_token[0] != "number":
                        raise self.error("expected an exponent after '^'")
                    power = self.integer(power_token)
                exponent[index - 1] += power
            else:
                raise self.error(f"unexpected {token[1]!r}", token[2])
            following = self.peek()
            if following is None or following[1] != "*":
                return tuple(exponent), coeff
            self.take()


def _source_lines(text: str) -> Iterable[Tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield number, body


def parse_system(text: str, nvars: Optional[int] = None) -> PolySystem:
    """Parse one polynomial per line, ``#`` starting a comment.

    When ``nvars`` is omitted it is the largest variable index in use (at least 1).
    """
    lines = list(_source_lines(text))
    if not lines:
        raise SystemParseError("the system contains no polynomial", 1, 1)
    if nvars is None:
        indices = [int(i) for _, body in lines for i in re.findall(r"x(\d+)", body)]
        nvars = max(indices, default=1)
    if nvars < 1:
        raise ValueError(f"nvars must be positive, got {nvars}")
    polys = [
        SparsePoly.from_dict(nvars, _LineParser(body, number, nvars).parse())
        for number, body in lines
    ]
    logger.debug("parsed %d polynomials in %d variables", len(polys), nvars)
    return PolySystem(tuple(polys))
