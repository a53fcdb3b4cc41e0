"""
Complete residuated lattices used as the structure of ranks.

Degrees are bare carrier values: floats in [0, 1] for the unit-interval
lattices and integer numerators k (meaning k/n) for the finite chain. The
lattice object owns every operation on them; tables and catalogs carry the
lattice so that degrees of different structures never meet.

A bare degree does not record its lattice: the integers 0 and 1 belong to
the chain carriers and the unit interval alike. The module-level helpers
below only check carrier membership, so mixing lattices is detected where
the lattice travels with the data, in RankedDataTable operations
(OpErrorKind.LATTICE_MISMATCH) and Catalog.add_table.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Union

import numpy as np

from .errors import LatticeError

Degree = Union[float, int]

# Comparison tolerance for law checks on float carriers.
EPSILON = 1e-9


class LatticeKind(Enum):
    LUKASIEWICZ = "lukasiewicz"
    GOEDEL = "goedel"
    PRODUCT = "product"
    CHAIN = "chain"


class ResiduatedLattice(ABC):
    """Base class for the structures <L, meet, join, tnorm, residuum, 0, 1>."""

    kind: LatticeKind

    @property
    @abstractmethod
    def bot(self) -> Degree:
        pass

    @property
    @abstractmethod
    def top(self) -> Degree:
        pass

    @property
    def is_exact(self) -> bool:
        """True when all operations are exact (no float rounding)."""
        return False

    @property
    def name(self) -> str:
        return self.kind.value

    @abstractmethod
    def tnorm(self, a: Degree, b: Degree) -> Degree:
        pass

    @abstractmethod
    def residuum(self, a: Degree, b: Degree) -> Degree:
        pass

    @abstractmethod
    def contains(self, a) -> bool:
        """Return True if a is an element of the carrier."""
        pass

    @abstractmethod
    def parse_degree(self, text: str) -> Degree:
        pass

    @abstractmethod
    def format_degree(self, a: Degree) -> str:
        pass

    @abstractmethod
    def serialize_degree(self, a: Degree) -> str:
        pass

    @abstractmethod
    def to_float(self, a: Degree) -> float:
        pass

    @abstractmethod
    def sample(self, rng: np.random.Generator, size: int) -> List[Degree]:
        pass

    def meet(self, a: Degree, b: Degree) -> Degree:
        return a if a <= b else b

    def join(self, a: Degree, b: Degree) -> Degree:
        return a if a >= b else b

    def biresiduum(self, a: Degree, b: Degree) -> Degree:
        return self.meet(self.residuum(a, b), self.residuum(b, a))

    def meet_all(self, values: Iterable[Degree]) -> Degree:
        """Infimum; the empty infimum is top."""
        result = self.top
        for value in values:
            if value < result:
                result = value
                if result == self.bot:
                    break
        return result

    def join_all(self, values: Iterable[Degree]) -> Degree:
        """Supremum; the empty supremum is bot."""
        result = self.bot
        for value in values:
            if value > result:
                result = value
                if result == self.top:
                    break
        return result

    def tnorm_all(self, values: Iterable[Degree]) -> Degree:
        result = self.top
        for value in values:
            result = self.tnorm(result, value)
        return result

    def leq(self, a: Degree, b: Degree) -> bool:
        return a <= b

    def approx_leq(self, a: Degree, b: Degree, tolerance: float = EPSILON) -> bool:
        """Order test that forgives float rounding; exact carriers ignore tolerance."""
        if self.is_exact:
            return a <= b
        return a <= b + tolerance

    def approx_eq(self, a: Degree, b: Degree, tolerance: float = EPSILON) -> bool:
        if self.is_exact:
            return a == b
        return abs(a - b) <= tolerance

    def check(self, a) -> Degree:
        """Return a unchanged or raise LatticeError if it is not in the carrier."""
        if not self.contains(a):
            raise LatticeError(f"{a!r} is not an element of the {self.name} carrier")
        return a

    def elements(self) -> Optional[List[Degree]]:
        """All carrier elements for finite lattices, None otherwise."""
        return None

    def __eq__(self, other) -> bool:
        return isinstance(other, ResiduatedLattice) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"

    def _key(self):
        return (self.kind,)


class UnitIntervalLattice(ResiduatedLattice):
    """Shared behaviour of the lattices whose carrier is the real unit interval."""

    @property
    def bot(self) -> float:
        return 0.0

    @property
    def top(self) -> float:
        return 1.0

    def contains(self, a) -> bool:
        if isinstance(a, bool) or not isinstance(a, (int, float)):
            return False
        return 0.0 <= a <= 1.0

    def parse_degree(self, text: str) -> float:
        value = _parse_decimal(text)
        if value < 0 or value > 1:
            raise LatticeError(f"degree {text!r} is outside [0, 1]")
        return float(value)

    def format_degree(self, a: Degree) -> str:
        # As few decimals as needed (at least two) without losing the value.
        for places in range(2, 13):
            if abs(round(a, places) - a) <= 1e-12:
                return f"{a:.{places}f}"
        return repr(float(a))

    def serialize_degree(self, a: Degree) -> str:
        return repr(float(a))

    def to_float(self, a: Degree) -> float:
        return float(a)

    def sample(self, rng: np.random.Generator, size: int) -> List[float]:
        # Mix uniform draws with grid points so that ties and endpoints occur.
        uniform = rng.random(size)
        grid = rng.integers(0, 21, size) / 20.0
        use_grid = rng.random(size) < 0.3
        return [float(g if flag else u) for u, g, flag in zip(uniform, grid, use_grid)]


class LukasiewiczLattice(UnitIntervalLattice):
    kind = LatticeKind.LUKASIEWICZ

    def tnorm(self, a: Degree, b: Degree) -> float:
        # Keep 1 an exact unit; a + b - 1 rounds otherwise.
        if a == 1.0:
            return float(b)
        if b == 1.0:
            return float(a)
        return max(a + b - 1.0, 0.0)

    def residuum(self, a: Degree, b: Degree) -> float:
        if a <= b:
            return 1.0
        return min(1.0 - a + b, 1.0)


class GoedelLattice(UnitIntervalLattice):
    kind = LatticeKind.GOEDEL

    def tnorm(self, a: Degree, b: Degree) -> float:
        return float(min(a, b))

    def residuum(self, a: Degree, b: Degree) -> float:
        return 1.0 if a <= b else float(b)


class ProductLattice(UnitIntervalLattice):
    kind = LatticeKind.PRODUCT

    def tnorm(self, a: Degree, b: Degree) -> float:
        return float(a * b)

    def residuum(self, a: Degree, b: Degree) -> float:
        # a = 0 falls into the first branch: 0 -> b = 1.
        if a <= b:
            return 1.0
        return b / a


class ChainLattice(ResiduatedLattice):
    """Finite Lukasiewicz chain {0, 1/n, ..., 1} stored as integer numerators."""

    kind = LatticeKind.CHAIN

    def __init__(self, size: int):
        if isinstance(size, bool) or not isinstance(size, int) or size < 1:
            raise LatticeError(f"chain size must be a positive integer, got {size!r}")
        self.size = size

    @property
    def bot(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.size

    @property
    def is_exact(self) -> bool:
        return True

    @property
    def name(self) -> str:
        return f"chain({self.size})"

    def tnorm(self, a: Degree, b: Degree) -> int:
        return max(a + b - self.size, 0)

    def residuum(self, a: Degree, b: Degree) -> int:
        return min(self.size - a + b, self.size)

    def biresiduum(self, a: Degree, b: Degree) -> int:
        return self.size - abs(a - b)

    def contains(self, a) -> bool:
        if isinstance(a, bool) or not isinstance(a, int):
            return False
        return 0 <= a <= self.size

    def parse_degree(self, text: str) -> int:
        text = text.strip()
        if "/" in text:
            numerator, _, denominator = text.partition("/")
            try:
                value = Fraction(int(numerator), int(denominator))
            except (ValueError, ZeroDivisionError):
                raise LatticeError(f"malformed degree {text!r}")
        else:
            value = Fraction(_parse_decimal(text))
        if value < 0 or value > 1:
            raise LatticeError(f"degree {text!r} is outside [0, 1]")
        scaled = value * self.size
        if scaled.denominator != 1:
            raise LatticeError(f"degree {text!r} is not a multiple of 1/{self.size}")
        return int(scaled)

    def format_degree(self, a: Degree) -> str:
        places = _decimal_places(self.size)
        if places is None:
            return f"{a}/{self.size}"
        if places == 0:
            return str(a // self.size)
        value = Decimal(a) / Decimal(self.size)
        return f"{value:.{places}f}"

    def serialize_degree(self, a: Degree) -> str:
        return self.format_degree(a)

    def to_float(self, a: Degree) -> float:
        return a / self.size

    def sample(self, rng: np.random.Generator, size: int) -> List[int]:
        return [int(v) for v in rng.integers(0, self.size + 1, size)]

    def elements(self) -> List[int]:
        return list(range(self.size + 1))

    def _key(self):
        return (self.kind, self.size)


class HedgeKind(Enum):
    IDENTITY = "identity"
    GLOBALIZATION = "globalization"


@dataclass(frozen=True)
class Hedge:
    """Truth-stressing hedge; only the two boundary hedges are shipped."""

    kind: HedgeKind

    def apply(self, lattice: ResiduatedLattice, a: Degree) -> Degree:
        if self.kind is HedgeKind.IDENTITY:
            return a
        # Exact comparison against the stored top.
        return lattice.top if a == lattice.top else lattice.bot

    @classmethod
    def named(cls, name: str) -> "Hedge":
        try:
            return cls(HedgeKind(name.strip().lower()))
        except ValueError:
            raise LatticeError(f"unknown hedge {name!r}; expected identity or globalization")


IDENTITY = Hedge(HedgeKind.IDENTITY)
GLOBALIZATION = Hedge(HedgeKind.GLOBALIZATION)


def make_lattice(kind: Union[str, LatticeKind], chain_size: Optional[int] = None) -> ResiduatedLattice:
    """Build a validated lattice instance."""
    if isinstance(kind, str):
        try:
            kind = LatticeKind(kind.strip().lower())
        except ValueError:
            raise LatticeError(f"unknown lattice kind {kind!r}")
    if kind is LatticeKind.CHAIN:
        if chain_size is None:
            raise LatticeError("chain lattice requires a chain size")
        return ChainLattice(chain_size)
    if kind is LatticeKind.LUKASIEWICZ:
        return LukasiewiczLattice()
    if kind is LatticeKind.GOEDEL:
        return GoedelLattice()
    return ProductLattice()


def tnorm(lattice: ResiduatedLattice, a: Degree, b: Degree) -> Degree:
    """Carrier-checked tnorm; degrees valid on several carriers pass (see module notes)."""
    return lattice.tnorm(lattice.check(a), lattice.check(b))


def residuum(lattice: ResiduatedLattice, a: Degree, b: Degree) -> Degree:
    return lattice.residuum(lattice.check(a), lattice.check(b))


def biresiduum(lattice: ResiduatedLattice, a: Degree, b: Degree) -> Degree:
    return lattice.biresiduum(lattice.check(a), lattice.check(b))


def hedge_apply(hedge: Hedge, lattice: ResiduatedLattice, a: Degree) -> Degree:
    return hedge.apply(lattice, lattice.check(a))


def _parse_decimal(text: str) -> Decimal:
    try:
        value = Decimal(str(text).strip())
    except InvalidOperation:
        raise LatticeError(f"malformed degree {text!r}")
    if not value.is_finite():
        raise LatticeError(f"malformed degree {text!r}")
    return value


def _decimal_places(n: int) -> Optional[int]:
    """Decimals needed to print every k/n exactly, or None if some k/n repeats."""
    twos = fives = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    while n % 5 == 0:
        n //= 5
        fives += 1
    if n != 1:
        return None
    return max(twos, fives)
