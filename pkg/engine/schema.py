"""
Attributes, relation schemes, domains with similarity and tuples.
"""
import itertools
import re
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from .errors import OpError, OpErrorKind, SchemaError, SimilarityError
from .lattice import IDENTITY, Degree, Hedge, LatticeKind, ResiduatedLattice

Value = Union[str, Decimal]

NAME_PATTERN = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')


class ValueKind(Enum):
    TEXT = "text"
    NUMBER = "number"


class SimilarityKind(Enum):
    IDENTITY = "identity"
    TABLE = "table"
    RAMP = "ramp"


def validate_name(name: str, what: str = "attribute") -> str:
    if not isinstance(name, str) or not NAME_PATTERN.match(name):
        raise SchemaError(f"invalid {what} name {name!r}")
    return name


@dataclass(frozen=True)
class DomainWithSimilarity:
    """A value domain together with a reflexive, symmetric L-relation on it.

    Table similarities list unordered pairs; pairs not listed are unrelated
    (degree 0). `values`, when given, declares a finite universe which makes
    the domain enumerable.
    """

    id: str
    value_kind: ValueKind
    lattice: ResiduatedLattice
    similarity_kind: SimilarityKind = SimilarityKind.IDENTITY
    pairs: Tuple[Tuple[Value, Value, Degree], ...] = ()
    k: Optional[Decimal] = None
    values: Optional[Tuple[Value, ...]] = None
    _lookup: Dict[Tuple[Value, Value], Degree] = field(
        default_factory=dict, init=False, compare=False, hash=False, repr=False)
    _problems: List[str] = field(default_factory=list, init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        validate_name(self.id, "domain")
        if self.similarity_kind is SimilarityKind.RAMP:
            if self.value_kind is not ValueKind.NUMBER:
                raise SchemaError(f"domain {self.id}: ramp similarity needs a number domain")
            if self.k is None or Decimal(self.k) <= 0:
                raise SchemaError(f"domain {self.id}: ramp similarity needs k > 0")
            object.__setattr__(self, 'k', Decimal(self.k))
        if self.values is not None:
            coerced = tuple(dict.fromkeys(self._coerce_kind(v) for v in self.values))
            object.__setattr__(self, 'values', coerced)

        pairs = []
        for u, v, degree in self.pairs:
            u, v = self.coerce(u), self.coerce(v)
            self.lattice.check(degree)
            pairs.append((u, v, degree))
            if u == v:
                if degree != self.lattice.top:
                    self._problems.append(
                        f"reflexivity violated: {u} ~ {u} listed with degree "
                        f"{self.lattice.format_degree(degree)}")
                continue
            previous = self._lookup.get((u, v))
            if previous is not None and previous != degree:
                self._problems.append(
                    f"asymmetric duplicate pair {u} ~ {v}: "
                    f"{self.lattice.format_degree(previous)} vs {self.lattice.format_degree(degree)}")
                continue
            self._lookup[(u, v)] = degree
            self._lookup[(v, u)] = degree
        object.__setattr__(self, 'pairs', tuple(pairs))

    @property
    def is_enumerable(self) -> bool:
        return self.values is not None

    def _coerce_kind(self, value: Any) -> Value:
        if self.value_kind is ValueKind.NUMBER:
            if isinstance(value, Decimal):
                return value
            if isinstance(value, bool):
                raise SchemaError(f"domain {self.id}: {value!r} is not a number")
            if isinstance(value, int):
                return Decimal(value)
            if isinstance(value, float):
                return Decimal(repr(value))
            if isinstance(value, str):
                try:
                    parsed = Decimal(value.strip())
                except InvalidOperation:
                    raise SchemaError(f"domain {self.id}: {value!r} is not a number")
                if not parsed.is_finite():
                    raise SchemaError(f"domain {self.id}: {value!r} is not a finite number")
                return parsed
            raise SchemaError(f"domain {self.id}: {value!r} is not a number")
        if not isinstance(value, str):
            raise SchemaError(f"domain {self.id}: {value!r} is not text")
        return value

    def coerce(self, value: Any) -> Value:
        """Convert value to the domain's kind, rejecting mismatches."""
        value = self._coerce_kind(value)
        if self.values is not None and value not in self.values:
            raise SchemaError(f"domain {self.id}: {value} is outside the declared values")
        return value

    def similarity(self, u: Value, v: Value) -> Degree:
        """Degree of similarity of two (already coerced) domain values."""
        if u == v:
            return self.lattice.top
        kind = self.similarity_kind
        if kind is SimilarityKind.IDENTITY:
            return self.lattice.bot
        if kind is SimilarityKind.TABLE:
            return self._lookup.get((u, v), self.lattice.bot)
        distance = abs(u - v)
        if distance >= self.k:
            return self.lattice.bot
        if self.lattice.is_exact:
            # Round down onto the chain; keeps reflexivity and symmetry.
            scaled = Fraction(self.k - distance) / Fraction(self.k) * self.lattice.top
            return int(scaled)
        return max(1.0 - float(distance) / float(self.k), 0.0)

    def separating(self) -> bool:
        """True when only identical values are similar to degree 1."""
        if self.similarity_kind is SimilarityKind.TABLE:
            return all(degree != self.lattice.top for degree in self._lookup.values())
        # Identity trivially; ramp since |u - v| > 0 gives a degree below 1.
        return True


def similarity(domain: DomainWithSimilarity, u: Any, v: Any) -> Degree:
    return domain.similarity(domain.coerce(u), domain.coerce(v))


@dataclass
class SimilarityReport:
    domain_id: str
    reflexive: bool
    symmetric: bool
    separating: bool
    transitive: Optional[bool]
    hedge: str
    violation: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'domain': self.domain_id,
            'reflexive': self.reflexive,
            'symmetric': self.symmetric,
            'separating': self.separating,
            'transitive': self.transitive,
            'hedge': self.hedge,
            'violation': self.violation,
        }


def validate_similarity(domain: DomainWithSimilarity, hedge: Hedge = IDENTITY) -> SimilarityReport:
    """Check reflexivity and symmetry, and report (tr) transitivity and separation.

    Raises SimilarityError when the declared pairs break reflexivity or symmetry.
    """
    if domain._problems:
        raise SimilarityError(f"domain {domain.id}: {domain._problems[0]}")

    lattice = domain.lattice
    transitive: Optional[bool] = True
    violation = None
    if domain.similarity_kind is SimilarityKind.TABLE:
        transitive, violation = _check_table_transitivity(domain, hedge)
    elif domain.similarity_kind is SimilarityKind.RAMP:
        # Triangle inequality makes the ramp transitive under Lukasiewicz
        # multiplication (also after flooring onto a chain).
        if lattice.kind in (LatticeKind.LUKASIEWICZ, LatticeKind.CHAIN):
            transitive = True
        else:
            transitive = None

    return SimilarityReport(
        domain_id=domain.id,
        reflexive=True,
        symmetric=True,
        separating=domain.separating(),
        transitive=transitive,
        hedge=hedge.kind.value,
        violation=violation,
    )


def transitive_under(domain: DomainWithSimilarity, hedge: Hedge = IDENTITY) -> Optional[bool]:
    """Whether the similarity of domain is transitive once hedged; None when undecided."""
    return validate_similarity(domain, hedge).transitive


def _check_table_transitivity(domain: DomainWithSimilarity,
                              hedge: Hedge) -> Tuple[bool, Optional[str]]:
    lattice = domain.lattice
    values = set(domain.values or ())
    for u, v, _ in domain.pairs:
        values.update((u, v))
    ordered = sorted(values)
    for a, b, c in itertools.product(ordered, repeat=3):
        left = lattice.tnorm(hedge.apply(lattice, domain.similarity(a, b)),
                             hedge.apply(lattice, domain.similarity(b, c)))
        right = hedge.apply(lattice, domain.similarity(a, c))
        if not lattice.approx_leq(left, right):
            return False, (f"({a} ~ {b}) * ({b} ~ {c}) = {lattice.format_degree(left)} "
                           f"> {lattice.format_degree(right)} = ({a} ~ {c})")
    return True, None


@dataclass(frozen=True)
class RelationScheme:
    """A finite set of attributes, each bound to its domain with similarity."""

    bindings: Tuple[Tuple[str, DomainWithSimilarity], ...]

    @classmethod
    def of(cls, mapping: Mapping[str, DomainWithSimilarity]) -> "RelationScheme":
        for name in mapping:
            validate_name(name)
        return cls(tuple(sorted(mapping.items(), key=lambda item: item[0])))

    @property
    def attributes(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.bindings)

    def domain(self, attribute: str) -> DomainWithSimilarity:
        for name, domain in self.bindings:
            if name == attribute:
                return domain
        raise OpError(OpErrorKind.ATTRIBUTE_NOT_IN_SCHEME,
                      f"{attribute} is not in scheme {{{', '.join(self.attributes)}}}")

    def __contains__(self, attribute: str) -> bool:
        return any(name == attribute for name, _ in self.bindings)

    def __len__(self) -> int:
        return len(self.bindings)

    def is_disjoint(self, other: "RelationScheme") -> bool:
        return not set(self.attributes) & set(other.attributes)

    def union(self, other: "RelationScheme") -> "RelationScheme":
        merged = dict(self.bindings)
        for name, domain in other.bindings:
            if name in merged and merged[name] != domain:
                raise SchemaError(f"attribute {name} is bound to different domains")
            merged[name] = domain
        return RelationScheme.of(merged)

    def restrict(self, attributes: Iterable[str]) -> "RelationScheme":
        wanted = set(attributes)
        for name in wanted:
            if name not in self:
                raise OpError(OpErrorKind.ATTRIBUTE_NOT_IN_SCHEME,
                              f"{name} is not in scheme {{{', '.join(self.attributes)}}}")
        return RelationScheme(tuple(item for item in self.bindings if item[0] in wanted))

    @property
    def is_enumerable(self) -> bool:
        return all(domain.is_enumerable for _, domain in self.bindings)

    def describe(self) -> str:
        return "{" + ", ".join(f"{name}:{domain.id}" for name, domain in self.bindings) + "}"


class DataTuple:
    """A tuple over a relation scheme: an assignment attribute -> value."""

    __slots__ = ('items', '_map', '_hash')

    def __init__(self, items: Iterable[Tuple[str, Value]]):
        self.items: Tuple[Tuple[str, Value], ...] = tuple(sorted(items, key=lambda item: item[0]))
        self._map = dict(self.items)
        if len(self._map) != len(self.items):
            raise SchemaError("tuple assigns an attribute twice")
        self._hash = hash(self.items)

    @property
    def attributes(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.items)

    def __getitem__(self, attribute: str) -> Value:
        return self._map[attribute]

    def get(self, attribute: str, default=None):
        return self._map.get(attribute, default)

    def restrict(self, attributes: Iterable[str]) -> "DataTuple":
        wanted = set(attributes)
        return DataTuple(item for item in self.items if item[0] in wanted)

    def as_dict(self) -> Dict[str, Value]:
        return dict(self.items)

    def __eq__(self, other) -> bool:
        return isinstance(other, DataTuple) and self.items == other.items

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "DataTuple") -> bool:
        return self.items < other.items

    def __repr__(self) -> str:
        return "<" + ", ".join(f"{name}={value}" for name, value in self.items) + ">"


def make_tuple(scheme: RelationScheme, assignment: Mapping[str, Any]) -> DataTuple:
    """Build a tuple over scheme, coercing each value to its attribute's domain."""
    if set(assignment) != set(scheme.attributes):
        raise SchemaError(f"tuple attributes {sorted(assignment)} do not match scheme "
                          f"{list(scheme.attributes)}")
    return DataTuple((name, domain.coerce(assignment[name])) for name, domain in scheme.bindings)


def tuple_concat(r: DataTuple, s: DataTuple) -> DataTuple:
    overlap = set(r.attributes) & set(s.attributes)
    if overlap:
        raise SchemaError(f"cannot concatenate tuples sharing attributes {sorted(overlap)}")
    return DataTuple(r.items + s.items)


def tuple_similarity(scheme: RelationScheme, t: DataTuple, u: DataTuple,
                     lattice: Optional[ResiduatedLattice] = None) -> Degree:
    """Infimum over the scheme's attributes of the attribute similarities."""
    if t.attributes != scheme.attributes or u.attributes != scheme.attributes:
        raise SchemaError("tuples are not over the given scheme")
    if lattice is not None:
        for _, domain in scheme.bindings:
            if domain.lattice != lattice:
                raise SchemaError(f"domain {domain.id} is not over the {lattice.name} lattice")
    if lattice is None:
        if not scheme.bindings:
            raise SchemaError("a lattice is required for tuples over the empty scheme")
        lattice = scheme.bindings[0][1].lattice
    return tuple_similarity_unchecked(lattice, scheme, t, u)


def tuple_similarity_unchecked(lattice: ResiduatedLattice, scheme: RelationScheme,
                               t: DataTuple, u: DataTuple) -> Degree:
    result = lattice.top
    for name, domain in scheme.bindings:
        degree = domain.similarity(t[name], u[name])
        if degree < result:
            result = degree
            if result == lattice.bot:
                break
    return result


def enumerate_tuples(scheme: RelationScheme) -> Iterator[DataTuple]:
    """All tuples over scheme; every domain must declare a finite universe."""
    for name, domain in scheme.bindings:
        if not domain.is_enumerable:
            raise OpError(OpErrorKind.DOMAIN_NOT_ENUMERABLE,
                          f"domain {domain.id} of attribute {name} declares no finite values")
    names = scheme.attributes
    pools = [scheme.domain(name).values for name in names]
    for combination in itertools.product(*pools):
        yield DataTuple(zip(names, combination))
