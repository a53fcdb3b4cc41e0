"""
Query expression tree.

Nodes are immutable and compare structurally, so a parsed query can be
printed with `to_text` and reparsed into an equal tree.
"""
from dataclasses import dataclass
from decimal import Decimal
from typing import Iterator, Tuple
import typing

# A selection literal: quoted text stays str, numerals become Decimal.
Literal = typing.Union[str, Decimal]

KEYWORDS = frozenset({
    'shift', 'project', 'union', 'meet', 'otimes', 'residuum', 'cross',
    'join', 'on', 'select', 'selectc', 'where',
})


class QueryExpr:
    """Base class of all query nodes."""

    def children(self) -> Tuple["QueryExpr", ...]:
        return ()

    def to_text(self) -> str:
        raise NotImplementedError

    def walk(self) -> Iterator["QueryExpr"]:
        """Pre-order traversal of the tree."""
        yield self
        for child in self.children():
            yield from child.walk()

    def table_names(self) -> Tuple[str, ...]:
        seen = dict.fromkeys(node.name for node in self.walk() if isinstance(node, TableRef))
        return tuple(seen)

    def depth(self) -> int:
        return 1 + max((child.depth() for child in self.children()), default=0)

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class TableRef(QueryExpr):
    name: str

    def to_text(self) -> str:
        return self.name


@dataclass(frozen=True)
class BinaryExpr(QueryExpr):
    left: QueryExpr
    right: QueryExpr

    keyword = ''

    def children(self) -> Tuple[QueryExpr, ...]:
        return (self.left, self.right)

    def to_text(self) -> str:
        return f"{self.keyword} ({self.left.to_text()}, {self.right.to_text()})"


@dataclass(frozen=True)
class Union(BinaryExpr):
    keyword = 'union'


@dataclass(frozen=True)
class Meet(BinaryExpr):
    keyword = 'meet'


@dataclass(frozen=True)
class OTimes(BinaryExpr):
    keyword = 'otimes'


@dataclass(frozen=True)
class Residuum(BinaryExpr):
    keyword = 'residuum'


@dataclass(frozen=True)
class Cross(BinaryExpr):
    keyword = 'cross'


@dataclass(frozen=True)
class Join(QueryExpr):
    left: QueryExpr
    right: QueryExpr
    p: str
    q: str

    def children(self) -> Tuple[QueryExpr, ...]:
        return (self.left, self.right)

    def to_text(self) -> str:
        return f"join ({self.left.to_text()}, {self.right.to_text()}) on {self.p} ~ {self.q}"


@dataclass(frozen=True)
class Shift(QueryExpr):
    # Kept as the exact decimal written; the evaluator maps it onto the lattice.
    degree: Decimal
    child: QueryExpr

    def children(self) -> Tuple[QueryExpr, ...]:
        return (self.child,)

    def to_text(self) -> str:
        return f"shift {format_decimal(self.degree)} {_operand(self.child)}"


@dataclass(frozen=True)
class Project(QueryExpr):
    attributes: Tuple[str, ...]
    child: QueryExpr

    def children(self) -> Tuple[QueryExpr, ...]:
        return (self.child,)

    def to_text(self) -> str:
        return f"project [{','.join(self.attributes)}] {_operand(self.child)}"


@dataclass(frozen=True)
class SelectVal(QueryExpr):
    child: QueryExpr
    attribute: str
    literal: Literal

    keyword = 'select'

    def children(self) -> Tuple[QueryExpr, ...]:
        return (self.child,)

    def to_text(self) -> str:
        return f"{self.keyword} {_operand(self.child)} where {self.attribute} ~ {format_literal(self.literal)}"


@dataclass(frozen=True)
class SelectClosure(SelectVal):
    keyword = 'selectc'


@dataclass(frozen=True)
class SelectAttr(QueryExpr):
    child: QueryExpr
    p: str
    q: str

    def children(self) -> Tuple[QueryExpr, ...]:
        return (self.child,)

    def to_text(self) -> str:
        return f"select {_operand(self.child)} where {self.p} ~ {self.q}"


def _operand(expr: QueryExpr) -> str:
    # Nested prefix operators print parenthesized.
    text = expr.to_text()
    if isinstance(expr, (SelectVal, SelectAttr, Shift, Project)):
        return f"({text})"
    return text


def format_decimal(value: Decimal) -> str:
    return format(value, 'f')


def format_literal(literal: Literal) -> str:
    if isinstance(literal, Decimal):
        return format_decimal(literal)
    escaped = literal.replace('\\', '\\\\').replace("'", "\\'")
    return f"'{escaped}'"
