"""
Exception hierarchy for the rank database.
"""
from enum import Enum
from typing import Optional


class RankDBError(Exception):
    """Base class for every user-facing error raised by the engine."""


class LatticeError(RankDBError):
    """Degree outside the carrier, mixed lattices or a bad lattice definition."""


class SchemaError(RankDBError):
    """Value/domain kind mismatch, overlapping schemes or malformed tuples."""


class SimilarityError(RankDBError):
    """A declared similarity violates reflexivity or symmetry."""


class OpErrorKind(Enum):
    SCHEME_MISMATCH = "scheme_mismatch"
    SCHEMES_NOT_DISJOINT = "schemes_not_disjoint"
    LATTICE_MISMATCH = "lattice_mismatch"
    MISSING_SIMILARITY = "missing_similarity"
    NONZERO_DEFAULT_UNSUPPORTED = "nonzero_default_unsupported"
    ATTRIBUTE_NOT_IN_SCHEME = "attribute_not_in_scheme"
    DOMAIN_NOT_ENUMERABLE = "domain_not_enumerable"


class OpError(RankDBError):
    """Precondition failure of a relational operation."""

    def __init__(self, kind: OpErrorKind, detail: str):
        self.kind = kind
        self.detail = detail
        super().__init__(f"{kind.value}: {detail}")


class QuerySyntaxError(RankDBError):
    def __init__(self, message: str, line: int, column: int):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class QueryEvaluationError(RankDBError):
    """An error raised while evaluating a query node, annotated with that node."""

    def __init__(self, node_text: str, cause: Exception):
        self.node_text = node_text
        self.cause = cause
        super().__init__(f"{cause} (in: {node_text})")


class ConfigError(RankDBError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.message = message
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class CsvFormatError(RankDBError):
    def __init__(self, message: str, row: Optional[int] = None):
        self.message = message
        self.row = row
        where = f"row {row}: " if row is not None else ""
        super().__init__(f"{where}{message}")


class UnboundTableError(RankDBError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound table name {name!r}")
