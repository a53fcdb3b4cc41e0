"""
Rank engine package

Residuated lattices of ranks, domains with similarity, ranked data tables with
their relational operations, and graded subsethood/similarity of tables.
"""

from .errors import (RankDBError, LatticeError, SchemaError, SimilarityError, OpError,
                     OpErrorKind, QuerySyntaxError, QueryEvaluationError, ConfigError,
                     CsvFormatError, UnboundTableError)
from .lattice import (ResiduatedLattice, LatticeKind, Hedge, HedgeKind, IDENTITY, GLOBALIZATION,
                      make_lattice, tnorm, residuum, biresiduum, hedge_apply)
from .schema import (DomainWithSimilarity, RelationScheme, DataTuple, ValueKind, SimilarityKind,
                     similarity, transitive_under, validate_similarity, tuple_concat, tuple_similarity, make_tuple)
from .rdt import (RankedDataTable, CombineKind, ClosureMode, rank_of, combine, a_shift, project,
                  select_sim, select_attr, cartesian, join_sim, select_closure)
from .similarity import (ComparisonConfig, ComparisonMode, Enumeration, RANK_BASED, TUPLE_BASED,
                         subsethood, table_similarity, compare)

__all__ = [
    'RankDBError', 'LatticeError', 'SchemaError', 'SimilarityError', 'OpError', 'OpErrorKind',
    'QuerySyntaxError', 'QueryEvaluationError', 'ConfigError', 'CsvFormatError', 'UnboundTableError',
    'ResiduatedLattice', 'LatticeKind', 'Hedge', 'HedgeKind', 'IDENTITY', 'GLOBALIZATION',
    'make_lattice', 'tnorm', 'residuum', 'biresiduum', 'hedge_apply',
    'DomainWithSimilarity', 'RelationScheme', 'DataTuple', 'ValueKind', 'SimilarityKind',
    'similarity', 'transitive_under', 'validate_similarity', 'tuple_concat', 'tuple_similarity', 'make_tuple',
    'RankedDataTable', 'CombineKind', 'ClosureMode', 'rank_of', 'combine', 'a_shift', 'project',
    'select_sim', 'select_attr', 'cartesian', 'join_sim', 'select_closure',
    'ComparisonConfig', 'ComparisonMode', 'Enumeration', 'RANK_BASED', 'TUPLE_BASED',
    'subsethood', 'table_similarity', 'compare',
]
