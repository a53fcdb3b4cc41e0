"""
Tests for subsethood and similarity of ranked data tables.
"""
import pytest

from engine.errors import OpError, OpErrorKind, RankDBError
from engine.lattice import GLOBALIZATION
from engine.rdt import a_shift
from engine.similarity import (HEDGED_GLOBALIZATION, HEDGED_IDENTITY, RANK_BASED, TUPLE_BASED,
                               ComparisonConfig, ComparisonMode, Enumeration, compare, subsethood,
                               table_similarity)

FULL_RANK = ComparisonConfig(enumeration=Enumeration.FULL)
FULL_TUPLE = ComparisonConfig(ComparisonMode.TUPLE_BASED, enumeration=Enumeration.FULL)


@pytest.fixture
def d1(make_table):
    return make_table(('x', 'p', 7), ('y', 'p', 4))


@pytest.fixture
def d2(make_table):
    return make_table(('x', 'p', 5), ('z', 'q', 3))


class TestRankBased:
    def test_subsethood_and_similarity(self, d1, d2):
        assert subsethood(d1, d2) == 6
        assert subsethood(d2, d1) == 7
        assert table_similarity(d1, d2) == 6
        assert compare(d1, d2) == (6, 7, 6)

    def test_reflexive(self, d1):
        assert subsethood(d1, d1) == 10
        assert table_similarity(d1, d1) == 10

    def test_full_enumeration_agrees_on_finite_universes(self, d1, d2):
        assert subsethood(d1, d2, FULL_RANK) == subsethood(d1, d2)
        assert subsethood(d2, d1, FULL_RANK) == subsethood(d2, d1)

    def test_nonzero_defaults(self, d1):
        shifted = a_shift(6, d1)
        assert subsethood(shifted, d1) == 6
        assert subsethood(shifted, d1, FULL_RANK) == 6
        assert subsethood(d1, shifted) == 10

    def test_scheme_mismatch(self, d1, example_catalog):
        with pytest.raises(OpError) as excinfo:
            subsethood(d1, example_catalog['customers'])
        assert excinfo.value.kind in (OpErrorKind.LATTICE_MISMATCH, OpErrorKind.SCHEME_MISMATCH)

    def test_houses_against_alternative_ranking(self, example_catalog):
        houses, alternative = example_catalog['houses'], example_catalog['houses_alt']
        forward, backward, similarity = compare(houses, alternative)
        assert forward == pytest.approx(0.98, abs=1e-12)
        assert backward == pytest.approx(0.98, abs=1e-12)
        assert similarity == pytest.approx(0.98, abs=1e-12)
        assert example_catalog.lattice.format_degree(similarity) == "0.98"


class TestTupleBased:
    def test_similar_tuples_count_as_included(self, make_table):
        left, right = make_table(('x', 'p', 7)), make_table(('y', 'p', 7))
        assert subsethood(left, right, RANK_BASED) == 3
        assert subsethood(left, right, TUPLE_BASED) == 6
        assert subsethood(left, right, FULL_TUPLE) == 6

    def test_hedged_specializations(self, make_table):
        left, right = make_table(('x', 'p', 7)), make_table(('y', 'p', 7))
        assert subsethood(left, right, HEDGED_IDENTITY) == subsethood(left, right, TUPLE_BASED)
        assert subsethood(left, right, HEDGED_GLOBALIZATION) == subsethood(left, right, RANK_BASED)

    def test_tuple_based_needs_zero_defaults(self, d1):
        with pytest.raises(OpError) as excinfo:
            subsethood(a_shift(6, d1), d1, TUPLE_BASED)
        assert excinfo.value.kind is OpErrorKind.NONZERO_DEFAULT_UNSUPPORTED

    def test_empty_tables(self, make_table, d1):
        empty = make_table()
        assert subsethood(empty, d1, TUPLE_BASED) == 10
        assert subsethood(d1, empty, TUPLE_BASED) == 3


class TestComparisonConfig:
    def test_from_names(self):
        cfg = ComparisonConfig.from_names('hedged', 'globalization')
        assert cfg.mode is ComparisonMode.HEDGED
        assert cfg.hedge == GLOBALIZATION
        assert cfg.describe() == "hedged(globalization)"
        assert ComparisonConfig.from_names('tuple', 'globalization').effective_hedge != GLOBALIZATION

    def test_from_names_rejects_unknown_mode(self):
        with pytest.raises(RankDBError):
            ComparisonConfig.from_names('fuzzy')
