"""
Tests for domains with similarity, relation schemes and tuples.
"""
from decimal import Decimal

import pytest

from engine.errors import OpError, OpErrorKind, SchemaError, SimilarityError
from engine.lattice import GLOBALIZATION, ChainLattice, LukasiewiczLattice
from engine.schema import (DataTuple, DomainWithSimilarity, RelationScheme, SimilarityKind,
                           ValueKind, enumerate_tuples, make_tuple, similarity, transitive_under,
                           tuple_concat, tuple_similarity, validate_similarity)


def text_domain(lattice, pairs=(), values=None, domain_id='D'):
    return DomainWithSimilarity(domain_id, ValueKind.TEXT, lattice, SimilarityKind.TABLE,
                                pairs=tuple(pairs), values=values)


class TestDomains:
    def test_invalid_id(self, luk):
        with pytest.raises(SchemaError):
            DomainWithSimilarity('1st', ValueKind.TEXT, luk)

    def test_ramp_needs_number_domain_and_positive_k(self, luk):
        with pytest.raises(SchemaError):
            DomainWithSimilarity('P', ValueKind.TEXT, luk, SimilarityKind.RAMP, k=Decimal(10))
        with pytest.raises(SchemaError):
            DomainWithSimilarity('P', ValueKind.NUMBER, luk, SimilarityKind.RAMP, k=Decimal(0))
        with pytest.raises(SchemaError):
            DomainWithSimilarity('P', ValueKind.NUMBER, luk, SimilarityKind.RAMP)

    def test_ramp_on_unit_interval(self, luk):
        domain = DomainWithSimilarity('SQFT', ValueKind.NUMBER, luk, SimilarityKind.RAMP,
                                      k=Decimal(1000))
        assert similarity(domain, 1100, 1350) == pytest.approx(0.75)
        assert similarity(domain, 0, 1000) == 0.0
        assert similarity(domain, 7, 7) == 1.0

    def test_ramp_rounds_down_on_chains(self, chain10):
        domain = DomainWithSimilarity('N', ValueKind.NUMBER, chain10, SimilarityKind.RAMP, k=Decimal(4))
        assert similarity(domain, 1, 2) == 7
        assert similarity(domain, 2, 1) == 7

    def test_table_similarity_is_symmetric(self, luk):
        domain = text_domain(luk, [('Vestal', 'Endicott', 0.6)])
        assert similarity(domain, 'Endicott', 'Vestal') == 0.6
        assert similarity(domain, 'Vestal', 'Binghamton') == 0.0
        assert similarity(domain, 'Vestal', 'Vestal') == 1.0

    def test_identity_similarity(self, luk):
        domain = DomainWithSimilarity('NAME', ValueKind.TEXT, luk)
        assert similarity(domain, 'Evans', 'Evans') == 1.0
        assert similarity(domain, 'Evans', 'Finch') == 0.0

    def test_coercion(self, luk):
        numbers = DomainWithSimilarity('N', ValueKind.NUMBER, luk)
        assert numbers.coerce("12.5") == Decimal("12.5")
        assert numbers.coerce(3) == Decimal(3)
        with pytest.raises(SchemaError):
            numbers.coerce("abc")
        with pytest.raises(SchemaError):
            numbers.coerce(True)
        with pytest.raises(SchemaError):
            DomainWithSimilarity('T', ValueKind.TEXT, luk).coerce(5)

    def test_declared_values(self, luk):
        domain = text_domain(luk, values=('a', 'b'))
        assert domain.is_enumerable
        assert domain.coerce('a') == 'a'
        with pytest.raises(SchemaError):
            domain.coerce('c')


class TestValidation:
    def test_reflexivity_violation(self, luk):
        with pytest.raises(SimilarityError, match="reflexivity"):
            validate_similarity(text_domain(luk, [('a', 'a', 0.5)]))

    def test_asymmetric_duplicate(self, luk):
        with pytest.raises(SimilarityError, match="asymmetric"):
            validate_similarity(text_domain(luk, [('a', 'b', 0.5), ('b', 'a', 0.6)]))

    def test_transitive_table(self, luk):
        domain = text_domain(luk, [('Vestal', 'Endicott', 0.6), ('Vestal', 'Binghamton', 0.7),
                                   ('Endicott', 'Binghamton', 0.8)])
        report = validate_similarity(domain)
        assert report.transitive is True
        assert report.separating is True
        assert report.to_dict()['domain'] == 'D'

    def test_intransitive_table_names_the_triple(self, chain10):
        domain = text_domain(chain10, [('x', 'y', 6), ('y', 'z', 6)])
        report = validate_similarity(domain)
        assert report.transitive is False
        assert 'x' in report.violation and 'z' in report.violation

    def test_globalization_only_sees_full_similarity(self, chain10):
        domain = text_domain(chain10, [('x', 'y', 6), ('y', 'z', 6)])
        assert validate_similarity(domain, GLOBALIZATION).transitive is True
        assert transitive_under(domain, GLOBALIZATION) is True
        assert transitive_under(domain) is False

    def test_separating(self, chain10):
        assert not validate_similarity(text_domain(chain10, [('x', 'y', 10)])).separating
        assert validate_similarity(text_domain(chain10, [('x', 'y', 9)])).separating

    def test_ramp_is_transitive_under_lukasiewicz(self, luk):
        domain = DomainWithSimilarity('P', ValueKind.NUMBER, luk, SimilarityKind.RAMP, k=Decimal(10))
        assert validate_similarity(domain).transitive is True


class TestSchemesAndTuples:
    def test_scheme_is_sorted(self, small_scheme):
        assert small_scheme.attributes == ('A', 'B')
        assert small_scheme.describe() == "{A:DA, B:DB}"
        assert 'A' in small_scheme and 'C' not in small_scheme

    def test_restrict(self, small_scheme):
        assert small_scheme.restrict(['B']).attributes == ('B',)
        with pytest.raises(OpError) as excinfo:
            small_scheme.restrict(['Z'])
        assert excinfo.value.kind is OpErrorKind.ATTRIBUTE_NOT_IN_SCHEME

    def test_union_and_disjointness(self, small_scheme, chain10):
        other = RelationScheme.of({'C': DomainWithSimilarity('DC', ValueKind.TEXT, chain10)})
        assert small_scheme.is_disjoint(other)
        assert small_scheme.union(other).attributes == ('A', 'B', 'C')
        clash = RelationScheme.of({'A': DomainWithSimilarity('DC', ValueKind.TEXT, chain10)})
        assert not small_scheme.is_disjoint(clash)
        with pytest.raises(SchemaError):
            small_scheme.union(clash)

    def test_make_tuple(self, small_scheme):
        t = make_tuple(small_scheme, {'B': 'p', 'A': 'x'})
        assert t.attributes == ('A', 'B')
        assert t['A'] == 'x'
        with pytest.raises(SchemaError):
            make_tuple(small_scheme, {'A': 'x'})
        with pytest.raises(SchemaError):
            make_tuple(small_scheme, {'A': 'w', 'B': 'p'})

    def test_tuple_concat(self):
        joined = tuple_concat(DataTuple([('B', 'p')]), DataTuple([('A', 'x'), ('C', 'z')]))
        assert joined.attributes == ('A', 'B', 'C')
        with pytest.raises(SchemaError):
            tuple_concat(joined, DataTuple([('A', 'y')]))

    def test_tuple_similarity_is_the_minimum(self, small_scheme):
        t = make_tuple(small_scheme, {'A': 'x', 'B': 'p'})
        u = make_tuple(small_scheme, {'A': 'y', 'B': 'p'})
        v = make_tuple(small_scheme, {'A': 'y', 'B': 'q'})
        assert tuple_similarity(small_scheme, t, u) == 6
        assert tuple_similarity(small_scheme, t, v) == 0
        assert tuple_similarity(small_scheme, t, t) == 10

    def test_empty_scheme(self):
        empty = RelationScheme.of({})
        with pytest.raises(SchemaError):
            tuple_similarity(empty, DataTuple([]), DataTuple([]))
        assert tuple_similarity(empty, DataTuple([]), DataTuple([]), LukasiewiczLattice()) == 1.0

    def test_duplicate_attribute_in_tuple(self):
        with pytest.raises(SchemaError):
            DataTuple([('A', 'x'), ('A', 'y')])

    def test_enumerate_tuples(self, small_scheme, luk):
        assert len(list(enumerate_tuples(small_scheme))) == 6
        open_scheme = RelationScheme.of({'N': DomainWithSimilarity('N', ValueKind.NUMBER, luk)})
        with pytest.raises(OpError) as excinfo:
            list(enumerate_tuples(open_scheme))
        assert excinfo.value.kind is OpErrorKind.DOMAIN_NOT_ENUMERABLE
