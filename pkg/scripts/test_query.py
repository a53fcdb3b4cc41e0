"""
Tests for the query language: parsing, evaluation, scheme derivation and bounds.
"""
from decimal import Decimal

import pytest

from engine.errors import (OpError, OpErrorKind, QueryEvaluationError, QuerySyntaxError,
                           SchemaError, UnboundTableError)
from engine.lattice import ChainLattice
from engine.rdt import ClosureMode
from query.bounds import (RULE_ASSUMPTION, RULE_MEET, RULE_NO_TUPLE_GUARANTEE, RULE_OTIMES,
                          RULE_PASS, RULE_SUPPORT_CLOSURE, RULE_TUPLE_PASS, is_tuple_based,
                          propagate_bound, verify_bound)
from query.evaluator import derive_scheme, evaluate, resolve_closure_mode
from query.nodes import (Join, Project, SelectAttr, SelectClosure, SelectVal, Shift, TableRef,
                         Union)
from query.parser import parse
from testkit.checks.query_checks import FIXED_CORPUS

MATCHING_QUERY = "project [AGENT,NAME] (join (houses, customers) on PRICE ~ BUDGET)"


def values(table, attribute):
    return {t[attribute]: rank for t, rank in table.items()}


@pytest.fixture
def alternative_catalog(example_catalog):
    alternative = example_catalog.copy()
    alternative.add_table('houses', example_catalog['houses_alt'])
    return alternative


class TestParser:
    def test_project(self):
        assert parse("project [LOCATION] houses") == Project(('LOCATION',), TableRef('houses'))

    def test_join(self):
        assert (parse("join (houses, customers) on PRICE ~ BUDGET")
                == Join(TableRef('houses'), TableRef('customers'), 'PRICE', 'BUDGET'))

    def test_selections(self):
        assert parse("select houses where LOCATION ~ 'Vestal'") == SelectVal(TableRef('houses'), 'LOCATION', 'Vestal')
        assert parse("select r where A ~ B") == SelectAttr(TableRef('r'), 'A', 'B')
        assert (parse("selectc houses where PRICE ~ 200000")
                == SelectClosure(TableRef('houses'), 'PRICE', Decimal('200000')))

    def test_escaped_string(self):
        assert parse(r"select houses where AGENT ~ 'O\'Brien'").literal == "O'Brien"

    def test_shift_and_parentheses(self):
        expr = parse("union ((shift 0.7 houses), houses)")
        assert expr == Union(Shift(Decimal('0.7'), TableRef('houses')), TableRef('houses'))

    @pytest.mark.parametrize('text', FIXED_CORPUS)
    def test_round_trip(self, text):
        expr = parse(text)
        assert parse(expr.to_text()) == expr
        assert parse(text.replace(" ", "\n  ")) == expr

    def test_nested_prefix_operators_print_parenthesized(self):
        expr = parse("select shift 0.5 r where A ~ 'x'")
        assert expr.to_text() == "select (shift 0.5 r) where A ~ 'x'"

    @pytest.mark.parametrize('text, line, column', [
        ("shift 1.5 houses", 1, 7),
        ("union (r s)", 1, 10),
        ("union (r,\n  @)", 2, 3),
        ("r s", 1, 3),
        ("", 1, 1),
    ])
    def test_error_positions(self, text, line, column):
        with pytest.raises(QuerySyntaxError) as excinfo:
            parse(text)
        assert (excinfo.value.line, excinfo.value.column) == (line, column)

    @pytest.mark.parametrize('text, message', [
        ("foo (r, s)", "unknown operator"),
        ("selectc r where A ~ B", "literal"),
        ("project [A, A] r", "twice"),
        ("select r where A ~ 'abc", "unterminated"),
        ("where", "cannot start"),
    ])
    def test_error_messages(self, text, message):
        with pytest.raises(QuerySyntaxError, match=message):
            parse(text)

    def test_shift_degree_checked_against_lattice(self):
        assert parse("shift 0.3 r", ChainLattice(10)).degree == Decimal('0.3')
        with pytest.raises(QuerySyntaxError):
            parse("shift 0.35 r", ChainLattice(10))


class TestEvaluation:
    def test_projection_example(self, example_catalog):
        result = evaluate(parse("project [LOCATION] houses"), example_catalog)
        assert values(result, 'LOCATION') == {'Vestal': 0.93, 'Endicott': 0.89, 'Binghamton': 0.86}

    def test_similarity_selection(self, example_catalog):
        result = evaluate(parse("select houses where LOCATION ~ 'Vestal'"), example_catalog)
        assert len(result) == 7
        assert max(rank for _, rank in result.items()) == 0.93

    def test_matching_query(self, example_catalog):
        result = evaluate(parse(MATCHING_QUERY), example_catalog)
        assert result.scheme.attributes == ('AGENT', 'NAME')
        assert len(result) == 9
        assert result.default_rank == 0.0

    def test_shift_makes_a_nonzero_default(self, example_catalog):
        result = evaluate(parse("shift 0.8 houses"), example_catalog)
        assert result.default_rank == pytest.approx(0.2)
        assert derive_scheme(parse("shift 0.8 houses"), example_catalog).default_rank == result.default_rank

    def test_unbound_table(self, example_catalog):
        with pytest.raises(QueryEvaluationError) as excinfo:
            evaluate(parse("union (houses, nowhere)"), example_catalog)
        assert isinstance(excinfo.value.cause, UnboundTableError)
        assert excinfo.value.node_text == "nowhere"

    def test_derived_scheme_matches_evaluation(self, example_catalog):
        expr = parse(MATCHING_QUERY)
        derived = derive_scheme(expr, example_catalog)
        assert derived.scheme == evaluate(expr, example_catalog).scheme
        assert derived.zero_default

    @pytest.mark.parametrize('text, kind', [
        ("union (houses, customers)", OpErrorKind.SCHEME_MISMATCH),
        ("select (shift 0.5 houses) where AGENT ~ 'Brown'", OpErrorKind.NONZERO_DEFAULT_UNSUPPORTED),
        ("join (houses, customers) on AGENT ~ NAME", OpErrorKind.MISSING_SIMILARITY),
        ("project [ZIP] houses", OpErrorKind.ATTRIBUTE_NOT_IN_SCHEME),
        ("cross (houses, houses_alt)", OpErrorKind.SCHEMES_NOT_DISJOINT),
    ])
    def test_derivation_errors(self, example_catalog, text, kind):
        with pytest.raises(QueryEvaluationError) as excinfo:
            derive_scheme(parse(text), example_catalog)
        assert isinstance(excinfo.value.cause, OpError)
        assert excinfo.value.cause.kind is kind

    def test_literal_of_the_wrong_kind(self, example_catalog):
        with pytest.raises(QueryEvaluationError) as excinfo:
            evaluate(parse("select houses where PRICE ~ 'cheap'"), example_catalog)
        assert isinstance(excinfo.value.cause, SchemaError)

    def test_resolve_closure_mode(self, example_catalog):
        assert resolve_closure_mode(parse("houses"), example_catalog) is None
        closure = parse("selectc houses where PRICE ~ 200000")
        assert resolve_closure_mode(closure, example_catalog) is ClosureMode.SUPPORT
        assert resolve_closure_mode(closure, example_catalog, ClosureMode.FULL) is ClosureMode.FULL


class TestBounds:
    def test_matching_query_bound(self, example_catalog):
        bound = propagate_bound(parse(MATCHING_QUERY), {'houses': 0.98}, example_catalog.lattice)
        assert bound.value == pytest.approx(0.98, abs=1e-12)
        assert not bound.tuple_based
        assert [step.rule for step in bound.trace] == [RULE_ASSUMPTION, RULE_ASSUMPTION, RULE_OTIMES, RULE_PASS]
        assert bound.trace[-1].output == bound.value
        assert bound.to_dict()['bound'] == "0.98"

    def test_union_and_meet(self, luk):
        expr = parse("union (meet (r, s), r)")
        bound = propagate_bound(expr, {'r': 0.9, 's': 0.7}, luk)
        assert bound.value == 0.7
        assert [step.rule for step in bound.trace] == [RULE_ASSUMPTION, RULE_ASSUMPTION, RULE_MEET,
                                                       RULE_ASSUMPTION, RULE_MEET]

    def test_unlisted_tables_default_to_top(self, luk):
        assert propagate_bound(parse("otimes (r, s)"), {}, luk).value == 1.0

    def test_tuple_based_plans(self, chain10):
        closure = parse("selectc r where A ~ 'x'")
        assert is_tuple_based(closure)
        full = propagate_bound(closure, {'r': 8}, chain10, ClosureMode.FULL)
        assert full.value == 8 and full.trace[-1].rule == RULE_TUPLE_PASS
        support = propagate_bound(closure, {'r': 8}, chain10, ClosureMode.SUPPORT)
        assert support.value == 0 and support.trace[-1].rule == RULE_SUPPORT_CLOSURE
        shifted = propagate_bound(parse("shift 0.5 (selectc r where A ~ 'x')"), {'r': 8}, chain10)
        assert shifted.value == 0 and shifted.trace[-1].rule == RULE_NO_TUPLE_GUARANTEE

    def test_verify_matching_query(self, example_catalog, alternative_catalog):
        report = verify_bound(parse(MATCHING_QUERY), example_catalog, alternative_catalog)
        assert report.assumptions['houses'] == pytest.approx(0.98, abs=1e-12)
        assert report.assumptions['customers'] == 1.0
        assert report.bound.value == pytest.approx(0.98, abs=1e-12)
        assert report.actual >= 0.98 - 1e-12
        assert report.holds
        assert report.measure == 'rank'
        assert report.to_dict()['holds'] is True

    def test_verify_with_given_assumption(self, example_catalog, alternative_catalog):
        report = verify_bound(parse("project [LOCATION] houses"), example_catalog, alternative_catalog,
                              {'houses': 0.5})
        assert report.bound.value == 0.5
        assert report.holds
        assert report.slack > 0.4
