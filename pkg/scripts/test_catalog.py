"""
Tests for the catalog configuration, ranked CSV ingestion/export and rendering.
"""
import json
import textwrap

import pytest

from catalog import Catalog, export_table, load_table, render
from catalog_config import load_config, open_catalog, parse_config
from engine.errors import ConfigError, CsvFormatError, OpError, OpErrorKind, SchemaError
from engine.lattice import ChainLattice, LukasiewiczLattice
from engine.rdt import RankedDataTable, a_shift
from engine.schema import SimilarityKind, ValueKind

MINIMAL = """\
[lattice]
kind = chain
n = 10

[domain D]
kind = text
similarity = table
values = a b c
pair = a b 0.6
"""


def write(path, text):
    path.write_text(textwrap.dedent(text), encoding='utf-8')
    return path


@pytest.fixture
def chain_catalog(tmp_path):
    return load_config(write(tmp_path / 'catalog.cfg', MINIMAL))


class TestConfig:
    def test_example_config(self, example_config):
        catalog = load_config(example_config)
        assert isinstance(catalog.lattice, LukasiewiczLattice)
        assert set(catalog.domains) == {'AGENT', 'ID', 'SQFT', 'AGE', 'LOCATION', 'PRICE', 'NAME'}
        assert catalog.domain_for('BUDGET') is catalog.domains['PRICE']
        assert catalog.domain_for('LOCATION').similarity_kind is SimilarityKind.TABLE
        price = catalog.domains['PRICE']
        assert price.value_kind is ValueKind.NUMBER and price.k == 500000
        assert set(catalog.table_paths) == {'houses', 'houses_alt', 'customers'}
        assert len(catalog) == 0

    def test_chain_with_declared_values(self, chain_catalog):
        assert chain_catalog.lattice == ChainLattice(10)
        domain = chain_catalog.domains['D']
        assert domain.values == ('a', 'b', 'c')
        assert domain.similarity('a', 'b') == 6

    def test_comments_and_quoting(self):
        config = parse_config(textwrap.dedent("""\
            # catalog
            [lattice]   # header comment
            kind = goedel   # trailing comment
            [domain CITY]
            pair = 'San Jose' 'Santa Clara' 0.7
            similarity = table
        """))
        assert config.domains['CITY'].pairs[0][:3] == ('San Jose', 'Santa Clara', '0.7')

    @pytest.mark.parametrize('text, line, message', [
        ("[lattice]\n[domain A]\n[domain A]\n", 3, "duplicate domain"),
        ("[lattice]\ncolour = red\n", 2, "unknown key"),
        ("[lattice]\n[view v]\n", 2, "unknown section"),
        ("[lattice]\nkind = chain\nkind = goedel\n", 3, "duplicate key"),
        ("kind = chain\n", 1, "outside of any section"),
        ("[lattice]\njust text\n", 2, "key = value"),
        ("[lattice]\nn = ten\n", 2, "integer"),
        ("[lattice]\n[domain D]\nsimilarity = fuzzy\n", 3, "unknown similarity"),
        ("[lattice]\n[domain D]\npair = a b\n", 3, "two values and a degree"),
    ])
    def test_parse_errors_carry_line_numbers(self, text, line, message):
        with pytest.raises(ConfigError, match=message) as excinfo:
            parse_config(text)
        assert excinfo.value.line == line

    def test_missing_lattice(self):
        with pytest.raises(ConfigError, match="missing"):
            parse_config("[domain D]\nkind = text\n")

    @pytest.mark.parametrize('text, message', [
        ("[lattice]\nkind = chain\n", "needs 'n'"),
        ("[lattice]\nn = 4\n", "only applies"),
        ("[lattice]\n[domain D]\npair = a b 0.5\n", "similarity = table"),
        ("[lattice]\nkind = chain\nn = 10\n[domain D]\nsimilarity = table\npair = a b 0.55\n", "multiple"),
        ("[lattice]\n[domain D]\nsimilarity = table\npair = a a 0.5\n", "reflexivity"),
        ("[lattice]\n[domain P]\nkind = number\nsimilarity = ramp\n", "k > 0"),
        ("[lattice]\n[attribute X]\ndomain = NOPE\n", "unknown domain"),
        ("[lattice]\n[attribute X]\n", "no 'domain'"),
    ])
    def test_load_errors(self, tmp_path, text, message):
        with pytest.raises(ConfigError, match=message):
            load_config(write(tmp_path / 'bad.cfg', text))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            load_config(tmp_path / 'absent.cfg')


class TestLoadTable:
    def test_example_tables(self, example_catalog):
        houses = example_catalog['houses']
        assert len(houses) == 8
        assert houses.default_rank == 0.0
        assert max(rank for _, rank in houses.items()) == 0.93
        assert houses.scheme.attributes == ('AGE', 'AGENT', 'ID', 'LOCATION', 'PRICE', 'SQFT')
        assert {rank for _, rank in example_catalog['customers'].items()} == {1.0}

    def test_describe(self, example_catalog):
        entries = {entry['table']: entry for entry in example_catalog.describe()}
        assert entries['houses']['rows'] == 8
        assert entries['houses']['top_rank'] == "0.93"
        assert entries['customers']['scheme'] == "{BUDGET:PRICE, NAME:NAME}"

    def test_chain_ranks_and_fractions(self, chain_catalog, tmp_path):
        path = write(tmp_path / 't.csv', "rank,D\n0.6,a\n3/10,b\n")
        load_table('t', path, chain_catalog)
        assert {t['D']: rank for t, rank in chain_catalog['t'].items()} == {'a': 6, 'b': 3}

    @pytest.mark.parametrize('text, row, message', [
        ("rank,D\n1.2,a\n", 2, "outside"),
        ("rank,D\n0.5,a\n0.4,a\n", 3, "duplicate tuple"),
        ("score,D\n0.5,a\n", 1, "first header"),
        ("rank,D,D\n0.5,a,b\n", 1, "duplicate attribute"),
        ("rank,E\n0.5,a\n", 1, "not bound"),
        ("rank,D\n0.5,x\n", 2, "outside the declared values"),
        ("rank,D\n0.55,a\n", 2, "multiple"),
    ])
    def test_csv_errors(self, chain_catalog, tmp_path, text, row, message):
        path = write(tmp_path / 't.csv', text)
        with pytest.raises(CsvFormatError, match=message) as excinfo:
            load_table('t', path, chain_catalog)
        assert excinfo.value.row == row

    def test_missing_csv(self, chain_catalog, tmp_path):
        with pytest.raises(CsvFormatError, match="not found"):
            load_table('t', tmp_path / 'absent.csv', chain_catalog)

    def test_table_of_another_lattice(self, chain_catalog, example_catalog):
        with pytest.raises(OpError) as excinfo:
            chain_catalog.add_table('customers', example_catalog['customers'])
        assert excinfo.value.kind is OpErrorKind.LATTICE_MISMATCH


class TestExportAndRender:
    def test_csv_round_trip(self, example_config, tmp_path):
        catalog = open_catalog(example_config)
        path = export_table(catalog['houses'], tmp_path / 'houses.csv')
        load_table('houses_copy', path, catalog)
        assert catalog['houses_copy'] == catalog['houses']

    def test_export_refuses_nonzero_default(self, example_catalog, tmp_path):
        with pytest.raises(OpError) as excinfo:
            export_table(a_shift(0.5, example_catalog['customers']), tmp_path / 'x.csv')
        assert excinfo.value.kind is OpErrorKind.NONZERO_DEFAULT_UNSUPPORTED

    def test_render_text_is_rank_sorted(self, example_catalog):
        lines = render(example_catalog['houses']).splitlines()
        assert lines[0].split()[0] == 'rank'
        assert [line.split()[0] for line in lines[1:]] == [
            '0.93', '0.89', '0.86', '0.85', '0.81', '0.81', '0.75', '0.37']
        # Tied ranks fall back to tuple order: AGE 25 of Clark before AGE 25 of Davis.
        assert 'Clark' in lines[5] and 'Davis' in lines[6]

    def test_render_jsonl(self, example_catalog):
        records = [json.loads(line) for line in render(example_catalog['customers'], 'jsonl').splitlines()]
        assert records[0] == {'rank': 1.0, 'BUDGET': 210000, 'NAME': 'Finch'}
        assert len(records) == 3

    def test_render_nonzero_default(self, example_catalog):
        shifted = a_shift(0.5, example_catalog['customers'])
        assert render(shifted).endswith("all other tuples: rank 0.50")
        assert json.loads(render(shifted, 'jsonl').splitlines()[-1]) == {'default_rank': 0.5}

    def test_render_empty(self, chain_catalog):
        table = RankedDataTable(chain_catalog.scheme_for(['D']), chain_catalog.lattice)
        assert render(table) == "(no rows)"

    def test_catalog_rejects_unknown_binding(self, luk):
        with pytest.raises(SchemaError):
            Catalog(luk, {}, {'X': 'NOPE'})
