"""Shared pytest fixtures: the example catalog and small hand-built tables."""
from pathlib import Path

import pytest

from catalog_config import open_catalog
from engine.lattice import ChainLattice, LukasiewiczLattice
from engine.rdt import RankedDataTable
from engine.schema import DomainWithSimilarity, RelationScheme, SimilarityKind, ValueKind

FIXTURES = Path(__file__).parent / 'fixtures'
EXAMPLE_CONFIG = FIXTURES / 'example.cfg'


@pytest.fixture(autouse=True)
def _no_log_file(monkeypatch):
    monkeypatch.setenv('RANKDB_LOG_FILE', '')


@pytest.fixture
def example_config() -> Path:
    return EXAMPLE_CONFIG


@pytest.fixture(scope='session')
def example_catalog():
    return open_catalog(EXAMPLE_CONFIG)


@pytest.fixture
def luk():
    return LukasiewiczLattice()


@pytest.fixture
def chain10():
    return ChainLattice(10)


@pytest.fixture
def small_scheme(chain10):
    """{A, B} over finite text domains on chain(10); A has a graded similarity."""
    a = DomainWithSimilarity('DA', ValueKind.TEXT, chain10, SimilarityKind.TABLE,
                             pairs=(('x', 'y', 6), ('y', 'z', 6)), values=('x', 'y', 'z'))
    b = DomainWithSimilarity('DB', ValueKind.TEXT, chain10, values=('p', 'q'))
    return RelationScheme.of({'A': a, 'B': b})


@pytest.fixture
def make_table(small_scheme, chain10):
    def build(*rows):
        return RankedDataTable.from_records(
            small_scheme, chain10, [({'A': a, 'B': b}, rank) for a, b, rank in rows])
    return build
