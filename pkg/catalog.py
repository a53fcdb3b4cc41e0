"""
Catalog of named ranked data tables, ranked-CSV ingestion and export, and
result rendering.

A ranked CSV is comma separated with a header row whose first cell is
literally `rank`; the remaining header cells name bound attributes. Each
data row gives a rank followed by the tuple's values.
"""
import json
import logging
from collections.abc import Mapping
from decimal import Decimal
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Union

import pandas as pd

from engine.errors import CsvFormatError, LatticeError, OpError, OpErrorKind, SchemaError
from engine.lattice import ResiduatedLattice
from engine.rdt import RankedDataTable
from engine.schema import DataTuple, DomainWithSimilarity, RelationScheme, Value, validate_name

logger = logging.getLogger('rankdb')

RANK_COLUMN = 'rank'


class Catalog(Mapping):
    """Lattice, domains, attribute bindings and the named tables built on them.

    Attributes without an explicit binding are bound to the domain of the
    same name.
    """

    def __init__(self, lattice: ResiduatedLattice, domains: Dict[str, DomainWithSimilarity],
                 bindings: Optional[Dict[str, str]] = None,
                 table_paths: Optional[Dict[str, Path]] = None):
        self.lattice = lattice
        self.domains = dict(domains)
        self.bindings = dict(bindings or {})
        self.table_paths = dict(table_paths or {})
        self.tables: Dict[str, RankedDataTable] = {}
        for attribute, domain_id in self.bindings.items():
            if domain_id not in self.domains:
                raise SchemaError(f"attribute {attribute} is bound to unknown domain {domain_id}")

    def __getitem__(self, name: str) -> RankedDataTable:
        return self.tables[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self.tables)

    def __len__(self) -> int:
        return len(self.tables)

    def domain_for(self, attribute: str) -> DomainWithSimilarity:
        domain_id = self.bindings.get(attribute, attribute)
        domain = self.domains.get(domain_id)
        if domain is None:
            raise SchemaError(f"attribute {attribute} is not bound to any domain")
        return domain

    def scheme_for(self, attributes: List[str]) -> RelationScheme:
        return RelationScheme.of({name: self.domain_for(name) for name in attributes})

    def add_table(self, name: str, table: RankedDataTable) -> None:
        validate_name(name, "table")
        if table.lattice != self.lattice:
            raise OpError(OpErrorKind.LATTICE_MISMATCH,
                          f"table {name} is over {table.lattice.name}, catalog over {self.lattice.name}")
        for attribute, domain in table.scheme.bindings:
            if self.domain_for(attribute) != domain:
                raise SchemaError(f"table {name}: attribute {attribute} is not bound to domain {domain.id}")
        self.tables[name] = table

    def copy(self) -> "Catalog":
        other = Catalog(self.lattice, self.domains, self.bindings, self.table_paths)
        other.tables = dict(self.tables)
        return other

    def load_tables(self) -> "Catalog":
        """Load every table declared in the configuration."""
        for name, path in self.table_paths.items():
            load_table(name, path, self)
        return self

    def describe(self) -> List[Dict[str, Any]]:
        return [
            {
                'table': name,
                'scheme': table.scheme.describe(),
                'rows': len(table),
                'top_rank': self.lattice.format_degree(
                    self.lattice.join_all(rank for _, rank in table.items())),
            }
            for name, table in sorted(self.tables.items())
        ]


def load_table(name: str, csv_path: Union[str, Path], catalog: Catalog) -> Catalog:
    """Read a ranked CSV into catalog under name; ranks are validated against the carrier."""
    path = Path(csv_path)
    try:
        # header=None keeps duplicate header cells instead of renaming them
        df = pd.read_csv(path, header=None, dtype=str, keep_default_na=False, encoding='utf-8')
    except FileNotFoundError:
        raise CsvFormatError(f"table file not found: {path}")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise CsvFormatError(f"{path}: unreadable CSV ({e})")

    header = df.iloc[0].tolist()
    if not all(isinstance(cell, str) for cell in header):
        raise CsvFormatError(f"{path}: header has an empty cell", row=1)
    columns = [cell.strip() for cell in header]
    if not columns or columns[0] != RANK_COLUMN:
        raise CsvFormatError(f"{path}: first header cell must be '{RANK_COLUMN}'", row=1)
    attributes = columns[1:]
    if len(set(attributes)) != len(attributes):
        raise CsvFormatError(f"{path}: duplicate attribute in header", row=1)
    try:
        scheme = catalog.scheme_for(attributes)
    except SchemaError as e:
        raise CsvFormatError(f"{path}: {e}", row=1)

    lattice = catalog.lattice
    rows: Dict[DataTuple, Any] = {}
    for index, record in enumerate(df.iloc[1:].itertuples(index=False, name=None)):
        row_number = index + 2
        if not all(isinstance(cell, str) for cell in record):
            raise CsvFormatError(f"{path}: expected {len(columns)} fields", row=row_number)
        cells = [cell.strip() for cell in record]
        try:
            rank = lattice.parse_degree(cells[0])
            t = DataTuple((attribute, scheme.domain(attribute).coerce(cell))
                          for attribute, cell in zip(attributes, cells[1:]))
        except (LatticeError, SchemaError) as e:
            raise CsvFormatError(f"{path}: {e}", row=row_number)
        if t in rows:
            raise CsvFormatError(f"{path}: duplicate tuple {t!r}", row=row_number)
        rows[t] = rank

    table = RankedDataTable(scheme, lattice, rows)
    catalog.add_table(name, table)
    logger.info(f"📥 TABLE LOADED | Name: {name} | Rows: {len(table)} | Path: {path}")
    return catalog


def format_value(value: Value) -> str:
    if isinstance(value, Decimal):
        return str(value)
    return value


def _json_value(value: Value):
    if isinstance(value, Decimal):
        return int(value) if value == value.to_integral_value() else float(value)
    return value


def to_frame(table: RankedDataTable, serialize: bool = False) -> pd.DataFrame:
    """Rank-sorted DataFrame with the rank column first."""
    lattice = table.lattice
    fmt = lattice.serialize_degree if serialize else lattice.format_degree
    records = []
    for t, rank in table.sorted_rows():
        record = {RANK_COLUMN: fmt(rank)}
        record.update((name, format_value(value)) for name, value in t.items)
        records.append(record)
    return pd.DataFrame(records, columns=[RANK_COLUMN, *table.scheme.attributes])


def export_table(table: RankedDataTable, csv_path: Union[str, Path]) -> Path:
    if table.default_rank != table.lattice.bot:
        raise OpError(OpErrorKind.NONZERO_DEFAULT_UNSUPPORTED,
                      "a ranked CSV cannot express a nonzero off-support rank")
    path = Path(csv_path)
    to_frame(table, serialize=True).to_csv(path, index=False, encoding='utf-8')
    logger.info(f"📤 TABLE EXPORTED | Rows: {len(table)} | Path: {path}")
    return path


def render(table: RankedDataTable, output_format: str = 'text') -> str:
    """Deterministic rendering: descending rank, then lexicographic tuple order."""
    lattice = table.lattice
    if output_format == 'jsonl':
        lines = []
        for t, rank in table.sorted_rows():
            record = {RANK_COLUMN: lattice.to_float(rank)}
            record.update((name, _json_value(value)) for name, value in t.items)
            lines.append(json.dumps(record, ensure_ascii=False))
        if table.default_rank != lattice.bot:
            lines.append(json.dumps({'default_rank': lattice.to_float(table.default_rank)}))
        return "\n".join(lines)

    df = to_frame(table)
    text = "(no rows)" if df.empty else df.to_string(index=False)
    if table.default_rank != lattice.bot:
        text += f"\nall other tuples: rank {lattice.format_degree(table.default_rank)}"
    return text
