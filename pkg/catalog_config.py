"""
Catalog configuration: a sectioned key-value text file.

    [lattice]
    kind = lukasiewicz          # goedel, product or chain (with n = ...)

    [domain LOCATION]
    kind = text                 # or number
    similarity = table          # identity, table or ramp (with k = ...)
    pair = Vestal Endicott 0.6
    values = Vestal Endicott    # optional finite universe

    [attribute BUDGET]
    domain = PRICE

    [table houses]
    path = houses.csv           # relative to the configuration file

See docs/CONFIG_FORMAT.md for the grammar.
"""
import logging
import re
import shlex
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from catalog import Catalog
from engine.errors import ConfigError, LatticeError, RankDBError
from engine.lattice import LatticeKind, ResiduatedLattice, make_lattice
from engine.schema import (NAME_PATTERN, DomainWithSimilarity, SimilarityKind, ValueKind,
                           validate_similarity)

logger = logging.getLogger('rankdb')

SECTION_PATTERN = re.compile(r'^\[\s*(\w+)(?:\s+([^\]\s]+))?\s*\]$')


class SectionKind(Enum):
    LATTICE = "lattice"
    DOMAIN = "domain"
    ATTRIBUTE = "attribute"
    TABLE = "table"


@dataclass
class LatticeSettings:
    kind: LatticeKind = LatticeKind.LUKASIEWICZ
    n: Optional[int] = None
    line: Optional[int] = None


@dataclass
class DomainSettings:
    id: str
    line: int
    value_kind: ValueKind = ValueKind.TEXT
    similarity: SimilarityKind = SimilarityKind.IDENTITY
    k: Optional[Decimal] = None
    # (u, v, degree text, line)
    pairs: List[Tuple[str, str, str, int]] = field(default_factory=list)
    values: Optional[List[str]] = None


@dataclass
class TableSettings:
    name: str
    path: Path
    line: int


@dataclass
class CatalogConfig:
    lattice: Optional[LatticeSettings] = None
    domains: Dict[str, DomainSettings] = field(default_factory=dict)
    attributes: Dict[str, str] = field(default_factory=dict)
    tables: Dict[str, TableSettings] = field(default_factory=dict)
    source: Optional[Path] = None


def _tokens(value: str, line: int) -> List[str]:
    try:
        return shlex.split(value, comments=True)
    except ValueError as e:
        raise ConfigError(f"cannot split value: {e}", line)


def _single(key: str, value: str, line: int) -> str:
    tokens = _tokens(value, line)
    if len(tokens) != 1:
        raise ConfigError(f"'{key}' takes exactly one value", line)
    return tokens[0]


def _enum(enum_type, key: str, value: str, line: int):
    text = _single(key, value, line).lower()
    try:
        return enum_type(text)
    except ValueError:
        allowed = ", ".join(member.value for member in enum_type)
        raise ConfigError(f"unknown {key} '{text}' (expected one of: {allowed})", line)


def parse_config(text: str, base_dir: Optional[Path] = None) -> CatalogConfig:
    """Parse configuration text; ConfigError carries the offending line number."""
    config = CatalogConfig()
    base_dir = base_dir or Path('.')
    section: Optional[SectionKind] = None
    current = None
    seen_keys: set = set()

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue

        if line.startswith('['):
            line = line.split('#', 1)[0].strip()
            match = SECTION_PATTERN.match(line)
            if not match:
                raise ConfigError(f"malformed section header {line!r}", number)
            try:
                section = SectionKind(match.group(1).lower())
            except ValueError:
                raise ConfigError(f"unknown section '{match.group(1)}'", number)
            name = match.group(2)
            if section is SectionKind.LATTICE:
                if name is not None:
                    raise ConfigError("[lattice] takes no name", number)
                if config.lattice is not None:
                    raise ConfigError("duplicate [lattice] section", number)
                current = config.lattice = LatticeSettings(line=number)
            else:
                if name is None or not NAME_PATTERN.match(name):
                    raise ConfigError(f"[{section.value}] needs a valid name", number)
                registry = {
                    SectionKind.DOMAIN: config.domains,
                    SectionKind.ATTRIBUTE: config.attributes,
                    SectionKind.TABLE: config.tables,
                }[section]
                if name in registry:
                    raise ConfigError(f"duplicate {section.value} '{name}'", number)
                if section is SectionKind.DOMAIN:
                    current = config.domains[name] = DomainSettings(name, number)
                elif section is SectionKind.TABLE:
                    current = config.tables[name] = TableSettings(name, Path(), number)
                else:
                    config.attributes[name] = ''
                    current = name
            seen_keys = set()
            continue

        if '=' not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", number)
        key, _, value = line.partition('=')
        key = key.strip().lower()
        if section is None:
            raise ConfigError(f"'{key}' outside of any section", number)
        if key != 'pair':
            if key in seen_keys:
                raise ConfigError(f"duplicate key '{key}'", number)
            seen_keys.add(key)
        _apply(config, section, current, key, value, number, base_dir)

    for name, domain_id in config.attributes.items():
        if not domain_id:
            raise ConfigError(f"[attribute {name}] has no 'domain' key")
    if config.lattice is None:
        raise ConfigError("missing [lattice] section")
    return config


def _apply(config: CatalogConfig, section: SectionKind, current, key: str, value: str,
           line: int, base_dir: Path) -> None:
    if section is SectionKind.LATTICE:
        if key == 'kind':
            current.kind = _enum(LatticeKind, key, value, line)
        elif key == 'n':
            try:
                current.n = int(_single(key, value, line))
            except ValueError:
                raise ConfigError("'n' must be an integer", line)
        else:
            raise ConfigError(f"unknown key '{key}' in [lattice]", line)
    elif section is SectionKind.DOMAIN:
        if key == 'kind':
            current.value_kind = _enum(ValueKind, key, value, line)
        elif key == 'similarity':
            current.similarity = _enum(SimilarityKind, key, value, line)
        elif key == 'k':
            try:
                current.k = Decimal(_single(key, value, line))
            except InvalidOperation:
                raise ConfigError("'k' must be a number", line)
        elif key == 'pair':
            tokens = _tokens(value, line)
            if len(tokens) != 3:
                raise ConfigError("'pair' takes two values and a degree", line)
            current.pairs.append((tokens[0], tokens[1], tokens[2], line))
        elif key == 'values':
            current.values = _tokens(value, line)
        else:
            raise ConfigError(f"unknown key '{key}' in [domain {current.id}]", line)
    elif section is SectionKind.ATTRIBUTE:
        if key != 'domain':
            raise ConfigError(f"unknown key '{key}' in [attribute {current}]", line)
        config.attributes[current] = _single(key, value, line)
    else:
        if key != 'path':
            raise ConfigError(f"unknown key '{key}' in [table {current.name}]", line)
        current.path = base_dir / _single(key, value, line)


def build_lattice(settings: LatticeSettings) -> ResiduatedLattice:
    if settings.kind is LatticeKind.CHAIN and settings.n is None:
        raise ConfigError("a chain lattice needs 'n'", settings.line)
    if settings.kind is not LatticeKind.CHAIN and settings.n is not None:
        raise ConfigError("'n' only applies to chain lattices", settings.line)
    try:
        return make_lattice(settings.kind, settings.n)
    except LatticeError as e:
        raise ConfigError(str(e), settings.line)


def build_domain(settings: DomainSettings, lattice: ResiduatedLattice) -> DomainWithSimilarity:
    if settings.pairs and settings.similarity is not SimilarityKind.TABLE:
        raise ConfigError(f"domain {settings.id}: 'pair' needs similarity = table", settings.pairs[0][3])
    if settings.k is not None and settings.similarity is not SimilarityKind.RAMP:
        raise ConfigError(f"domain {settings.id}: 'k' needs similarity = ramp", settings.line)
    pairs = []
    for u, v, degree_text, line in settings.pairs:
        try:
            pairs.append((u, v, lattice.parse_degree(degree_text)))
        except LatticeError as e:
            raise ConfigError(f"domain {settings.id}: {e}", line)
    try:
        domain = DomainWithSimilarity(settings.id, settings.value_kind, lattice, settings.similarity,
                                      tuple(pairs), settings.k,
                                      tuple(settings.values) if settings.values is not None else None)
        report = validate_similarity(domain)
    except RankDBError as e:
        raise ConfigError(str(e), settings.line)
    logger.debug(f"🧩 DOMAIN | Id: {domain.id} | Similarity: {domain.similarity_kind.value} | "
                 f"Transitive: {report.transitive} | Separating: {report.separating}")
    return domain


def load_config(path: Union[str, Path]) -> Catalog:
    """Read a configuration file into a catalog skeleton (no tables loaded yet)."""
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise ConfigError(f"cannot read configuration {path}: {e.strerror or e}")
    config = parse_config(text, path.parent)
    config.source = path

    lattice = build_lattice(config.lattice)
    domains = {domain_id: build_domain(settings, lattice) for domain_id, settings in config.domains.items()}
    for attribute, domain_id in config.attributes.items():
        if domain_id not in domains:
            raise ConfigError(f"attribute {attribute} is bound to unknown domain {domain_id}")
    table_paths = {name: settings.path for name, settings in config.tables.items()}
    logger.info(f"⚙️ CONFIG LOADED | Path: {path} | Lattice: {lattice.name} | "
                f"Domains: {len(domains)} | Tables: {len(table_paths)}")
    return Catalog(lattice, domains, config.attributes, table_paths)


def open_catalog(path: Union[str, Path]) -> Catalog:
    """Load a configuration and every table it declares."""
    return load_config(path).load_tables()
