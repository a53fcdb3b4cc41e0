import argparse
import json
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from catalog import Catalog
from catalog_config import open_catalog
from engine.errors import ConfigError, LatticeError, RankDBError
from engine.lattice import Degree, ResiduatedLattice

EXIT_OK = 0
EXIT_USER_ERROR = 1
EXIT_VIOLATION = 2


class OutputFormat(Enum):
    TEXT = "text"
    JSONL = "jsonl"


@dataclass
class CommandContext:
    """State shared by the commands of one process (or one REPL session)."""
    config_path: Optional[Path] = None
    output_format: OutputFormat = OutputFormat.TEXT
    manager: Any = None
    _catalog: Optional[Catalog] = field(default=None, repr=False)

    @property
    def catalog(self) -> Catalog:
        if self._catalog is None:
            if self.config_path is None:
                raise ConfigError("no catalog configuration given (use -c or set RANKDB_CONFIG)")
            self._catalog = open_catalog(self.config_path)
        return self._catalog

    def reload(self) -> Catalog:
        self._catalog = None
        return self.catalog

    @property
    def jsonl(self) -> bool:
        return self.output_format is OutputFormat.JSONL


class BaseCommand(ABC):
    """Base class for all command-line verbs."""

    @abstractmethod
    def get_name(self) -> str:
        """Return the verb that selects the command."""
        pass

    @abstractmethod
    def get_description(self) -> str:
        """Return a one-line description used in help output."""
        pass

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Declare the command's arguments. Override when the command takes any."""
        pass

    @abstractmethod
    def execute(self, args: argparse.Namespace, context: CommandContext) -> Dict[str, Any]:
        """Run the command and return a result dict.

        The dict carries `output` (text for stdout) and `exit_code`; errors
        are raised as RankDBError and turned into results by the manager.
        """
        pass


def result(output: str, exit_code: int = EXIT_OK, **extra) -> Dict[str, Any]:
    return {"output": output, "exit_code": exit_code, **extra}


def json_line(record: Mapping[str, Any]) -> str:
    return json.dumps(record, ensure_ascii=False)


def parse_assignments(items: Optional[List[str]], flag: str) -> Dict[str, str]:
    """Split repeated `name=value` flag values, rejecting duplicates."""
    assignments: Dict[str, str] = {}
    for item in items or []:
        name, sep, value = item.partition('=')
        name, value = name.strip(), value.strip()
        if not sep or not name or not value:
            raise RankDBError(f"{flag} expects name=value, got {item!r}")
        if name in assignments:
            raise RankDBError(f"{flag} given twice for {name}")
        assignments[name] = value
    return assignments


def parse_assumptions(items: Optional[List[str]], lattice: ResiduatedLattice) -> Dict[str, Degree]:
    assumptions = {}
    for name, text in parse_assignments(items, '--assume').items():
        try:
            assumptions[name] = lattice.parse_degree(text)
        except LatticeError as e:
            raise LatticeError(f"--assume {name}: {e}")
    return assumptions
