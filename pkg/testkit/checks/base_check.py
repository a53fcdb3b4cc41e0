from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from engine.rdt import RankedDataTable
from testkit.generators import spawn_seeds


class BaseCheck(ABC):
    """Base class for all property checks.

    A check runs a number of independent instances, each drawn from its own
    child of the run seed, and reports every instance that violates the
    property together with the seed needed to replay it.
    """

    @abstractmethod
    def get_name(self) -> str:
        """Return the name of the check."""
        pass

    @abstractmethod
    def get_description(self) -> str:
        """Return a description of the property being checked."""
        pass

    @abstractmethod
    def check_instance(self, seed: np.random.SeedSequence) -> Optional[str]:
        """Run one instance; return a violation report or None."""
        pass

    def instance_count(self, iterations: int) -> int:
        """Number of instances for a requested iteration count. Override to cap."""
        return iterations

    def execute(self, iterations: int = 1000, seed: int = 0,
                progress_callback: Optional[Callable[[int], None]] = None) -> Dict[str, Any]:
        count = self.instance_count(iterations)
        violations: List[Dict[str, Any]] = []
        for index, child in enumerate(spawn_seeds(seed, count)):
            detail = self.check_instance(child)
            if detail is not None:
                violations.append({'instance': index, 'seed': seed, 'detail': detail})
            if progress_callback:
                progress_callback(1)
        return {
            'check': self.get_name(),
            'instances': count,
            'violations': violations,
            'passed': not violations,
        }

    def replay(self, seed: int, instance: int, iterations: int) -> Optional[str]:
        """Rerun a single instance of an earlier run."""
        return self.check_instance(spawn_seeds(seed, self.instance_count(iterations))[instance])


def dump_table(name: str, table: RankedDataTable) -> str:
    fmt = table.lattice.format_degree
    lines = [f"{name} {table.scheme.describe()} default={fmt(table.default_rank)}"]
    for t, rank in table.sorted_rows():
        lines.append(f"  {fmt(rank)} {t!r}")
    return "\n".join(lines)


def dump_catalog(catalog: Dict[str, RankedDataTable]) -> str:
    return "\n".join(dump_table(name, table) for name, table in sorted(catalog.items()))
