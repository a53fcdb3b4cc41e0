import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional

from tqdm import tqdm

from .base_check import BaseCheck
from .boolean_checks import BooleanDegenerationCheck
from .lattice_checks import LatticeLawsCheck
from .oracle_checks import MeasureOracleCheck, OperationOracleCheck, TransitivizeCheck
from .preservation_checks import RankPreservationCheck, TuplePreservationCheck
from .query_checks import (BoundMonotonicityCheck, BoundSoundnessCheck, ParserRoundTripCheck,
                           SchemeDerivationCheck)
from .specialization_checks import HedgeSpecializationCheck, QuasiorderCheck

logger = logging.getLogger('rankdb')


class CheckManager:
    """Manages the property checks run by the `check` command."""

    def __init__(self):
        self.checks: Dict[str, BaseCheck] = {}
        self._register_default_checks()

    def _register_default_checks(self):
        """Register the default checks."""
        self.register_check(LatticeLawsCheck())
        self.register_check(OperationOracleCheck())
        self.register_check(MeasureOracleCheck())
        self.register_check(TransitivizeCheck())
        self.register_check(BooleanDegenerationCheck())
        self.register_check(RankPreservationCheck())
        self.register_check(TuplePreservationCheck())
        self.register_check(HedgeSpecializationCheck())
        self.register_check(QuasiorderCheck())
        self.register_check(ParserRoundTripCheck())
        self.register_check(SchemeDerivationCheck())
        self.register_check(BoundSoundnessCheck())
        self.register_check(BoundMonotonicityCheck())

    def register_check(self, check: BaseCheck):
        """Register a check."""
        self.checks[check.get_name()] = check

    def get_check(self, name: str) -> Optional[BaseCheck]:
        """Get a check by name."""
        return self.checks.get(name)

    def get_all_checks(self) -> Dict[str, BaseCheck]:
        """Get all registered checks."""
        return self.checks.copy()

    def execute_check(self, name: str, iterations: int, seed: int, show_progress: bool = False) -> Dict[str, Any]:
        check = self.get_check(name)
        if not check:
            return {"error": f"Check '{name}' not found"}

        try:
            total = check.instance_count(iterations)
            with tqdm(total=total, desc=name, disable=not show_progress, leave=False) as bar:
                result = check.execute(iterations, seed, progress_callback=bar.update)
        except Exception as e:
            logger.exception(f"❌ CHECK CRASHED | Check: {name} | Seed: {seed}")
            return {"check": name, "error": f"Check execution failed: {str(e)}", "passed": False,
                    "instances": 0, "violations": []}

        status = "✅ CHECK PASSED" if result['passed'] else "❌ CHECK FAILED"
        logger.info(f"{status} | Check: {name} | Instances: {result['instances']} | "
                    f"Violations: {len(result['violations'])} | Seed: {seed}")
        return result

    def run_all(self, iterations: int, seed: int, workers: int = 1,
                names: Optional[List[str]] = None, show_progress: bool = False) -> List[Dict[str, Any]]:
        """Run checks, optionally in worker processes; results keep registration order."""
        selected = names or list(self.checks)
        if workers <= 1:
            return [self.execute_check(name, iterations, seed, show_progress) for name in selected]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_check, name, iterations, seed) for name in selected]
            return [future.result() for future in tqdm(futures, desc="checks", disable=not show_progress)]

    def get_checks_description(self) -> str:
        """Get a human-readable description of all checks."""
        descriptions = []
        for check in self.checks.values():
            descriptions.append(f"- {check.get_name()}: {check.get_description()}")
        return "\n".join(descriptions)


def _run_check(name: str, iterations: int, seed: int) -> Dict[str, Any]:
    return CheckManager().execute_check(name, iterations, seed)
