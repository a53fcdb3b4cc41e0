import argparse
import os
from typing import Any, Dict, List

from engine.errors import RankDBError
from testkit.checks import CheckManager

from .base_command import EXIT_OK, EXIT_VIOLATION, BaseCommand, CommandContext, json_line, result

DEFAULT_ITERATIONS = 1000


class CheckCommand(BaseCommand):
    """Runs the property suite; needs no catalog."""

    def __init__(self):
        self.check_manager = CheckManager()

    def get_name(self) -> str:
        return "check"

    def get_description(self) -> str:
        return "Run the seeded property suite; exits with 2 on any violation"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--seed', type=int, default=int(os.environ.get('RANKDB_SEED', 0)),
                            help='Root seed (default: RANKDB_SEED or 0)')
        parser.add_argument('--iterations', type=int, default=DEFAULT_ITERATIONS,
                            help=f'Instances per check (default: {DEFAULT_ITERATIONS})')
        parser.add_argument('--workers', type=int, default=int(os.environ.get('RANKDB_WORKERS', 1)),
                            help='Worker processes (default: RANKDB_WORKERS or 1)')
        parser.add_argument('--only', action='append', metavar='CHECK',
                            help='Run only the named check (repeatable)')
        parser.add_argument('--list', action='store_true', help='List the checks and exit')
        parser.add_argument('--progress', action='store_true', help='Show progress bars')

    def execute(self, args: argparse.Namespace, context: CommandContext) -> Dict[str, Any]:
        if args.list:
            return result(self.check_manager.get_checks_description())
        if args.iterations < 1:
            raise RankDBError("--iterations must be positive")
        for name in args.only or []:
            if self.check_manager.get_check(name) is None:
                raise RankDBError(f"unknown check '{name}'")

        results = self.check_manager.run_all(args.iterations, args.seed, max(1, args.workers),
                                             args.only, show_progress=args.progress)
        failed = [entry for entry in results if not entry.get('passed')]
        output = (self._format_jsonl(results) if context.jsonl
                  else self._format_text(results, args.seed, len(failed)))
        return result(output, EXIT_VIOLATION if failed else EXIT_OK, failed=len(failed))

    def _format_jsonl(self, results: List[Dict[str, Any]]) -> str:
        return "\n".join(json_line(entry) for entry in results)

    def _format_text(self, results: List[Dict[str, Any]], seed: int, failures: int) -> str:
        lines = []
        for entry in results:
            if 'error' in entry:
                lines.append(f"ERROR {entry['check']}: {entry['error']}")
                continue
            status = "ok  " if entry['passed'] else "FAIL"
            lines.append(f"{status} {entry['check']} ({entry['instances']} instances)")
            for violation in entry['violations']:
                lines.append(f"  violation at instance {violation['instance']} (seed {violation['seed']}):")
                lines.extend(f"    {line}" for line in violation['detail'].splitlines())
        lines.append(f"{len(results) - failures}/{len(results)} checks passed (seed {seed})")
        return "\n".join(lines)
