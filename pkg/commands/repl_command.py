import argparse
import shlex
import sys
from typing import Any, Callable, Dict, Iterable, Iterator

from .base_command import BaseCommand, CommandContext, OutputFormat, result

try:
    import readline  # noqa: F401  (line editing and history for input())
except ImportError:
    pass

PROMPT = 'rankdb> '

REPL_HELP = """\
Type a command line without the program name, for example:
  query "project [LOCATION] houses"
  sim houses houses_alt --mode tuple
  bound "shift 0.8 houses" --assume houses=0.9
Session commands: help, format text|jsonl, reload, quit"""


def _prompt_lines() -> Iterator[str]:
    while True:
        try:
            yield input(PROMPT)
        except (EOFError, KeyboardInterrupt):
            print()
            return


class ReplCommand(BaseCommand):
    def get_name(self) -> str:
        return "repl"

    def get_description(self) -> str:
        return "Start an interactive session offering the other commands"

    def execute(self, args: argparse.Namespace, context: CommandContext) -> Dict[str, Any]:
        self.run(context, _prompt_lines())
        return result("")

    def run(self, context: CommandContext, lines: Iterable[str],
            write: Callable[[str], None] = print, write_error: Callable[[str], None] = None) -> int:
        """Execute command lines until exhausted or `quit`; return the number of failed lines."""
        write_error = write_error or (lambda text: print(text, file=sys.stderr))
        manager = context.manager
        parser = manager.build_parser(prog='', include_repl=False)
        failures = 0

        for line in lines:
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            try:
                words = shlex.split(line)
            except ValueError as e:
                write_error(f"error: {e}")
                failures += 1
                continue

            verb = words[0].lower()
            if verb in ('quit', 'exit'):
                break
            if verb == 'help':
                write(REPL_HELP + "\n\n" + manager.get_commands_description())
                continue
            if verb == 'format':
                if len(words) != 2 or words[1] not in [fmt.value for fmt in OutputFormat]:
                    write_error("error: usage: format text|jsonl")
                    failures += 1
                else:
                    context.output_format = OutputFormat(words[1])
                continue
            if verb == 'reload':
                words = ['tables']
                context.reload()

            try:
                args = parser.parse_args(words)
            except SystemExit:
                # argparse has already printed its usage message.
                failures += 1
                continue

            outcome = manager.execute_command(args.command, args, context)
            if outcome.get('error'):
                write_error(f"error: {outcome['error']}")
            elif outcome.get('output'):
                write(outcome['output'])
            if outcome.get('exit_code', 0) != 0:
                failures += 1
        return failures
