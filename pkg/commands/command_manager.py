import argparse
import logging
from typing import Any, Dict, Optional

from engine.errors import RankDBError

from .base_command import EXIT_USER_ERROR, BaseCommand, CommandContext
from .catalog_commands import ExportCommand, TablesCommand
from .check_command import CheckCommand
from .query_commands import BoundCommand, QueryCommand, SimCommand, VerifyCommand
from .repl_command import ReplCommand

logger = logging.getLogger('rankdb')


class CommandManager:
    """Manages the command-line verbs shared by argument dispatch and the REPL."""

    def __init__(self):
        self.commands: Dict[str, BaseCommand] = {}
        self._register_default_commands()

    def _register_default_commands(self):
        """Register the default commands."""
        self.register_command(QueryCommand())
        self.register_command(SimCommand())
        self.register_command(BoundCommand())
        self.register_command(VerifyCommand())
        self.register_command(CheckCommand())
        self.register_command(TablesCommand())
        self.register_command(ExportCommand())
        self.register_command(ReplCommand())

    def register_command(self, command: BaseCommand):
        """Register a command."""
        self.commands[command.get_name()] = command

    def get_command(self, name: str) -> Optional[BaseCommand]:
        """Get a command by name."""
        return self.commands.get(name)

    def get_all_commands(self) -> Dict[str, BaseCommand]:
        """Get all registered commands."""
        return self.commands.copy()

    def add_subparsers(self, parser: argparse.ArgumentParser, include_repl: bool = True) -> None:
        subparsers = parser.add_subparsers(dest='command', metavar='COMMAND', required=True)
        for name, command in self.commands.items():
            if name == 'repl' and not include_repl:
                continue
            sub = subparsers.add_parser(name, help=command.get_description(),
                                        description=command.get_description())
            command.add_arguments(sub)

    def build_parser(self, prog: Optional[str] = None, include_repl: bool = True) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog=prog, add_help=True)
        self.add_subparsers(parser, include_repl)
        return parser

    def execute_command(self, name: str, args: argparse.Namespace, context: CommandContext) -> Dict[str, Any]:
        """Execute a command; errors become a result with exit code 1 instead of a traceback."""
        command = self.get_command(name)
        if not command:
            return {"error": f"Command '{name}' not found", "exit_code": EXIT_USER_ERROR}

        context.manager = context.manager or self
        try:
            outcome = command.execute(args, context)
        except RankDBError as e:
            logger.warning(f"⚠️ COMMAND FAILED | Command: {name} | Error: {e}")
            return {"error": str(e), "exit_code": EXIT_USER_ERROR}
        except OSError as e:
            logger.warning(f"⚠️ COMMAND FAILED | Command: {name} | Error: {e}")
            return {"error": f"{e.strerror or e}: {e.filename}" if e.filename else str(e),
                    "exit_code": EXIT_USER_ERROR}
        except Exception as e:
            logger.exception(f"💥 COMMAND CRASHED | Command: {name}")
            return {"error": f"Command execution failed: {str(e)}", "exit_code": EXIT_USER_ERROR}

        logger.debug(f"✅ COMMAND DONE | Command: {name} | Exit: {outcome.get('exit_code', 0)}")
        return outcome

    def get_commands_description(self) -> str:
        """Get a human-readable description of all commands."""
        descriptions = []
        for command in self.commands.values():
            descriptions.append(f"- {command.get_name()}: {command.get_description()}")
        return "\n".join(descriptions)
