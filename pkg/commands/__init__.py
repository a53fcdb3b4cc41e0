# Command-line verbs
from .base_command import (BaseCommand, CommandContext, OutputFormat, EXIT_OK, EXIT_USER_ERROR,
                           EXIT_VIOLATION)
from .command_manager import CommandManager

__all__ = ['BaseCommand', 'CommandContext', 'OutputFormat', 'CommandManager', 'EXIT_OK',
           'EXIT_USER_ERROR', 'EXIT_VIOLATION']
