# Property checks run by pytest and the `check` command
from .base_check import BaseCheck
from .check_manager import CheckManager

__all__ = ['BaseCheck', 'CheckManager']
