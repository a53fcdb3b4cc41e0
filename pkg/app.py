from dotenv import load_dotenv
import os
import sys
import argparse
import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import List, Optional

from commands import CommandContext, CommandManager, OutputFormat

DEFAULT_LOG_FILE = 'logs/rankdb.log'


# Configure logging
def setup_logging(level: str = 'WARNING', log_file: Optional[str] = DEFAULT_LOG_FILE):
    """Set up application logging to file and stderr."""
    formatter = logging.Formatter(
        '%(asctime)s | %(levelname)s | %(name)s | %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    app_logger = logging.getLogger('rankdb')
    app_logger.setLevel(logging.DEBUG)
    for handler in list(app_logger.handlers):
        app_logger.removeHandler(handler)
        handler.close()
    app_logger.propagate = False

    # File handler with rotation
    if log_file:
        os.makedirs(os.path.dirname(log_file) or '.', exist_ok=True)
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=10485760,  # 10MB
            backupCount=10,
            encoding='utf-8'
        )
        file_handler.setLevel(logging.INFO)
        file_handler.setFormatter(formatter)
        app_logger.addHandler(file_handler)

    # Console handler; stdout is reserved for command output
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(getattr(logging, level.upper(), logging.WARNING))
    console_handler.setFormatter(formatter)
    app_logger.addHandler(console_handler)

    return app_logger


def parse_args(manager: CommandManager, argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog='rankdb',
        description='Similarity-based queries over ranked data tables, with sensitivity bounds')
    parser.add_argument('-c', '--config', type=str, default=os.environ.get('RANKDB_CONFIG'),
                        help='Catalog configuration file (default: RANKDB_CONFIG)')
    parser.add_argument('--format', choices=[fmt.value for fmt in OutputFormat], default='text',
                        help='Output format (default: text)')
    parser.add_argument('--log-level', type=str.upper,
                        default=os.environ.get('RANKDB_LOG_LEVEL', 'WARNING').upper(),
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='Console log level (default: RANKDB_LOG_LEVEL or WARNING)')
    manager.add_subparsers(parser)
    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    manager = CommandManager()
    args = parse_args(manager, argv)
    logger = setup_logging(args.log_level, os.environ.get('RANKDB_LOG_FILE', DEFAULT_LOG_FILE))
    logger.info(f"🚀 RANKDB START | Command: {args.command} | Config: {args.config}")

    context = CommandContext(
        config_path=Path(args.config) if args.config else None,
        output_format=OutputFormat(args.format),
        manager=manager,
    )
    outcome = manager.execute_command(args.command, args, context)
    if outcome.get('error'):
        print(f"error: {outcome['error']}", file=sys.stderr)
    elif outcome.get('output'):
        print(outcome['output'])
    return outcome.get('exit_code', 0)


if __name__ == '__main__':
    sys.exit(main())
