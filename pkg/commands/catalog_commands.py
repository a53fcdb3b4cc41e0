import argparse
from typing import Any, Dict

from catalog import export_table
from engine.errors import UnboundTableError

from .base_command import BaseCommand, CommandContext, json_line, result


class TablesCommand(BaseCommand):
    def get_name(self) -> str:
        return "tables"

    def get_description(self) -> str:
        return "List the catalog's tables with their schemes and row counts"

    def execute(self, args: argparse.Namespace, context: CommandContext) -> Dict[str, Any]:
        catalog = context.catalog
        entries = catalog.describe()
        if context.jsonl:
            return result("\n".join(json_line(entry) for entry in entries))
        lines = [f"lattice: {catalog.lattice.name}"]
        for entry in entries:
            lines.append(f"{entry['table']}: {entry['scheme']} | rows: {entry['rows']} | "
                         f"top rank: {entry['top_rank']}")
        return result("\n".join(lines))


class ExportCommand(BaseCommand):
    def get_name(self) -> str:
        return "export"

    def get_description(self) -> str:
        return "Write a catalog table to a ranked CSV file"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('table', help='Table to export')
        parser.add_argument('path', help='Destination CSV file')

    def execute(self, args: argparse.Namespace, context: CommandContext) -> Dict[str, Any]:
        catalog = context.catalog
        if args.table not in catalog:
            raise UnboundTableError(args.table)
        path = export_table(catalog[args.table], args.path)
        return result(f"wrote {len(catalog[args.table])} rows to {path}")
