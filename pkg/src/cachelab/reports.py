"""Machine-readable experiment reports with byte-deterministic output.

A report is metadata (command, parameters, seed, tool version) plus ordered
rows.  CSV and JSON renderings of the same report carry the same content;
rendering the same report twice yields identical bytes (no timestamps, keys
sorted, fixed format version).
"""

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

from . import __version__

FORMAT_VERSION = 1

__all__ = ["FORMAT_VERSION", "ExperimentReport"]


def _plain(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


@dataclass(frozen=True)
class ExperimentReport:
    command: str
    parameters: dict
    columns: tuple
    rows: tuple
    seed: int = None

    def metadata(self):
        return {
            "command": self.command,
            "format_version": FORMAT_VERSION,
            "parameters": _plain(self.parameters),
            "seed": self.seed,
            "version": __version__,
        }

    def to_csv(self):
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["# " + json.dumps(self.metadata(), sort_keys=True)])
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_plain(row[col]) for col in self.columns])
        return out.getvalue()

    def to_json(self):
        body = {
            "metadata": self.metadata(),
            "columns": list(self.columns),
            "rows": [{col: _plain(row[col]) for col in self.columns} for row in self.rows],
        }
        return json.dumps(body, sort_keys=True, indent=2) + "\n"

    def render(self, fmt):
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")
