"""Trace file format: one request per line, ``<id> <size> <cost>``.

Fields are whitespace-separated; ``#`` starts a full-line comment and blank
lines are skipped.  Costs accept integer, decimal, or ``p/q`` literals and
are parsed exactly.  Serialization normalizes costs to their canonical
Fraction form, so serialize(parse(text)) is idempotent after the first pass.
"""

from fractions import Fraction

from .core import FileSpec, validate_sequence
from .errors import InvalidParams, ParseError

__all__ = ["parse_trace", "serialize_trace", "load_trace", "save_trace", "paging_sequence"]


def parse_trace(text):
    """Parse trace text into a request sequence (list of FileSpec)."""
    seq = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ParseError(line_no, f"expected '<id> <size> <cost>', got {raw!r}")
        file_id, size_text, cost_text = fields
        try:
            size = int(size_text)
        except ValueError:
            raise ParseError(line_no, f"size {size_text!r} is not an integer") from None
        try:
            cost = Fraction(cost_text)
        except (ValueError, ZeroDivisionError):
            raise ParseError(line_no, f"cost {cost_text!r} is not a rational literal") from None
        try:
            seq.append(FileSpec(file_id, size, cost))
        except InvalidParams as exc:
            raise ParseError(line_no, str(exc)) from None
    validate_sequence(seq)  # raises ConsistencyError with the offending id
    return seq


def serialize_trace(seq):
    lines = [f"{g.id} {g.size} {g.cost}" for g in seq]
    return "\n".join(lines) + ("\n" if lines else "")


def load_trace(path):
    with open(path, "r", encoding="utf-8") as handle:
        return parse_trace(handle.read())


def save_trace(seq, path):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize_trace(seq))


def paging_sequence(items):
    """Wrap a paging trace (ids only) as a unit-size, unit-cost sequence."""
    one = Fraction(1)
    return [FileSpec(str(x), 1, one) for x in items]
