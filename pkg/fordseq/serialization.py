"""Text, JSON and CSV encodings of fraction sequences and tabular results."""

import csv
import io
import json
from collections.abc import Iterable, Sequence

from fordseq.constants import SEQUENCE_CSV_COLUMNS
from fordseq.errors import DomainError
from fordseq.geometry import ReducedFraction


def to_text(fractions: Iterable[ReducedFraction]) -> str:
    """Comma-separated listing, e.g. "0/1, 1/3, 1/2, 2/3, 1/1"."""
    return ", ".join(str(f) for f in fractions)


def to_json(fractions: Iterable[ReducedFraction]) -> str:
    return json.dumps([{"p": f.p, "q": f.q} for f in fractions], separators=(",", ":"))


def from_json(payload: str | bytes) -> list[ReducedFraction]:
    """Parse a JSON array of {"p": int, "q": int} objects.

    Raises:
        DomainError: If the payload is not such an array or a pair is not a reduced fraction in [0, 1]
    """
    try:
        items = json.loads(payload)
    except json.JSONDecodeError as e:
        raise DomainError(f"Invalid JSON: {e}")
    if not isinstance(items, list):
        raise DomainError("Expected a JSON array of fractions")

    fractions = []
    for index, item in enumerate(items):
        if not isinstance(item, dict) or not isinstance(item.get("p"), int) or not isinstance(item.get("q"), int):
            raise DomainError(f"Entry {index} is not of the form {{\"p\": int, \"q\": int}}")
        fractions.append(ReducedFraction(item["p"], item["q"]))
    return fractions


def rows_to_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    """Comma-delimited CSV with a header row and LF line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def to_csv(fractions: Iterable[ReducedFraction]) -> str:
    """Columns p, q, value; value is a 12-place decimal for reading only."""
    return rows_to_csv(SEQUENCE_CSV_COLUMNS, ((f.p, f.q, f"{f.p / f.q:.12f}") for f in fractions))


def from_csv(payload: str) -> list[ReducedFraction]:
    reader = csv.DictReader(io.StringIO(payload))
    return [ReducedFraction(int(row["p"]), int(row["q"])) for row in reader]


def encode_sequence(fractions: Sequence[ReducedFraction], output_format: str) -> str:
    match output_format:
        case "text":
            return to_text(fractions) + "\n"
        case "json":
            return to_json(fractions) + "\n"
        case "csv":
            return to_csv(fractions)
    raise DomainError(f"Sequences cannot be written as {output_format!r}")
