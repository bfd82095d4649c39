"""CSV and JSON output of sweep records."""
import csv
import io
import json
import sys

from models import OutputFormat

COLUMNS = (
    "gamma",
    "kind",
    "measure",
    "value_numeric",
    "value_closed",
    "abs_diff",
    "truncation",
    "tail_bound",
)


def format_number(value):
    """12 significant digits; None becomes an empty field."""
    if value is None:
        return ""
    return format(value, ".12g")


def record_row(record):
    return {
        "gamma": format_number(record.gamma),
        "kind": record.kind.value,
        "measure": record.measure.value,
        "value_numeric": format_number(record.value_numeric),
        "value_closed": format_number(record.value_closed),
        "abs_diff": format_number(record.abs_diff),
        "truncation": str(record.truncation),
        "tail_bound": format_number(record.tail_bound),
    }


def to_csv(records):
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for record in records:
        writer.writerow(record_row(record))
    return buffer.getvalue()


def to_json(records):
    """JSON array with the CSV field names; numbers keep their 12-digit rendering."""
    rows = []
    for record in records:
        row = {}
        for column, text in record_row(record).items():
            if column in ("kind", "measure"):
                row[column] = text
            elif column == "truncation":
                row[column] = record.truncation
            else:
                row[column] = float(text) if text else None
        rows.append(row)
    return json.dumps(rows, indent=2) + "\n"


def render(records, output_format):
    if OutputFormat(output_format) is OutputFormat.JSON:
        return to_json(records)
    return to_csv(records)


def emit(records, output_format, path=None):
    """Write records to ``path``, or to stdout when ``path`` is None or ``-``.

    Args:
        records: MeasureRecords in output order
        output_format: OutputFormat or its string value
        path: Destination file

    Returns:
        Number of records written
    """
    text = render(records, output_format)
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    return len(records)
