"""
Text emitters for tally rows: CSV for machines, markdown laid out like the
classical table of generic and other compressed classes.
"""

import csv
import io
from typing import Iterable, List, Mapping, Optional, Tuple

from algebra.koszul import TorClass
from experiment.runner import TallyRow

CSV_COLUMNS = (
    "s1",
    "s",
    "h",
    "t",
    "modal_class",
    "modal_m",
    "other_observed",
    "predictor_class",
    "predictor_m",
    "agree",
)

FORMATS = ("csv", "markdown")


def format_h(h: Iterable[int]) -> str:
    """Render an h-vector as (1,3,6,...)."""
    return "(" + ",".join(str(v) for v in h) + ")"


def format_outcomes(outcomes: Iterable[Tuple[TorClass, int]]) -> str:
    """'G(1) m=7; H(0,0) m=9' style listing."""
    return "; ".join(f"{tor_class} m={m}" for tor_class, m in outcomes)


def _metadata_lines(metadata: Optional[Mapping[str, object]], prefix: str) -> List[str]:
    if not metadata:
        return []
    return [f"{prefix}{key}: {value}" for key, value in metadata.items()]


def to_csv(rows: Iterable[TallyRow], metadata: Optional[Mapping[str, object]] = None) -> str:
    """Header-first CSV, one line per row; metadata becomes leading '#' lines."""
    buffer = io.StringIO()
    for line in _metadata_lines(metadata, "# "):
        buffer.write(line + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(
            [
                row.s1,
                row.s,
                format_h(row.h),
                row.t,
                str(row.modal_class) if row.modal else "",
                row.modal_m if row.modal else "",
                format_outcomes(row.other_observed),
                str(row.predicted_class),
                row.predicted_m,
                str(row.agree).lower(),
            ]
        )
    return buffer.getvalue()


def to_markdown(rows: Iterable[TallyRow], metadata: Optional[Mapping[str, object]] = None) -> str:
    """Tally rows as a markdown table, preceded by metadata bullets."""
    lines = _metadata_lines(metadata, "- ")
    if lines:
        lines.append("")
    lines += [
        "| s1 | s | h | t | Generic class | m | Other compressed classes | Predicted | Agree |",
        "|---:|---:|---|---:|---|---:|---|---|:---:|",
    ]
    for row in rows:
        modal_class = str(row.modal_class) if row.modal else "none"
        modal_m = str(row.modal_m) if row.modal else "-"
        others = format_outcomes(row.other_observed) or "-"
        predicted = f"{row.predicted_class} m={row.predicted_m}"
        lines.append(
            f"| {row.s1} | {row.s} | {format_h(row.h)} | {row.t} | {modal_class} | {modal_m} "
            f"| {others} | {predicted} | {'yes' if row.agree else 'no'} |"
        )
    return "\n".join(lines) + "\n"


def format_counts(row: TallyRow) -> str:
    """Per-outcome counts of one row, most frequent first."""
    lines = [f"({row.s1}, {row.s}) over GF({row.p}): {row.successful}/{row.trials} compressed"]
    for (tor_class, m), count in sorted(
        row.counts.items(), key=lambda item: (-item[1], item[0][1], str(item[0][0]))
    ):
        lines.append(f"  {str(tor_class):<12} m={m:<3} {count}")
    if row.non_compressed:
        lines.append(f"  not compressed: {row.non_compressed}")
    if row.failures:
        lines.append(f"  genericity failures: {row.failures}")
    return "\n".join(lines)


def emit(
    rows: Iterable[TallyRow],
    fmt: str = "csv",
    metadata: Optional[Mapping[str, object]] = None,
) -> str:
    """Render tally rows as CSV or markdown."""
    if fmt == "csv":
        return to_csv(rows, metadata)
    if fmt == "markdown":
        return to_markdown(rows, metadata)
    raise ValueError(f"Unknown format {fmt!r}, expected one of {', '.join(FORMATS)}")
