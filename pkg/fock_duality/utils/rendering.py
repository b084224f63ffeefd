"""
Text Rendering Utility Module

ASCII diagrams, the frame picture of the o-o pairing, plain-text tables for
pairing tables, decomposition reports and verification runs, and the JSON
serialization shared by the command-line tool.

Diagram conventions: each cell is "[]", spin rows start with a half-width
cell "|", a negative row is prefixed with "-", and the empty diagram is "()".
"""

import json
import logging

from fock_duality.models.diagrams import (
    GLDiagram,
    OAlgebraDiagram,
    OGroupDiagram,
    diagram_values,
)
from fock_duality.utils.errors import InvalidDiagramError
from fock_duality.utils.linalg import format_rational, qq

logger = logging.getLogger(__name__)

CELL = "[]"
HALF_CELL = "|"
W_CELL = "::"
W_HALF_CELL = ".."


def render_rows(values):
    """
    Draw a diagram from row lengths.

    Args:
        values: sequence of rationals (integral or half-odd-integral)

    Returns:
        list: one string per row
    """
    values = [qq(v) for v in values]
    while values and not values[-1]:
        values.pop()
    if not values:
        return ["()"]
    lines = []
    for value in values:
        length = abs(value)
        if length.denominator not in (1, 2):
            raise InvalidDiagramError(f"row length {format_rational(value)} is not a half-integer")
        full = int(length.numerator // length.denominator)
        text = (HALF_CELL if length.denominator == 2 else "") + CELL * full
        lines.append(("-" if value < 0 else "") + text)
    return lines


def render_diagram(diagram):
    if isinstance(diagram, (GLDiagram, OGroupDiagram, OAlgebraDiagram)):
        return render_rows(diagram_values(diagram))
    return render_rows(diagram)


def format_values(values, paired=False):
    """"(4,3,1)" style tuple; a paired last row is written "+-x"."""
    parts = [str(format_rational(v)) for v in values]
    if paired and parts:
        parts[-1] = "+-" + parts[-1]
    return "(" + ",".join(parts) + ")"


def side_by_side(left, right, gap=4):
    width = max((len(line) for line in left), default=0)
    height = max(len(left), len(right))
    left = left + [""] * (height - len(left))
    right = right + [""] * (height - len(right))
    return [(a.ljust(width + gap) + b).rstrip() for a, b in zip(left, right)]


def render_frame(d, k, diagram):
    """
    Picture of the floor(d/2) x k frame: lambda fills it from the top-left
    ("[]"), the rotated w diagram fills the rest from the bottom-right
    ("::"). For odd d a half-height bottom row of w cells ("..") is added.

    Raises:
        InvalidDiagramError: If lambda does not fit in the frame
    """
    if isinstance(diagram, (OGroupDiagram, GLDiagram)):
        shape = diagram if isinstance(diagram, GLDiagram) else diagram.diagram
    else:
        shape = GLDiagram(tuple(diagram))
    depth = d // 2
    if shape.depth > depth or shape.width > k:
        raise InvalidDiagramError(f"{shape} does not fit in a {depth} x {k} frame")
    border = "+" + "-" * (2 * k) + "+"
    lines = [border]
    for p in range(1, depth + 1):
        filled = shape.row(p)
        lines.append("|" + CELL * filled + W_CELL * (k - filled) + "|")
    if d % 2:
        lines.append("|" + W_HALF_CELL * k + "|")
    lines.append(border)
    return lines


def render_pairing_table(table, diagrams=True):
    """Plain-text listing of a PairingTable, optionally with diagrams."""
    lines = [f"{table.duality_type} pairing, d={table.d}, k={table.k}: {len(table)} entries", ""]
    lam_len, w_len = table.cartan_lengths
    rows = []
    for entry in table:
        lam = format_values(diagram_values(entry.lam, None if isinstance(entry.lam, OAlgebraDiagram)
                                           else lam_len), entry.lam_paired)
        w = format_values(diagram_values(entry.w, None if isinstance(entry.w, OAlgebraDiagram)
                                         else w_len), entry.w_paired)
        rows.append((lam, w, entry))
    width = max([len("lambda")] + [len(lam) for lam, _, _ in rows])
    lines.append("lambda".ljust(width + 4) + "w")
    for lam, w, entry in rows:
        lines.append(lam.ljust(width + 4) + w)
        if diagrams:
            pictures = side_by_side(render_diagram(entry.lam), render_diagram(entry.w))
            lines.extend("    " + line for line in pictures)
            lines.append("")
    return "\n".join(lines).rstrip() + "\n"


def _cell(value):
    return "-" if value is None else str(value)


def render_report(report):
    """Plain-text summary of a DecompositionReport."""
    lines = [f"{report.pair_type} decomposition, d={report.d}, k={report.k}: "
             f"{len(report.records)} highest-weight records", ""]
    header = ("lambda", "w", "dim", "n", "r", "sigma")
    body = []
    for record in report.records:
        r = record.r_eigen if record.r_eigen is not None else (
            f"<->{record.r_partner}" if record.r_partner is not None else None)
        s = record.sigma_eigen if record.sigma_eigen is not None else (
            f"<->{record.sigma_partner}" if record.sigma_partner is not None else None)
        body.append((format_values(record.weight[0]), format_values(record.weight[1]),
                     str(record.module_dimension), _cell(record.particle_number),
                     _cell(r), _cell(s)))
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    for row in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    lines.append("")
    lines.append(f"multiplicity free: {'yes' if report.multiplicity_free else 'NO'}")
    lines.append(f"dimension sum:     {'ok' if report.dimension_sum_ok else 'MISMATCH'}")
    lines.append(f"modules disjoint:  {'yes' if report.modules_disjoint else 'NO'}")
    if report.prediction_diff:
        lines.append("prediction diff:")
        for item in report.prediction_diff:
            lines.append(f"  {item['kind']}: lambda={format_values(item['lambda'])} "
                         f"w={format_values(item['w'])}")
    else:
        lines.append("prediction:        matches")
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def render_suites(results):
    """Plain-text pass/fail listing of verification suites."""
    lines = []
    for suite in results:
        lines.append(f"[{'PASS' if suite.ok else 'FAIL'}] {suite.name}: "
                     f"{suite.passed}/{len(suite.checks)} checks")
        for check in suite.checks:
            if not check.ok:
                lines.append(f"    failed: {check.name}" + (f" ({check.detail})" if check.detail else ""))
    return "\n".join(lines) + "\n"


def dump_json(data):
    """Deterministic JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
