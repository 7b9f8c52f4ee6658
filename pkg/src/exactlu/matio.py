"""Text formats: matrix files, factor block streams, permutation lines.

A matrix is a header line ``<rows> <cols> <fieldToken>`` followed by one
line of scalar tokens per row.  Blank lines and ``#`` comments are
ignored everywhere.  Factor streams hold several blocks separated by
``---`` lines; a block is either a matrix or a one-line permutation
``[p1 p2 ... pn]``.  Pivot trace lines (``k=... pivot=...``) are ignored
by the parser so traced output still round-trips.
"""

from __future__ import annotations

import re

from .decompositions import Permutation
from .errors import ParseError
from .fields import field_from_token
from .matrix import Matrix

_TOKEN = re.compile(r"\S+")
_TRACE_LINE = re.compile(r"k=\d+\s+pivot=")
_PERMUTATION_LINE = re.compile(r"\[\s*\d+(?:\s+\d+)*\s*\]\Z")
_SEPARATOR = "---"


def _content_lines(text: str, skip_trace: bool = False):
    lines = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if skip_trace and _TRACE_LINE.match(stripped):
            continue
        lines.append((number, line))
    return lines


def _tokens_with_columns(line: str):
    return [(match.start() + 1, match.group()) for match in _TOKEN.finditer(line)]


def _parse_positive_int(token: str, what: str, line: int, column: int) -> int:
    if not token.isdigit() or int(token) < 1:
        raise ParseError(f"{what} must be a positive integer, got {token!r}", line, column)
    return int(token)


def _parse_matrix_block(lines, start: int):
    """Parse one matrix starting at lines[start]; return (matrix, next index)."""
    header_no, header = lines[start]
    tokens = _tokens_with_columns(header)
    if len(tokens) != 3:
        raise ParseError(
            f"matrix header must be '<rows> <cols> <field>', got {header.strip()!r}",
            header_no,
            tokens[0][0] if tokens else 1,
        )
    (c1, t1), (c2, t2), (c3, t3) = tokens
    rows = _parse_positive_int(t1, "row count", header_no, c1)
    cols = _parse_positive_int(t2, "column count", header_no, c2)
    try:
        field = field_from_token(t3)
    except ParseError as exc:
        raise ParseError(str(exc), header_no, c3) from exc

    entries = []
    index = start + 1
    for _ in range(rows):
        if index >= len(lines):
            raise ParseError(
                f"expected {rows} matrix rows, found only {len(entries)}", header_no
            )
        line_no, line = lines[index]
        row_tokens = _tokens_with_columns(line)
        if len(row_tokens) != cols:
            raise ParseError(
                f"expected {cols} entries in this row, got {len(row_tokens)}",
                line_no,
                row_tokens[cols][0] if len(row_tokens) > cols else len(line.rstrip()) + 1,
            )
        row = []
        for column, token in row_tokens:
            try:
                row.append(field.parse(token))
            except ParseError as exc:
                raise ParseError(str(exc), line_no, column) from exc
        entries.append(row)
        index += 1
    return Matrix._from_raw(field, entries), index


def parse_matrix_text(text: str) -> Matrix:
    """Parse a single matrix from file text."""
    lines = _content_lines(text)
    if not lines:
        raise ParseError("no matrix found in input")
    matrix, index = _parse_matrix_block(lines, 0)
    if index < len(lines):
        raise ParseError("unexpected content after the matrix", lines[index][0])
    return matrix


def format_matrix(m: Matrix) -> str:
    body = "\n".join(" ".join(row) for row in m.to_token_rows())
    return f"{m.rows} {m.cols} {m.field.token}\n{body}"


def format_permutation(p: Permutation) -> str:
    return "[" + " ".join(str(v) for v in p.mapping) + "]"


def _parse_permutation_line(line_no: int, line: str) -> Permutation:
    try:
        return Permutation(int(v) for v in line.strip()[1:-1].split())
    except ValueError as exc:
        raise ParseError(str(exc), line_no) from exc


def parse_factor_blocks(text: str):
    """Parse a ``---``-separated stream of matrix and permutation blocks."""
    lines = _content_lines(text, skip_trace=True)
    blocks = []
    index = 0
    while index < len(lines):
        line_no, line = lines[index]
        stripped = line.strip()
        if stripped == _SEPARATOR:
            index += 1
            continue
        if _PERMUTATION_LINE.fullmatch(stripped):
            blocks.append(_parse_permutation_line(line_no, stripped))
            index += 1
            continue
        matrix, index = _parse_matrix_block(lines, index)
        blocks.append(matrix)
    if not blocks:
        raise ParseError("no factor blocks found in input")
    return blocks


def format_factor_blocks(blocks) -> str:
    parts = []
    for block in blocks:
        if isinstance(block, Permutation):
            parts.append(format_permutation(block))
        else:
            parts.append(format_matrix(block))
    return f"\n{_SEPARATOR}\n".join(parts)
