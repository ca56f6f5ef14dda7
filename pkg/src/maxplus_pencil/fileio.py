"""Matrix files: a plain "m n" header followed by rows, or the same tokens as JSON.

Text example::

    # comment lines are ignored
    2 3
    1   1.5  -inf
    2/3 0    4

JSON accepts either ``{"shape": [m, n], "entries": [[...], ...]}`` or a bare
list of rows.  Tokens are exact: integers, ``p/q``, decimals and ``-inf``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import MaxPlusMatrix, format_ext, to_ext


class MatrixFormatError(ValueError):
    pass


def _token(tok) -> object:
    try:
        v = to_ext(tok if isinstance(tok, str) else str(tok))
    except (ValueError, ZeroDivisionError) as exc:
        raise MatrixFormatError(f"bad entry {tok!r}") from exc
    if v == float("inf"):
        raise MatrixFormatError("+inf is not a valid matrix entry")
    return v


def parse_matrix(text: str) -> MaxPlusMatrix:
    stripped = text.lstrip()
    if stripped.startswith(("{", "[")):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"invalid JSON: {exc}") from exc
        rows = data["entries"] if isinstance(data, dict) else data
        shape = data.get("shape") if isinstance(data, dict) else None
    else:
        lines = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines or len(lines[0]) != 2:
            raise MatrixFormatError("first line must be the shape 'm n'")
        try:
            shape = [int(lines[0][0]), int(lines[0][1])]
        except ValueError:
            raise MatrixFormatError("shape must be two integers") from None
        rows = lines[1:]
    if not rows:
        raise MatrixFormatError("matrix has no rows")
    parsed = tuple(tuple(_token(t) for t in row) for row in rows)
    if shape is not None:
        m, n = shape
        if len(parsed) != m or any(len(r) != n for r in parsed):
            raise MatrixFormatError(f"declared shape {m}x{n} does not match the rows")
    if any(len(r) != len(parsed[0]) for r in parsed):
        raise MatrixFormatError("ragged rows")
    return MaxPlusMatrix(parsed)


def read_matrix(path) -> MaxPlusMatrix:
    return parse_matrix(Path(path).read_text())


def format_matrix(M: MaxPlusMatrix) -> str:
    cells = [[format_ext(v) for v in row] for row in M.entries]
    width = max(len(c) for row in cells for c in row)
    body = "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)
    return f"{M.rows} {M.cols}\n{body}\n"


def format_matrix_json(M: MaxPlusMatrix) -> str:
    return json.dumps({"shape": [M.rows, M.cols], "entries": [[format_ext(v) for v in r] for r in M.entries]})


def write_matrix(path, M: MaxPlusMatrix) -> None:
    text = format_matrix_json(M) if str(path).endswith(".json") else format_matrix(M)
    Path(path).write_text(text)
