"""Dense Matrix Market files ("matrix array real general").

Values are written column by column with 17 significant digits, which
round-trips every double exactly.  Parse failures report the 1-based line
and column of the offending token.
"""
from __future__ import annotations

import math
import re

import numpy as np

from .errors import FileError, ParseError

HEADER = "%%MatrixMarket matrix array real general"
_TOKEN = re.compile(r"\S+")


def write_matrix(path, M, comment=None):
    """Write `M` to `path`; `comment` becomes a ``%`` line after the header."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {M.shape}")
    lines = [HEADER]
    if comment:
        lines.extend("% " + c for c in str(comment).splitlines())
    lines.append(f"{M.shape[0]} {M.shape[1]}")
    lines.extend("%.17g" % v for v in M.ravel(order="F"))
    try:
        with open(path, "w", encoding="ascii") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise FileError(f"cannot write {path}: {exc.strerror or exc}") from None


def _tokens(lines, first):
    for num, line in enumerate(lines, start=first):
        for m in _TOKEN.finditer(line):
            yield num, m.start() + 1, m.group()


def parse_matrix(text) -> np.ndarray:
    """Parse the contents of a dense Matrix Market file."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty file", line=1, column=1)
    head = lines[0].split()
    if not head or head[0].lower() != "%%matrixmarket":
        raise ParseError("missing %%MatrixMarket banner", line=1, column=1)
    expected = ["matrix", "array", "real", "general"]
    got = [h.lower() for h in head[1:]]
    for pos, want in enumerate(expected):
        if pos >= len(got) or got[pos] != want:
            col = lines[0].find(head[pos + 1]) + 1 if pos + 1 < len(head) else len(lines[0]) + 1
            raise ParseError(f"unsupported header: expected {' '.join(expected)}", line=1, column=col)

    # size line: first non-comment, non-blank line after the banner
    idx = 1
    while idx < len(lines) and (not lines[idx].strip() or lines[idx].lstrip().startswith("%")):
        idx += 1
    if idx == len(lines):
        raise ParseError("missing size line", line=idx + 1, column=1)
    size = list(_tokens([lines[idx]], idx + 1))
    if len(size) != 2:
        raise ParseError("size line must hold two integers", line=idx + 1, column=1)
    dims = []
    for num, col, tok in size:
        if not tok.isdigit():
            raise ParseError(f"bad dimension {tok!r}", line=num, column=col)
        dims.append(int(tok))
    rows, cols = dims

    body = [l if not l.lstrip().startswith("%") else "" for l in lines[idx + 1:]]
    values = []
    last = (idx + 1, len(lines[idx]) + 1)
    for num, col, tok in _tokens(body, idx + 2):
        if len(values) == rows * cols:
            raise ParseError("more values than the size line announces", line=num, column=col)
        try:
            v = float(tok)
        except ValueError:
            raise ParseError(f"not a number: {tok!r}", line=num, column=col) from None
        if not math.isfinite(v):
            raise ParseError(f"non-finite value {tok!r}", line=num, column=col)
        values.append(v)
        last = (num, col + len(tok))
    if len(values) != rows * cols:
        raise ParseError(f"expected {rows * cols} values, found {len(values)}",
                         line=last[0], column=last[1])
    return np.array(values, dtype=float).reshape((rows, cols), order="F").copy(order="C")


def read_matrix(path) -> np.ndarray:
    """Read a dense real matrix from a Matrix Market file."""
    try:
        with open(path, encoding="ascii", errors="replace") as fh:
            text = fh.read()
    except OSError as exc:
        raise FileError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_matrix(text)
