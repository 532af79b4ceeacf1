"""Plain-text CSV matrices: one row per line, comma separated, ``#`` comments, no header."""

import numpy as np

from .exceptions import CsvParseError


def format_float(x):
    # 17 significant digits round-trip every binary64 value
    return f"{float(x):.17g}"


def parse_matrix(text, path="<string>"):
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            row = [float(tok) for tok in line.split(",")]
        except ValueError:
            raise CsvParseError(f"cannot parse {line!r} as comma-separated numbers", path, lineno) from None
        if not all(np.isfinite(row)):
            raise CsvParseError("non-finite value", path, lineno)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise CsvParseError(f"expected {width} columns, got {len(row)}", path, lineno)
        rows.append(row)
    if not rows:
        raise CsvParseError("no data rows", path)
    return np.array(rows, dtype=np.float64)


def read_matrix(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CsvParseError(str(exc.strerror or exc), path) from None
    return parse_matrix(text, str(path))


def format_matrix(M):
    M = np.atleast_2d(np.asarray(M, dtype=np.float64))
    return "".join(",".join(format_float(x) for x in row) + "\n" for row in M)


def format_column(v):
    return "".join(format_float(x) + "\n" for x in np.ravel(v))


def write_text(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
