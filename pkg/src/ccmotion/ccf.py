"""CCF: a plain-text format for configurations.

Line 1 is ``ccf 1``, line 2 is ``n=<int> r=<int>``, followed by n rows of n
whitespace-separated color ids.  Lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np

from .core import Configuration, validate_configuration
from .errors import NotSquare, ValidationError

HEADER = "ccf 1"


def dumps(cfg: Configuration) -> str:
    rows = "\n".join(" ".join(str(int(x)) for x in row) for row in cfg.color)
    return f"{HEADER}\nn={cfg.n} r={cfg.r}\n{rows}\n"


def loads(text: str) -> Configuration:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != HEADER:
        raise ValidationError(f"expected header '{HEADER}'")
    if len(lines) < 2:
        raise ValidationError("missing size line")
    try:
        fields = dict(part.split("=", 1) for part in lines[1].split())
        n, r = int(fields["n"]), int(fields["r"])
    except (ValueError, KeyError) as exc:
        raise ValidationError(f"bad size line {lines[1]!r}") from exc
    rows = lines[2:]
    if len(rows) != n:
        raise NotSquare(f"declared n={n} but found {len(rows)} rows")
    cells = [row.split() for row in rows]
    if any(len(c) != n for c in cells):
        raise NotSquare(f"rows do not all have {n} entries")
    try:
        mat = np.array([[int(x) for x in c] for c in cells], dtype=np.int64).reshape(n, n)
    except ValueError as exc:
        raise ValidationError("non-integer color id") from exc
    cfg = validate_configuration(mat)
    if cfg.r != r:
        raise ValidationError(f"declared r={r} but {cfg.r} colors are used")
    return cfg


def read(path) -> Configuration:
    return loads(Path(path).read_text())


def write(cfg: Configuration, path) -> None:
    Path(path).write_text(dumps(cfg))


def digest(cfg: Configuration) -> str:
    return hashlib.sha256(dumps(cfg).encode()).hexdigest()
