"""Reading and writing the plain-text polytope format.

::

    # optional comment lines
    dim 2
    vertices 3
    0 0
    2 0
    0 2
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import TextIO

from .errors import DegenerateInput, ParseError, ValidationError
from .polytope import LatticePolytope


def _lines(stream: TextIO):
    for number, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line


def _header(lines, keyword: str) -> int:
    try:
        number, line = next(lines)
    except StopIteration:
        raise ParseError(f"missing '{keyword}' header") from None
    parts = line.split()
    if len(parts) != 2 or parts[0] != keyword:
        raise ParseError(f"expected '{keyword} <n>', got {line!r}", number)
    try:
        value = int(parts[1])
    except ValueError:
        raise ParseError(f"'{keyword}' value must be an integer", number) from None
    if value < 1:
        raise ParseError(f"'{keyword}' must be positive", number)
    return value


def read_polytope(stream: TextIO) -> LatticePolytope:
    lines = _lines(stream)
    dim = _header(lines, "dim")
    count = _header(lines, "vertices")
    vertices = []
    last = 0
    for _ in range(count):
        try:
            number, line = next(lines)
        except StopIteration:
            raise ParseError(f"expected {count} vertices, found {len(vertices)}", last or None) from None
        last = number
        try:
            coords = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise ParseError(f"non-integer coordinate in {line!r}", number) from None
        if len(coords) != dim:
            raise ParseError(f"expected {dim} coordinates, got {len(coords)}", number)
        vertices.append(coords)
    extra = next(lines, None)
    if extra is not None:
        raise ParseError("unexpected trailing content", extra[0])
    if len(set(vertices)) != len(vertices):
        raise ValidationError("vertices are not pairwise distinct")
    try:
        return LatticePolytope.from_vertices(vertices, dim)
    except DegenerateInput as exc:
        raise ValidationError(f"not full-dimensional: {exc}") from exc


def parse(source: str | Path | TextIO) -> LatticePolytope:
    """Parse from a path, an open text stream, or a string holding the file body."""
    if isinstance(source, Path):
        with source.open("r", encoding="ascii") as fh:
            return read_polytope(fh)
    if isinstance(source, str):
        if "\n" in source:
            return read_polytope(io.StringIO(source))
        with open(source, "r", encoding="ascii") as fh:
            return read_polytope(fh)
    return read_polytope(source)


def emit(p: LatticePolytope, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"dim {p.dim}")
    out.append(f"vertices {len(p.vertices)}")
    out.extend(" ".join(str(c) for c in v) for v in p.vertices)
    return "\n".join(out) + "\n"


def write(p: LatticePolytope, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(emit(p, comment), encoding="ascii", newline="\n")
