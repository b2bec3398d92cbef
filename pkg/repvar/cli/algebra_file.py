#!/usr/bin/env python3
"""
Algebra file parsing for repvar.

A line-oriented format::

    # Kronecker quiver
    vertices: 2
    arrow a1: 1 -> 2
    arrow a2: 1 -> 2
    loewy_bound: 1

``loewy_bound: L`` means that all paths of length L+1 vanish. Blank lines
and ``#`` comments are ignored.
"""

import logging
import re
from pathlib import Path
from typing import List, Optional, Set, Tuple, Union

from ..core.quiver import Arrow, Quiver, TruncatedAlgebra


logger = logging.getLogger(__name__)

_ARROW = re.compile(r"arrow\s+(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*:\s*(?P<source>\S+)\s*->\s*(?P<target>\S+)\s*$")
_KEY = re.compile(r"(?P<key>vertices|loewy_bound)\s*:\s*(?P<value>\S+)\s*$")


class AlgebraParseError(Exception):
    """Exception raised for malformed algebra files, with a 1-based position."""

    def __init__(self, message: str, line: int, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


def _integer(text: str, line: int, column: int, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise AlgebraParseError(f"{what} must be an integer, got '{text}'", line, column) from None


def parse_algebra(text: str) -> TruncatedAlgebra:
    """
    Parse an algebra description.

    Raises:
        AlgebraParseError: On syntax errors, unknown vertices, duplicate
            arrow names, negative or missing values
    """
    vertices: Optional[int] = None
    loewy_bound: Optional[int] = None
    arrows: List[Arrow] = []
    names: Set[str] = set()
    pending: List[Tuple[Arrow, int, int, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].rstrip()
        stripped = content.lstrip()
        if not stripped:
            continue
        indent = len(content) - len(stripped) + 1

        match = _KEY.match(stripped)
        if match:
            column = indent + match.start("value")
            value = _integer(match.group("value"), lineno, column, match.group("key"))
            if match.group("key") == "vertices":
                if vertices is not None:
                    raise AlgebraParseError("vertices given twice", lineno, indent)
                if value < 0:
                    raise AlgebraParseError(f"Negative vertex count {value}", lineno, column)
                vertices = value
            else:
                if loewy_bound is not None:
                    raise AlgebraParseError("loewy_bound given twice", lineno, indent)
                if value < 0:
                    raise AlgebraParseError(f"Negative Loewy bound {value}", lineno, column)
                loewy_bound = value
            continue

        match = _ARROW.match(stripped)
        if not match:
            raise AlgebraParseError(f"Cannot parse '{stripped}'", lineno, indent)
        name = match.group("name")
        if name in names:
            raise AlgebraParseError(f"Duplicate arrow name '{name}'", lineno, indent + match.start("name"))
        names.add(name)
        source_col = indent + match.start("source")
        target_col = indent + match.start("target")
        source = _integer(match.group("source"), lineno, source_col, "source")
        target = _integer(match.group("target"), lineno, target_col, "target")
        arrow = Arrow(name, source, target)
        arrows.append(arrow)
        pending.append((arrow, lineno, source_col, target_col))

    if vertices is None:
        raise AlgebraParseError("Missing 'vertices:' line", 1)
    if loewy_bound is None:
        raise AlgebraParseError("Missing 'loewy_bound:' line", 1)
    for arrow, lineno, source_col, target_col in pending:
        if not 1 <= arrow.source <= vertices:
            raise AlgebraParseError(f"Unknown vertex {arrow.source} in arrow {arrow.name}", lineno, source_col)
        if not 1 <= arrow.target <= vertices:
            raise AlgebraParseError(f"Unknown vertex {arrow.target} in arrow {arrow.name}", lineno, target_col)

    algebra = TruncatedAlgebra(Quiver(vertices, tuple(arrows)), loewy_bound)
    logger.debug(f"Parsed algebra: {vertices} vertices, {len(arrows)} arrows, L={loewy_bound}")
    return algebra


def load_algebra(path: Union[str, Path]) -> TruncatedAlgebra:
    """Read and parse an algebra file."""
    return parse_algebra(Path(path).read_text(encoding="utf-8"))


def format_algebra(a: TruncatedAlgebra) -> str:
    """Inverse of ``parse_algebra`` (comments are not kept)."""
    lines = [f"vertices: {a.n}"]
    lines.extend(f"arrow {x.name}: {x.source} -> {x.target}" for x in a.quiver.arrows)
    lines.append(f"loewy_bound: {a.loewy_bound}")
    return "\n".join(lines) + "\n"
