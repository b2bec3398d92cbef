#!/usr/bin/env python3
"""
Quiver module for repvar.

Quivers, paths, adjacency matrices, the Euler form, the separated quiver
and the truncated path algebra descriptor. Vertices are numbered 1..n;
dimension vectors are tuples indexed by vertex - 1. Products of dimension
vectors with matrices use the row-vector convention d·A.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np


logger = logging.getLogger(__name__)


DimVector = Tuple[int, ...]


class QuiverError(Exception):
    """Exception raised for malformed quivers or mismatched dimension data."""
    pass


@dataclass(frozen=True)
class Arrow:
    """A named arrow ``name: source -> target``."""
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    """
    Finite directed multigraph on vertices 1..n.

    Arrow names are unique; sources and targets must be existing vertices.
    """
    num_vertices: int
    arrows: Tuple[Arrow, ...] = ()
    _by_name: Dict[str, Arrow] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.num_vertices < 0:
            raise QuiverError(f"Vertex count must be non-negative, got {self.num_vertices}")
        object.__setattr__(self, "arrows", tuple(self.arrows))
        by_name = {}
        for arrow in self.arrows:
            if arrow.name in by_name:
                raise QuiverError(f"Duplicate arrow name: {arrow.name}")
            for v in (arrow.source, arrow.target):
                if not 1 <= v <= self.num_vertices:
                    raise QuiverError(
                        f"Arrow {arrow.name} references vertex {v} outside 1..{self.num_vertices}"
                    )
            by_name[arrow.name] = arrow
        object.__setattr__(self, "_by_name", by_name)

    @classmethod
    def from_arrows(cls, num_vertices: int, arrows: Iterable[Tuple[str, int, int]]) -> "Quiver":
        return cls(num_vertices, tuple(Arrow(n, s, t) for n, s, t in arrows))

    @property
    def vertices(self) -> List[int]:
        return list(range(1, self.num_vertices + 1))

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise QuiverError(f"Unknown arrow: {name}") from None

    def arrows_from(self, vertex: int) -> List[Arrow]:
        """Arrows leaving ``vertex``, sorted by name."""
        return sorted((a for a in self.arrows if a.source == vertex), key=lambda a: a.name)

    def arrows_to(self, vertex: int) -> List[Arrow]:
        return sorted((a for a in self.arrows if a.target == vertex), key=lambda a: a.name)

    def is_acyclic(self) -> bool:
        return self.longest_path_length() is not None

    def longest_path_length(self):
        """Length of the longest path, or None if the quiver has an oriented cycle."""
        indegree = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indegree[a.target] += 1
        longest = {v: 0 for v in self.vertices}
        ready = [v for v in self.vertices if indegree[v] == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for a in self.arrows:
                if a.source == v:
                    longest[a.target] = max(longest[a.target], longest[v] + 1)
                    indegree[a.target] -= 1
                    if indegree[a.target] == 0:
                        ready.append(a.target)
        if seen < self.num_vertices:
            return None
        return max(longest.values(), default=0)

    def is_local(self) -> bool:
        """One vertex, every arrow a loop."""
        return self.num_vertices == 1

    def check_dim(self, d: Sequence[int]) -> DimVector:
        """Validate and normalize a dimension vector."""
        d = tuple(int(x) for x in d)
        if len(d) != self.num_vertices:
            raise QuiverError(
                f"Dimension vector {d} has length {len(d)}, expected {self.num_vertices}"
            )
        if any(x < 0 for x in d):
            raise QuiverError(f"Dimension vector {d} has negative entries")
        return d


@dataclass(frozen=True)
class TruncatedAlgebra:
    """KQ modulo all paths of length L+1 (``loewy_bound`` = L)."""
    quiver: Quiver
    loewy_bound: int

    def __post_init__(self):
        if self.loewy_bound < 0:
            raise QuiverError(f"Loewy bound must be non-negative, got {self.loewy_bound}")

    @property
    def n(self) -> int:
        return self.quiver.num_vertices

    def is_hereditary(self) -> bool:
        """True when the truncation kills no path (acyclic, L >= longest path)."""
        longest = self.quiver.longest_path_length()
        return longest is not None and self.loewy_bound >= longest

    def opposite(self) -> "TruncatedAlgebra":
        return TruncatedAlgebra(opposite_quiver(self.quiver), self.loewy_bound)


@dataclass(frozen=True, order=True)
class Path:
    """
    A path of arrows, stored in application order.

    ``arrows[0]`` is applied first; a path ``(b1, a1)`` is written
    ``a1*b1`` in composition notation ("a1 after b1").
    """
    start: int
    arrows: Tuple[str, ...] = ()
    end: int = 0

    def __post_init__(self):
        if self.end == 0:
            object.__setattr__(self, "end", self.start)

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def sort_key(self):
        return (len(self.arrows), self.arrows)

    def extend(self, arrow: Arrow) -> "Path":
        """The path ``arrow * self``."""
        if arrow.source != self.end:
            raise QuiverError(f"Arrow {arrow.name} does not start at vertex {self.end}")
        return Path(self.start, self.arrows + (arrow.name,), arrow.target)

    def is_prefix_of(self, other: "Path") -> bool:
        return self.start == other.start and other.arrows[:len(self.arrows)] == self.arrows

    def render(self, suffix: str = "") -> str:
        """Composition notation, last-applied arrow first, e.g. ``a1*b1*z1``."""
        parts = list(reversed(self.arrows))
        if suffix:
            parts.append(suffix)
        elif not parts:
            return f"e{self.start}"
        return "*".join(parts)


def adjacency_matrix(q: Quiver) -> np.ndarray:
    """A[i][j] = number of arrows from vertex i+1 to vertex j+1."""
    a = np.zeros((q.num_vertices, q.num_vertices), dtype=np.int64)
    for arrow in q.arrows:
        a[arrow.source - 1, arrow.target - 1] += 1
    return a


def euler_form(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """<d, e> = sum_i d_i e_i - sum over arrows i->j of d_i e_j."""
    d = np.array(q.check_dim(d), dtype=np.int64)
    e = np.array(q.check_dim(e), dtype=np.int64)
    return int(d @ e - d @ adjacency_matrix(q) @ e)


def separated_quiver(q: Quiver) -> Quiver:
    """
    The separated quiver: vertices 1..n and hatted copies n+1..2n.

    Each arrow i -> j becomes i -> n+j under the same name.
    """
    n = q.num_vertices
    return Quiver(2 * n, tuple(Arrow(a.name, a.source, n + a.target) for a in q.arrows))


def opposite_quiver(q: Quiver) -> Quiver:
    return Quiver(q.num_vertices, tuple(Arrow(a.name, a.target, a.source) for a in q.arrows))


def hat_dim(t: Sequence[int], d: Sequence[int]) -> DimVector:
    """(t, d - t) as a dimension vector of the separated quiver."""
    t, d = tuple(t), tuple(d)
    if len(t) != len(d):
        raise QuiverError(f"Length mismatch between {t} and {d}")
    if any(ti > di or ti < 0 for ti, di in zip(t, d)):
        raise QuiverError(f"Top {t} is not bounded by {d}")
    return t + tuple(di - ti for ti, di in zip(t, d))


def unhat_dim(dhat: Sequence[int]) -> DimVector:
    dhat = tuple(dhat)
    if len(dhat) % 2:
        raise QuiverError(f"Separated dimension vector {dhat} has odd length")
    n = len(dhat) // 2
    return tuple(dhat[i] + dhat[n + i] for i in range(n))


def enumerate_paths(a: TruncatedAlgebra, start: int, max_len: int) -> List[Path]:
    """All paths from ``start`` of length 0..max_len, ordered by (length, arrow names)."""
    if max_len > a.loewy_bound:
        raise QuiverError(f"max_len {max_len} exceeds the Loewy bound {a.loewy_bound}")
    if not 1 <= start <= a.n:
        raise QuiverError(f"Unknown vertex {start}")
    frontier = [Path(start)]
    paths = list(frontier)
    for _ in range(max_len):
        frontier = sorted(
            (p.extend(arrow) for p in frontier for arrow in a.quiver.arrows_from(p.end)),
            key=lambda p: p.sort_key,
        )
        paths.extend(frontier)
    return paths
